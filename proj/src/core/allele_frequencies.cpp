#include "kinward/core/allele_frequencies.h"

#include <algorithm>

namespace kinward
{

double frequency_floor(int n)
{
    return 1.0 / (2.0 * n + 2.0);
}

double clamp_frequency(double p, int n)
{
    const double lo = frequency_floor(n);
    return std::clamp(p, lo, 1.0 - lo);
}

AlleleFrequencies estimate_allele_frequencies(const GenotypeMatrix& g)
{
    const int n = g.num_individuals();
    AlleleFrequencies freq;
    freq.p.resize(static_cast<std::size_t>(g.num_snps()));
    for (int l = 0; l < g.num_snps(); ++l)
    {
        const auto c = g.snp_counts(l);
        const auto m = g.snp_missing(l);
        long sum = 0;
        long observed = 0;
        for (int i = 0; i < n; ++i)
        {
            if (!m[i])
            {
                sum += c[i];
                ++observed;
            }
        }
        const double raw = observed > 0 ? static_cast<double>(sum) / (2.0 * static_cast<double>(observed)) : 0.5;
        freq.p[static_cast<std::size_t>(l)] = clamp_frequency(raw, n);
    }
    return freq;
}

}  // namespace kinward

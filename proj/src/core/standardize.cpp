#include "kinward/core/standardize.h"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinward/core/error.h"

namespace kinward
{

Eigen::MatrixXd standardize_genotypes(const GenotypeMatrix& g, const AlleleFrequencies& p)
{
    std::vector<int> all(static_cast<std::size_t>(g.num_snps()));
    std::iota(all.begin(), all.end(), 0);
    return standardize_genotypes(g, p, all);
}

Eigen::MatrixXd standardize_genotypes(const GenotypeMatrix& g,
                                      const AlleleFrequencies& p,
                                      std::span<const int> snps)
{
    if (p.size() != g.num_snps())
    {
        throw std::invalid_argument("allele frequency vector does not match SNP count");
    }
    const int n = g.num_individuals();
    Eigen::MatrixXd z(n, static_cast<Eigen::Index>(snps.size()));
    for (std::size_t k = 0; k < snps.size(); ++k)
    {
        const int l = snps[k];
        const double pl = p[l];
        if (!(pl > 0.0 && pl < 1.0))
        {
            throw DegenerateSnpError("SNP " + std::to_string(l) + " has allele frequency " + std::to_string(pl) +
                                     " on the boundary");
        }
        const double mean = 2.0 * pl;
        const double scale = 1.0 / std::sqrt(4.0 * pl * (1.0 - pl));
        const auto c = g.snp_counts(l);
        const auto m = g.snp_missing(l);
        auto col = z.col(static_cast<Eigen::Index>(k));
        for (int i = 0; i < n; ++i)
        {
            col[i] = m[i] ? 0.0 : (c[i] - mean) * scale;
        }
    }
    return z;
}

}  // namespace kinward

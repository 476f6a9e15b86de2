#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kinward/core/error.h"
#include "kinward/core/linalg.h"
#include "kinward/core/standardize.h"
#include "kinward/kinship/kinship.h"

namespace kinward::kinship
{

namespace
{

// SNPs per accumulation block; blocks are reduced in a fixed order.
constexpr std::size_t kBlock = 512;

std::vector<int> usable_snps(const GenotypeMatrix& g)
{
    auto snps = polymorphic_snps(g);
    if (snps.empty())
    {
        throw NumericalError("no polymorphic SNPs available for kinship estimation");
    }
    return snps;
}

void fill_upper(Eigen::MatrixXd& m)
{
    m.triangularView<Eigen::StrictlyUpper>() = m.transpose();
}

void check_pairs(std::span<const Pair> pairs, int n)
{
    for (const auto& [i, j] : pairs)
    {
        if (i < 0 || j < 0 || i >= n || j >= n)
        {
            throw std::out_of_range("pair index outside the panel");
        }
    }
}

}  // namespace

KinshipMatrix kinship_correlation(const GenotypeMatrix& g, const AlleleFrequencies& p)
{
    const auto snps = usable_snps(g);
    const int n = g.num_individuals();
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t start = 0; start < snps.size(); start += kBlock)
    {
        const auto len = std::min(kBlock, snps.size() - start);
        const Eigen::MatrixXd z = standardize_genotypes(g, p, std::span<const int>(snps).subspan(start, len));
        k.selfadjointView<Eigen::Lower>().rankUpdate(z);
    }
    k /= static_cast<double>(snps.size());
    fill_upper(k);
    return KinshipMatrix(std::move(k));
}

KinshipMatrix kinship_ibs(const GenotypeMatrix& g)
{
    const auto snps = usable_snps(g);
    const int n = g.num_individuals();
    Eigen::MatrixXd shared = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd observed = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t start = 0; start < snps.size(); start += kBlock)
    {
        const auto len = std::min(kBlock, snps.size() - start);
        Eigen::MatrixXd centered(n, static_cast<Eigen::Index>(len));
        Eigen::MatrixXd present(n, static_cast<Eigen::Index>(len));
        for (std::size_t c = 0; c < len; ++c)
        {
            const int l = snps[start + c];
            const auto counts = g.snp_counts(l);
            const auto missing = g.snp_missing(l);
            for (int i = 0; i < n; ++i)
            {
                const auto col = static_cast<Eigen::Index>(c);
                centered(i, col) = missing[i] ? 0.0 : counts[i] - 1.0;
                present(i, col) = missing[i] ? 0.0 : 1.0;
            }
        }
        shared.selfadjointView<Eigen::Lower>().rankUpdate(centered);
        if (g.has_missing())
        {
            observed.selfadjointView<Eigen::Lower>().rankUpdate(present);
        }
    }
    if (!g.has_missing())
    {
        observed.setConstant(static_cast<double>(snps.size()));
    }

    Eigen::MatrixXd k(n, n);
    for (int j = 0; j < n; ++j)
    {
        for (int i = j; i < n; ++i)
        {
            if (observed(i, j) < 0.5)
            {
                throw NumericalError("individuals " + std::to_string(i) + " and " + std::to_string(j) +
                                     " share no observed SNPs");
            }
            k(i, j) = shared(i, j) / (2.0 * observed(i, j)) + 0.5;
        }
    }
    fill_upper(k);
    return KinshipMatrix(std::move(k));
}

std::vector<double> correlation_kinship_pairs(const GenotypeMatrix& g,
                                              const AlleleFrequencies& p,
                                              std::span<const Pair> pairs)
{
    check_pairs(pairs, g.num_individuals());
    const auto snps = usable_snps(g);
    std::vector<double> sums(pairs.size(), 0.0);
    for (int l : snps)
    {
        const double pl = p[l];
        if (!(pl > 0.0 && pl < 1.0))
        {
            throw DegenerateSnpError("SNP " + std::to_string(l) + " has allele frequency on the boundary");
        }
        const double mean = 2.0 * pl;
        const double inv_var = 1.0 / (4.0 * pl * (1.0 - pl));
        const auto counts = g.snp_counts(l);
        const auto missing = g.snp_missing(l);
        for (std::size_t k = 0; k < pairs.size(); ++k)
        {
            const auto [i, j] = pairs[k];
            if (missing[i] || missing[j])
            {
                continue;
            }
            sums[k] += (counts[i] - mean) * (counts[j] - mean) * inv_var;
        }
    }
    for (double& s : sums)
    {
        s /= static_cast<double>(snps.size());
    }
    return sums;
}

std::vector<double> ibs_kinship_pairs(const GenotypeMatrix& g, std::span<const Pair> pairs)
{
    check_pairs(pairs, g.num_individuals());
    const auto snps = usable_snps(g);
    std::vector<double> shared(pairs.size(), 0.0);
    std::vector<long> observed(pairs.size(), 0);
    for (int l : snps)
    {
        const auto counts = g.snp_counts(l);
        const auto missing = g.snp_missing(l);
        for (std::size_t k = 0; k < pairs.size(); ++k)
        {
            const auto [i, j] = pairs[k];
            if (missing[i] || missing[j])
            {
                continue;
            }
            shared[k] += (counts[i] - 1.0) * (counts[j] - 1.0);
            ++observed[k];
        }
    }
    std::vector<double> out(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k)
    {
        if (observed[k] == 0)
        {
            throw NumericalError("pair shares no observed SNPs");
        }
        out[k] = shared[k] / (2.0 * static_cast<double>(observed[k])) + 0.5;
    }
    return out;
}

double weighted_allele_frequency(std::span<const std::uint8_t> counts,
                                 std::span<const std::uint8_t> missing,
                                 const Eigen::VectorXd& weights)
{
    double num = 0.0;
    double den = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i)
    {
        const double w = weights[static_cast<Eigen::Index>(i)];
        scale += std::abs(w);
        if (missing[i])
        {
            continue;
        }
        num += w * counts[i];
        den += w;
    }
    if (std::abs(den) <= 1e-12 * scale)
    {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return num / (2.0 * den);
}

AlleleFrequencies reestimate_frequencies(const GenotypeMatrix& g, const KinshipMatrix& k)
{
    const int n = g.num_individuals();
    if (k.size() != n)
    {
        throw std::invalid_argument("kinship matrix does not match the genotype panel");
    }
    const SpectralInverse inverse(k.matrix());
    const Eigen::VectorXd weights = inverse.solve(Eigen::VectorXd::Ones(n));
    const auto naive = estimate_allele_frequencies(g);

    AlleleFrequencies out;
    out.p.resize(static_cast<std::size_t>(g.num_snps()));
    for (int l = 0; l < g.num_snps(); ++l)
    {
        const double raw = weighted_allele_frequency(g.snp_counts(l), g.snp_missing(l), weights);
        out.p[static_cast<std::size_t>(l)] = std::isnan(raw) ? naive[l] : clamp_frequency(raw, n);
    }
    return out;
}

RefinedKinship estimate_kinship(const GenotypeMatrix& g, int freq_iters, double tolerance)
{
    if (freq_iters < 0)
    {
        throw std::invalid_argument("frequency iteration count must be non-negative");
    }
    auto freq = estimate_allele_frequencies(g);
    auto k = kinship_correlation(g, freq);
    RefinedKinship result{std::move(k), freq, 0, false};
    for (int it = 1; it <= freq_iters; ++it)
    {
        auto next = reestimate_frequencies(g, result.kinship);
        double delta = 0.0;
        for (int l = 0; l < g.num_snps(); ++l)
        {
            delta = std::max(delta, std::abs(next[l] - result.frequencies[l]));
        }
        result.kinship = kinship_correlation(g, next);
        result.frequencies = std::move(next);
        result.iterations = it;
        result.converged = delta < tolerance;
        if (result.converged)
        {
            break;
        }
    }
    return result;
}

}  // namespace kinward::kinship

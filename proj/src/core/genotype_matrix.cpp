#include "kinward/core/genotype_matrix.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace kinward
{

GenotypeMatrix::GenotypeMatrix(int num_individuals,
                               int num_snps,
                               std::vector<std::uint8_t> counts,
                               std::vector<std::uint8_t> missing)
    : n_(num_individuals), num_snps_(num_snps), counts_(std::move(counts)), missing_(std::move(missing))
{
    if (n_ < 2 || num_snps_ < 1)
    {
        throw std::invalid_argument("genotype matrix needs at least 2 individuals and 1 SNP");
    }
    const auto size = static_cast<std::size_t>(n_) * static_cast<std::size_t>(num_snps_);
    if (counts_.size() != size)
    {
        throw std::invalid_argument("genotype count buffer has wrong size");
    }
    if (missing_.empty())
    {
        missing_.assign(size, 0);
    }
    else if (missing_.size() != size)
    {
        throw std::invalid_argument("missingness mask has wrong size");
    }
    for (std::size_t k = 0; k < size; ++k)
    {
        if (missing_[k] != 0)
        {
            missing_[k] = 1;
            counts_[k] = 0;
            any_missing_ = true;
        }
        else if (counts_[k] > 2)
        {
            throw std::invalid_argument("genotype count " + std::to_string(counts_[k]) + " outside {0,1,2}");
        }
    }
}

std::span<const std::uint8_t> GenotypeMatrix::snp_counts(int l) const
{
    return {counts_.data() + index(0, l), static_cast<std::size_t>(n_)};
}

std::span<const std::uint8_t> GenotypeMatrix::snp_missing(int l) const
{
    return {missing_.data() + index(0, l), static_cast<std::size_t>(n_)};
}

Eigen::VectorXd GenotypeMatrix::snp_dosages(int l) const
{
    Eigen::VectorXd x(n_);
    const auto c = snp_counts(l);
    const auto m = snp_missing(l);
    for (int i = 0; i < n_; ++i)
    {
        x[i] = m[i] ? std::numeric_limits<double>::quiet_NaN() : static_cast<double>(c[i]);
    }
    return x;
}

bool GenotypeMatrix::is_monomorphic(int l) const
{
    const auto c = snp_counts(l);
    const auto m = snp_missing(l);
    long alt = 0;
    long observed = 0;
    for (int i = 0; i < n_; ++i)
    {
        if (!m[i])
        {
            alt += c[i];
            ++observed;
        }
    }
    return alt == 0 || alt == 2 * observed;
}

GenotypeMatrix GenotypeMatrix::select_individuals(std::span<const int> rows) const
{
    const int m = static_cast<int>(rows.size());
    std::vector<std::uint8_t> counts(static_cast<std::size_t>(m) * num_snps_);
    std::vector<std::uint8_t> missing(counts.size());
    for (int l = 0; l < num_snps_; ++l)
    {
        for (int r = 0; r < m; ++r)
        {
            const auto src = index(rows[r], l);
            const auto dst = static_cast<std::size_t>(l) * m + r;
            counts[dst] = counts_[src];
            missing[dst] = missing_[src];
        }
    }
    return GenotypeMatrix(m, num_snps_, std::move(counts), std::move(missing));
}

void impute_mean(Eigen::VectorXd& x)
{
    double sum = 0.0;
    int observed = 0;
    for (double v : x)
    {
        if (!std::isnan(v))
        {
            sum += v;
            ++observed;
        }
    }
    if (observed == x.size())
    {
        return;
    }
    const double fill = observed > 0 ? sum / observed : 0.0;
    for (double& v : x)
    {
        if (std::isnan(v))
        {
            v = fill;
        }
    }
}

std::vector<int> polymorphic_snps(const GenotypeMatrix& g)
{
    std::vector<int> keep;
    keep.reserve(g.num_snps());
    for (int l = 0; l < g.num_snps(); ++l)
    {
        if (!g.is_monomorphic(l))
        {
            keep.push_back(l);
        }
    }
    return keep;
}

}  // namespace kinward

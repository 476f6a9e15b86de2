#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace kinward
{

/// n individuals by L SNPs of reference-allele counts in {0, 1, 2}, with a
/// missingness mask. Storage is SNP-major so each SNP column is contiguous.
class GenotypeMatrix
{
public:
    /// `counts` and `missing` are SNP-major (entry (i, l) at l * n + i).
    /// Counts under a set mask entry are ignored and stored as 0.
    GenotypeMatrix(int num_individuals,
                   int num_snps,
                   std::vector<std::uint8_t> counts,
                   std::vector<std::uint8_t> missing = {});

    [[nodiscard]] int num_individuals() const noexcept { return n_; }
    [[nodiscard]] int num_snps() const noexcept { return num_snps_; }

    [[nodiscard]] int count(int i, int l) const { return counts_[index(i, l)]; }
    [[nodiscard]] bool is_missing(int i, int l) const { return missing_[index(i, l)] != 0; }
    [[nodiscard]] bool has_missing() const noexcept { return any_missing_; }

    [[nodiscard]] std::span<const std::uint8_t> snp_counts(int l) const;
    [[nodiscard]] std::span<const std::uint8_t> snp_missing(int l) const;

    /// Column l as doubles; missing entries are NaN.
    [[nodiscard]] Eigen::VectorXd snp_dosages(int l) const;

    /// Minor-allele count of zero among the observed entries of SNP l.
    [[nodiscard]] bool is_monomorphic(int l) const;

    /// Copy of the listed individuals (rows), in the given order.
    [[nodiscard]] GenotypeMatrix select_individuals(std::span<const int> rows) const;

    friend bool operator==(const GenotypeMatrix&, const GenotypeMatrix&) = default;

private:
    [[nodiscard]] std::size_t index(int i, int l) const
    {
        return static_cast<std::size_t>(l) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    }

    int n_;
    int num_snps_;
    std::vector<std::uint8_t> counts_;
    std::vector<std::uint8_t> missing_;
    bool any_missing_ = false;
};

/// Replace NaN entries by the mean of the observed ones (0 if none observed).
void impute_mean(Eigen::VectorXd& x);

/// Indices of SNPs that are polymorphic in the sample.
[[nodiscard]] std::vector<int> polymorphic_snps(const GenotypeMatrix& g);

}  // namespace kinward

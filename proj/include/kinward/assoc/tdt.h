#pragma once

#include <vector>

#include "kinward/core/test_result.h"

namespace kinward::assoc
{

/// Genotypes (reference-allele counts) of one father-mother-child trio at a SNP.
struct Trio
{
    int father = 0;
    int mother = 0;
    int child = 0;
};

/// Trios at one SNP, each Mendelian-consistent.
class TrioSet
{
public:
    /// Throws std::invalid_argument on an out-of-range genotype or a child
    /// that cannot arise from its parents.
    explicit TrioSet(std::vector<Trio> trios);

    [[nodiscard]] const std::vector<Trio>& trios() const noexcept { return trios_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(trios_.size()); }

private:
    std::vector<Trio> trios_;
};

/// Alleles passed on by heterozygous parents.
struct Transmissions
{
    long ref = 0;  ///< n_A: reference (counted) allele transmitted
    long alt = 0;  ///< n_a: other allele transmitted
};

/// Transmission counts of one trio. A heterozygous x heterozygous mating with
/// a heterozygous child counts one of each allele.
[[nodiscard]] Transmissions count_transmissions(const Trio& trio);
[[nodiscard]] Transmissions count_transmissions(const TrioSet& trios);

struct TdtResult
{
    TestResult result;      ///< McNemar statistic (n_a - n_A)^2 / (n_a + n_A), df 1
    Transmissions counts;
    double exact_p_value;   ///< two-sided Binomial(n_a + n_A, 1/2)
};

/// Throws std::invalid_argument when no parent is heterozygous.
[[nodiscard]] TdtResult tdt(const TrioSet& trios, int snp_index = 0);
[[nodiscard]] TdtResult tdt(const Transmissions& counts, int snp_index = 0);

}  // namespace kinward::assoc

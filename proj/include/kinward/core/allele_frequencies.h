#pragma once

#include <vector>

#include "kinward/core/genotype_matrix.h"

namespace kinward
{

/// Reference-allele fraction per SNP.
struct AlleleFrequencies
{
    std::vector<double> p;

    [[nodiscard]] int size() const noexcept { return static_cast<int>(p.size()); }
    [[nodiscard]] double operator[](int l) const { return p[static_cast<std::size_t>(l)]; }
};

/// Clamp interval [1/(2n+2), 1 - 1/(2n+2)] for a sample of n individuals.
[[nodiscard]] double frequency_floor(int n);
[[nodiscard]] double clamp_frequency(double p, int n);

/// Sum of observed counts over twice the observed count, clamped. A SNP with
/// no observed genotypes gets 0.5.
[[nodiscard]] AlleleFrequencies estimate_allele_frequencies(const GenotypeMatrix& g);

}  // namespace kinward

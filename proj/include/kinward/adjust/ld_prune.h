#pragma once

#include <vector>

#include "kinward/core/genotype_matrix.h"

namespace kinward::adjust
{

/// Greedy pairwise-r^2 filter: walk the SNPs in order and keep one unless its
/// r^2 with one of the last `window` kept SNPs reaches `r2_threshold`.
/// Monomorphic SNPs are dropped. Returns kept SNP indices, ascending.
[[nodiscard]] std::vector<int> ld_prune(const GenotypeMatrix& g, double r2_threshold, int window = 50);

}  // namespace kinward::adjust

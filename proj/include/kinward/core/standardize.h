#pragma once

#include <span>

#include <Eigen/Dense>

#include "kinward/core/allele_frequencies.h"
#include "kinward/core/genotype_matrix.h"

namespace kinward
{

/// Entry (i, l) = (x_il - 2 p_l) / sqrt(4 p_l (1 - p_l)); missing entries are 0.
/// Throws DegenerateSnpError if any p_l is outside (0, 1).
[[nodiscard]] Eigen::MatrixXd standardize_genotypes(const GenotypeMatrix& g, const AlleleFrequencies& p);

/// Same, restricted to the listed SNP columns (output column k is SNP snps[k]).
[[nodiscard]] Eigen::MatrixXd standardize_genotypes(const GenotypeMatrix& g,
                                                    const AlleleFrequencies& p,
                                                    std::span<const int> snps);

}  // namespace kinward

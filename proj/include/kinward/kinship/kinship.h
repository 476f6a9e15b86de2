#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kinward/core/allele_frequencies.h"
#include "kinward/core/genotype_matrix.h"
#include "kinward/core/kinship_matrix.h"
#include "kinward/core/pedigree.h"

namespace kinward::kinship
{

/// Kinship of every pedigree member by the founder-down recursion (no
/// mutation). `founder_kinship`, when given, is indexed in the order of
/// `ped.founders()` and must be symmetric PSD; otherwise founders are
/// unrelated and outbred.
[[nodiscard]] KinshipMatrix pedigree_kinship(const Pedigree& ped,
                                             const std::optional<Eigen::MatrixXd>& founder_kinship = std::nullopt);

/// Genotypic-correlation estimator: mean over polymorphic SNPs of
/// z_l z_l^T with z the standardized genotypes. Missing genotypes contribute 0.
[[nodiscard]] KinshipMatrix kinship_correlation(const GenotypeMatrix& g, const AlleleFrequencies& p);

/// Genome-wide average IBS probability, (1/2L) sum (x_l - 1)(x_l - 1)^T + 1/2,
/// each pair averaged over the polymorphic SNPs observed in both.
[[nodiscard]] KinshipMatrix kinship_ibs(const GenotypeMatrix& g);

using Pair = std::pair<int, int>;

/// Correlation-estimator entries for selected pairs only; matches
/// kinship_correlation entrywise without forming the n x n matrix.
[[nodiscard]] std::vector<double> correlation_kinship_pairs(const GenotypeMatrix& g,
                                                            const AlleleFrequencies& p,
                                                            std::span<const Pair> pairs);
[[nodiscard]] std::vector<double> ibs_kinship_pairs(const GenotypeMatrix& g, std::span<const Pair> pairs);

/// Weighted estimate 1^T K^-1 x / (2 * 1^T K^-1 1) for one SNP, without clamping.
/// `weights` is K^-1 1. Missing entries are dropped from both sums.
[[nodiscard]] double weighted_allele_frequency(std::span<const std::uint8_t> counts,
                                               std::span<const std::uint8_t> missing,
                                               const Eigen::VectorXd& weights);

/// GLS allele frequencies under kinship K, clamped as in
/// estimate_allele_frequencies. K is ridged if near-singular.
[[nodiscard]] AlleleFrequencies reestimate_frequencies(const GenotypeMatrix& g, const KinshipMatrix& k);

struct RefinedKinship
{
    KinshipMatrix kinship;
    AlleleFrequencies frequencies;
    int iterations = 0;      ///< refinement rounds actually run
    bool converged = false;  ///< max |delta p| < tolerance on the last round
};

/// Naive frequencies, then `freq_iters` rounds of (K from p, p from K).
/// Stops early once max |delta p_l| < tolerance.
[[nodiscard]] RefinedKinship estimate_kinship(const GenotypeMatrix& g, int freq_iters = 1, double tolerance = 1e-6);

}  // namespace kinward::kinship

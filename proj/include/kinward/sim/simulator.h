#pragma once

#include <filesystem>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kinward/core/genotype_matrix.h"
#include "kinward/core/kinship_matrix.h"
#include "kinward/core/phenotype.h"
#include "kinward/sim/scenario.h"

namespace kinward::sim
{

using Rng = std::mt19937_64;

/// One Balding-Nichols draw per island: Beta(p(1-F)/F, (1-p)(1-F)/F).
/// F = 0 gives p for every island.
[[nodiscard]] std::vector<double> draw_subpop_frequencies(double p, double fst, int islands, Rng& rng);

/// Intercept c with mean over simulated individuals of logistic(c + sum_j beta_j x_j)
/// equal to `prevalence`. `island_freqs[s][j]` is the frequency of causal SNP j in
/// island s; islands are equally weighted. Common random numbers are used, so the
/// bisection solves the Monte Carlo equation to machine precision.
[[nodiscard]] double calibrate_intercept(std::span<const double> log_odds,
                                         const std::vector<std::vector<double>>& island_freqs,
                                         double prevalence,
                                         Rng& rng,
                                         int draws = 100000);

/// Population prevalence implied by an intercept, estimated from `draws` fresh individuals.
[[nodiscard]] double realized_prevalence(double intercept,
                                         std::span<const double> log_odds,
                                         const std::vector<std::vector<double>>& island_freqs,
                                         Rng& rng,
                                         int draws);

/// K_ij = F sum_s a_is a_js off the diagonal, K_ii = (1 + F sum_s a_is^2) / 2,
/// from per-individual ancestry proportions (rows of `ancestry`).
[[nodiscard]] KinshipMatrix true_kinship(const Eigen::MatrixXd& ancestry, double fst);

struct SimOutput
{
    GenotypeMatrix genotypes;
    Phenotype phenotype;
    KinshipMatrix true_k;
    std::vector<int> causal;          ///< ascending SNP indices
    std::vector<int> labels;          ///< island of each individual, -1 when admixed
    Eigen::MatrixXd ancestry;         ///< n x islands
    std::vector<double> ancestral;    ///< ancestral minor-allele frequency per SNP
    double intercept = 0.0;           ///< calibrated logistic intercept (population design)
    int attempts = 1;                 ///< populations drawn before the quotas were met

    /// 1 for causal SNPs, 0 otherwise, length L.
    [[nodiscard]] std::vector<std::uint8_t> causal_mask() const;
};

/// Maximum number of populations drawn before giving up on the quotas.
inline constexpr int kMaxAttempts = 100;

[[nodiscard]] SimOutput simulate_panel(const SimScenario& sc, Rng& rng);

/// Replicate r runs on its own stream seeded with sc.seed + r.
[[nodiscard]] SimOutput simulate_replicate(const SimScenario& sc, int replicate);

/// rep<r>_genotypes.txt, rep<r>_phenotypes.txt, rep<r>_kinship.tsv and
/// rep<r>_truth.tsv (snp_index, causal) under `dir`.
void write_replicate(const std::filesystem::path& dir, int replicate, const SimOutput& out);

}  // namespace kinward::sim

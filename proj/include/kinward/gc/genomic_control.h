#pragma once

#include <span>
#include <vector>

#include "kinward/core/kinship_matrix.h"
#include "kinward/core/phenotype.h"
#include "kinward/core/test_result.h"

namespace kinward::gc
{

enum class LambdaMethod
{
    median,
    mean,
    trimmed_mean,
};

struct LambdaEstimate
{
    double lambda = 1.0;
    LambdaMethod method = LambdaMethod::median;
    double trim_fraction = 1.0;  ///< q, meaningful for trimmed_mean
    int count = 0;               ///< number of statistics used
};

/// Median of the statistics over the exact chi^2_1 median. With
/// `floor_at_one`, estimates below 1 are raised to 1.
[[nodiscard]] LambdaEstimate lambda_median(std::span<const double> stats, bool floor_at_one = false);

/// Plain mean (the chi^2_1 mean is 1).
[[nodiscard]] LambdaEstimate lambda_mean(std::span<const double> stats);

/// Mean of the ceil(q * m) smallest statistics over its null expectation
/// (1/q) d_3(d_1^-1(q)). Ties at the cut go to the lower index.
[[nodiscard]] LambdaEstimate lambda_trimmed(std::span<const double> stats, double q);

/// Expected mean of the smallest 100q% of chi^2_1 draws: (1/q) d_3(d_1^-1(q)).
[[nodiscard]] double trimmed_null_mean(double q);

/// Valid statistics of a result vector, in order.
[[nodiscard]] std::vector<double> statistics_of(std::span<const TestResult> results);

/// Divide every statistic by lambda. p-values come from chi^2_1, or from
/// F(1, m) for the mean method with m = lambda.count.
[[nodiscard]] std::vector<TestResult> gc_adjust(std::span<const TestResult> results, const LambdaEstimate& lambda);

/// Expected inflation of the Armitage statistic under kinship K:
/// (D + R) / (sum_i K_ii - (1/n) sum_ij K_ij).
[[nodiscard]] double theoretical_lambda(const KinshipMatrix& k, const Phenotype& y);

}  // namespace kinward::gc

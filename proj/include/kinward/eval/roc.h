#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "kinward/core/test_result.h"

namespace kinward::eval
{

/// Points run from (0, 0) at threshold +inf to (1, 1).
struct RocCurve
{
    std::vector<double> thresholds;
    std::vector<double> tpr;
    std::vector<double> fpr;
    double auc = 0.0;
};

/// Sweep thresholds over the pooled statistics; a SNP is called at threshold t
/// when its statistic is >= t. Tied statistics enter together, so the curve
/// depends only on the ranking. NA statistics rank below everything.
/// AUC by the trapezoid rule.
[[nodiscard]] RocCurve roc(std::span<const TestResult> results, std::span<const std::uint8_t> causal);

void write_roc(const std::filesystem::path& path, const RocCurve& curve);

}  // namespace kinward::eval

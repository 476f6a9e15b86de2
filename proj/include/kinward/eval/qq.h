#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "kinward/core/test_result.h"

namespace kinward::eval
{

/// Q-Q points on the -log10 p scale, both columns ascending.
struct QqData
{
    std::vector<double> expected;
    std::vector<double> observed;
    int clamped = 0;  ///< p-values of exactly 0 raised to 1e-300
};

/// Expected point i (1-based, m points) is -log10((i - 0.5) / m). NA results are
/// skipped. When `causal` is non-empty (same length as `results`) only entries
/// flagged 0 are used.
[[nodiscard]] QqData qq(std::span<const TestResult> results, std::span<const std::uint8_t> causal = {});

void write_qq(const std::filesystem::path& path, const QqData& data);

}  // namespace kinward::eval

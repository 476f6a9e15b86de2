#include "kinward/eval/qq.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "kinward/core/error.h"
#include "kinward/core/io.h"

namespace kinward::eval
{

namespace
{

constexpr double kMinP = 1e-300;

}  // namespace

QqData qq(std::span<const TestResult> results, std::span<const std::uint8_t> causal)
{
    if (!causal.empty() && causal.size() != results.size())
    {
        throw std::invalid_argument("truth labels do not match the results");
    }
    QqData out;
    for (std::size_t k = 0; k < results.size(); ++k)
    {
        if (!results[k].valid() || (!causal.empty() && causal[k] != 0))
        {
            continue;
        }
        double p = results[k].p_value;
        if (p <= 0.0)
        {
            p = kMinP;
            ++out.clamped;
        }
        out.observed.push_back(-std::log10(p));
    }
    if (out.observed.empty())
    {
        throw std::invalid_argument("no usable p-values for a Q-Q plot");
    }
    std::sort(out.observed.begin(), out.observed.end());
    const auto m = static_cast<double>(out.observed.size());
    out.expected.resize(out.observed.size());
    // Largest expected value pairs with the largest observed one.
    for (std::size_t j = 0; j < out.expected.size(); ++j)
    {
        const double i = m - static_cast<double>(j);
        out.expected[j] = -std::log10((i - 0.5) / m);
    }
    return out;
}

void write_qq(const std::filesystem::path& path, const QqData& data)
{
    std::ofstream out(path);
    if (!out)
    {
        throw Error("cannot write " + path.string());
    }
    out << "expected\tobserved\n";
    for (std::size_t j = 0; j < data.expected.size(); ++j)
    {
        out << io::format_double(data.expected[j]) << '\t' << io::format_double(data.observed[j]) << '\n';
    }
}

}  // namespace kinward::eval

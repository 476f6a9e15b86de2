#include "kinward/core/test_result.h"

#include <array>
#include <limits>
#include <utility>

#include "kinward/core/distributions.h"

namespace kinward
{

namespace
{

constexpr std::array<std::pair<Method, std::string_view>, 8> kTags{{
    {Method::armitage, "armitage"},
    {Method::tdt, "tdt"},
    {Method::mcp, "mcp"},
    {Method::pc, "pc"},
    {Method::mm_lrt, "mm-lrt"},
    {Method::mm_score, "mm-score"},
    {Method::grammar, "grammar"},
    {Method::gc, "gc"},
}};

}  // namespace

std::string_view to_string(Method m)
{
    for (const auto& [method, tag] : kTags)
    {
        if (method == m)
        {
            return tag;
        }
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view tag)
{
    for (const auto& [method, name] : kTags)
    {
        if (name == tag)
        {
            return method;
        }
    }
    return std::nullopt;
}

TestResult TestResult::chi_squared(int snp_index, Method method, double statistic, int df)
{
    if (std::isnan(statistic))
    {
        return not_available(snp_index, method, df);
    }
    return {snp_index, method, statistic, df, chi_squared_sf(statistic, df)};
}

TestResult TestResult::not_available(int snp_index, Method method, int df)
{
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    return {snp_index, method, nan, df, nan};
}

}  // namespace kinward

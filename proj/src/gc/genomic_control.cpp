#include "kinward/gc/genomic_control.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "kinward/core/distributions.h"

namespace kinward::gc
{

namespace
{

void check_stats(std::span<const double> stats)
{
    if (stats.empty())
    {
        throw std::invalid_argument("no statistics to estimate lambda from");
    }
    for (double s : stats)
    {
        if (!std::isfinite(s) || s < 0.0)
        {
            throw std::invalid_argument("statistics must be finite and non-negative");
        }
    }
}

double sample_median(std::span<const double> stats)
{
    std::vector<double> v(stats.begin(), stats.end());
    const auto mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1)
    {
        return upper;
    }
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

}  // namespace

LambdaEstimate lambda_median(std::span<const double> stats, bool floor_at_one)
{
    check_stats(stats);
    double lambda = sample_median(stats) / chi_squared_1_median();
    if (floor_at_one)
    {
        lambda = std::max(lambda, 1.0);
    }
    return {lambda, LambdaMethod::median, 1.0, static_cast<int>(stats.size())};
}

LambdaEstimate lambda_mean(std::span<const double> stats)
{
    auto est = lambda_trimmed(stats, 1.0);
    est.method = LambdaMethod::mean;
    return est;
}

double trimmed_null_mean(double q)
{
    if (!(q > 0.0 && q <= 1.0))
    {
        throw std::invalid_argument("trim fraction must lie in (0, 1]");
    }
    if (q == 1.0)
    {
        return 1.0;
    }
    return chi_squared_cdf(chi_squared_quantile(q, 1.0), 3.0) / q;
}

LambdaEstimate lambda_trimmed(std::span<const double> stats, double q)
{
    check_stats(stats);
    const double null_mean = trimmed_null_mean(q);
    const auto m = stats.size();
    const auto keep = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(q * static_cast<double>(m))));

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    if (keep < m)
    {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return stats[a] < stats[b]; });
        order.resize(keep);
        std::sort(order.begin(), order.end());
    }
    // Sum in original index order so q = 1 reproduces the plain mean bit for bit.
    double sum = 0.0;
    for (auto idx : order)
    {
        sum += stats[idx];
    }
    const double trimmed_mean = sum / static_cast<double>(keep);
    return {trimmed_mean / null_mean, LambdaMethod::trimmed_mean, q, static_cast<int>(m)};
}

std::vector<double> statistics_of(std::span<const TestResult> results)
{
    std::vector<double> out;
    out.reserve(results.size());
    for (const auto& r : results)
    {
        if (r.valid())
        {
            out.push_back(r.statistic);
        }
    }
    return out;
}

std::vector<TestResult> gc_adjust(std::span<const TestResult> results, const LambdaEstimate& lambda)
{
    if (!(lambda.lambda > 0.0) || !std::isfinite(lambda.lambda))
    {
        throw std::invalid_argument("lambda must be positive");
    }
    std::vector<TestResult> out;
    out.reserve(results.size());
    for (const auto& r : results)
    {
        if (!r.valid())
        {
            out.push_back(TestResult::not_available(r.snp_index, Method::gc, r.df));
            continue;
        }
        const double adjusted = r.statistic / lambda.lambda;
        const double p = lambda.method == LambdaMethod::mean ? f_sf(adjusted, 1.0, std::max(1, lambda.count))
                                                             : chi_squared_sf(adjusted, 1.0);
        out.push_back({r.snp_index, Method::gc, adjusted, 1, p});
    }
    return out;
}

double theoretical_lambda(const KinshipMatrix& k, const Phenotype& y)
{
    y.require_case_control();
    const int n = y.size();
    if (k.size() != n)
    {
        throw std::invalid_argument("kinship matrix does not match the phenotype");
    }
    const double n1 = y.num_cases();
    const double n0 = y.num_controls();
    // c_i = y_i / n1 - (1 - y_i) / n0, so Var[T] = 4p(1-p) c^T K c and
    // D + R = n0 n1 c^T K c.
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i)
    {
        c[i] = y[i] / n1 - (1.0 - y[i]) / n0;
    }
    const auto& km = k.matrix();
    const double d_plus_r = n0 * n1 * c.dot(km * c);
    const double expected_v = km.trace() - km.sum() / n;
    if (!(expected_v > 0.0))
    {
        throw std::invalid_argument("kinship matrix gives a non-positive expected variance");
    }
    return d_plus_r / expected_v;
}

}  // namespace kinward::gc

#include "kinward/assoc/armitage.h"

#include <cmath>
#include <stdexcept>

namespace kinward::assoc
{

TestResult armitage(const Eigen::VectorXd& x, const Phenotype& y, int snp_index)
{
    y.require_case_control();
    if (x.size() != y.size())
    {
        throw std::invalid_argument("genotype and phenotype lengths differ");
    }

    double n0 = 0.0;
    double n1 = 0.0;
    double sum_cases = 0.0;
    double sum_controls = 0.0;
    double sum_sq = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
    {
        const double xi = x[i];
        if (std::isnan(xi))
        {
            continue;
        }
        if (y[static_cast<int>(i)] == 1.0)
        {
            n1 += 1.0;
            sum_cases += xi;
        }
        else
        {
            n0 += 1.0;
            sum_controls += xi;
        }
        sum_sq += xi * xi;
    }
    if (n0 == 0.0 || n1 == 0.0)
    {
        return TestResult::not_available(snp_index, Method::armitage);
    }

    const double n = n0 + n1;
    const double t = sum_cases / n1 - sum_controls / n0;
    const double mean = (sum_cases + sum_controls) / n;
    const double spread = sum_sq / n - mean * mean;
    const double v = (1.0 / n0 + 1.0 / n1) * spread;
    if (!(spread > 1e-12))
    {
        return TestResult::not_available(snp_index, Method::armitage);
    }
    return TestResult::chi_squared(snp_index, Method::armitage, t * t / v);
}

}  // namespace kinward::assoc

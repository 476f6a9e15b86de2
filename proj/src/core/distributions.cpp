#include "kinward/core/distributions.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace kinward
{

double chi_squared_sf(double x, double df)
{
    if (std::isnan(x))
    {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (x <= 0.0)
    {
        return 1.0;
    }
    if (std::isinf(x))
    {
        return 0.0;
    }
    return boost::math::gamma_q(df / 2.0, x / 2.0);
}

double chi_squared_cdf(double x, double df)
{
    if (std::isnan(x))
    {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (x <= 0.0)
    {
        return 0.0;
    }
    if (std::isinf(x))
    {
        return 1.0;
    }
    return boost::math::gamma_p(df / 2.0, x / 2.0);
}

double chi_squared_quantile(double prob, double df)
{
    if (!(prob >= 0.0 && prob <= 1.0))
    {
        throw std::invalid_argument("probability outside [0, 1]");
    }
    if (prob == 1.0)
    {
        return std::numeric_limits<double>::infinity();
    }
    return boost::math::quantile(boost::math::chi_squared_distribution<double>(df), prob);
}

double chi_squared_1_median()
{
    static const double median = chi_squared_quantile(0.5, 1.0);
    return median;
}

double f_sf(double x, double d1, double d2)
{
    if (std::isnan(x))
    {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (x <= 0.0)
    {
        return 1.0;
    }
    if (std::isinf(x))
    {
        return 0.0;
    }
    return boost::math::cdf(boost::math::complement(boost::math::fisher_f_distribution<double>(d1, d2), x));
}

double binomial_half_two_sided(long k, long n)
{
    if (n <= 0 || k < 0 || k > n)
    {
        throw std::invalid_argument("binomial count outside [0, n]");
    }
    const boost::math::binomial_distribution<double> dist(static_cast<double>(n), 0.5);
    const long tail = std::min(k, n - k);
    return std::min(1.0, 2.0 * boost::math::cdf(dist, static_cast<double>(tail)));
}

}  // namespace kinward

#pragma once

namespace kinward
{

/// Upper tail P(X > x) for X ~ chi^2_df, through the regularized incomplete
/// gamma function. NaN in, NaN out.
[[nodiscard]] double chi_squared_sf(double x, double df);
[[nodiscard]] double chi_squared_cdf(double x, double df);
[[nodiscard]] double chi_squared_quantile(double prob, double df);

/// Median of chi^2_1 (about 0.4549).
[[nodiscard]] double chi_squared_1_median();

/// Upper tail of the F(d1, d2) distribution.
[[nodiscard]] double f_sf(double x, double d1, double d2);

/// Two-sided exact p-value of observing k successes in n Binomial(n, 1/2) trials.
[[nodiscard]] double binomial_half_two_sided(long k, long n);

}  // namespace kinward

#pragma once

#include <cmath>
#include <optional>

#include <Eigen/Dense>

#include "kinward/core/kinship_matrix.h"
#include "kinward/core/linalg.h"
#include "kinward/core/phenotype.h"
#include "kinward/core/test_result.h"

namespace kinward::adjust
{

/// Largest heritability the search may return.
inline constexpr double kMaxH2 = 1.0 - 1e-6;

/// ML fit of y = 1 alpha [+ x beta] + delta + eps,
/// delta ~ N(0, 2 sigma2 h2 K), eps ~ N(0, sigma2 (1 - h2) I).
struct MixedModelFit
{
    double h2 = 0.0;
    double sigma2 = 1.0;
    double alpha = 0.0;
    double beta = 0.0;  ///< 0 for the null fit
    double log_likelihood = 0.0;
};

enum class MmMode
{
    lrt,
    score,
};

struct MixedModelOptions
{
    /// Skip the search and hold h2 here, for both null and alternative.
    std::optional<double> fixed_h2;
    /// Alternative fits reuse the null h2 instead of re-maximizing.
    bool approximate = false;
};

/// One eigendecomposition of K shared by the null fit and every per-SNP test.
/// All likelihoods are evaluated in the eigenbasis, where the covariance is
/// diagonal: d_i = h2 s_i + 1 - h2 with s the eigenvalues of 2K.
class MixedModel
{
public:
    /// `eig` must decompose K itself (not 2K).
    MixedModel(const EigenDecomposition& eig, const Eigen::VectorXd& y, MixedModelOptions options = {});
    MixedModel(const KinshipMatrix& k, const Eigen::VectorXd& y, MixedModelOptions options = {});

    [[nodiscard]] int size() const noexcept { return static_cast<int>(s_.size()); }
    [[nodiscard]] const MixedModelFit& null_fit() const noexcept { return null_; }
    [[nodiscard]] const MixedModelOptions& options() const noexcept { return options_; }

    /// Profile log-likelihood of the intercept-only model at a given h2.
    [[nodiscard]] double null_profile(double h2) const;
    /// Profile log-likelihood with x as a covariate; `x_rot` is rotate(x).
    [[nodiscard]] double alternative_profile(const Eigen::VectorXd& x_rot, double h2) const;

    [[nodiscard]] Eigen::VectorXd rotate(const Eigen::VectorXd& v) const;
    [[nodiscard]] MixedModelFit fit_alternative_rotated(const Eigen::VectorXd& x_rot) const;

    [[nodiscard]] TestResult test_rotated(const Eigen::VectorXd& x_rot, MmMode mode, int snp_index = 0) const;
    /// NaN genotypes are mean-imputed.
    [[nodiscard]] TestResult test(const Eigen::VectorXd& x, MmMode mode, int snp_index = 0) const;

    /// BLUP of delta under the null fit.
    [[nodiscard]] Eigen::VectorXd blup() const;

private:
    void init(const Eigen::MatrixXd& vectors, const Eigen::VectorXd& values, const Eigen::VectorXd& y);
    [[nodiscard]] MixedModelFit evaluate(const Eigen::VectorXd* x_rot, double h2) const;
    [[nodiscard]] TestResult score_test(const Eigen::VectorXd& x_rot, int snp_index) const;

    MixedModelOptions options_;
    Eigen::MatrixXd basis_;
    Eigen::VectorXd s_;
    Eigen::VectorXd y_rot_;
    Eigen::VectorXd ones_rot_;
    Eigen::VectorXd y_;
    MixedModelFit null_;
};

/// Maximize a profile likelihood over h2 in [0, kMaxH2]: 21-point grid, then
/// golden-section search between the neighbours of the best grid point.
/// Returns the argmax; `best_value` receives the maximum.
template <typename F>
double maximize_h2(F&& f, double* best_value);

[[nodiscard]] MixedModelFit fit_mixed_null(const Phenotype& y, const KinshipMatrix& k, MixedModelOptions options = {});

[[nodiscard]] TestResult mm_test(const Eigen::VectorXd& x,
                                 const Phenotype& y,
                                 const KinshipMatrix& k,
                                 MmMode mode,
                                 int snp_index = 0,
                                 MixedModelOptions options = {});

/// delta-hat = U diag(h2 s / (h2 s + 1 - h2)) U^T (y - alpha), s the eigenvalues of 2K.
[[nodiscard]] Eigen::VectorXd blup(const EigenDecomposition& eig, const Eigen::VectorXd& y, double h2, double alpha);

// ---------------------------------------------------------------------------

namespace detail
{
inline constexpr int kGridSize = 21;
inline constexpr double kGrid[kGridSize] = {0.0,  0.05, 0.1,  0.15, 0.2,  0.25, 0.3,  0.35, 0.4,  0.45, 0.5,
                                            0.55, 0.6,  0.65, 0.7,  0.75, 0.8,  0.85, 0.9,  0.95, 0.999};
inline constexpr double kH2Tolerance = 1e-6;
}  // namespace detail

template <typename F>
double maximize_h2(F&& f, double* best_value)
{
    int best = 0;
    double grid_values[detail::kGridSize];
    for (int i = 0; i < detail::kGridSize; ++i)
    {
        grid_values[i] = f(detail::kGrid[i]);
        if (grid_values[i] > grid_values[best] || std::isnan(grid_values[best]))
        {
            best = i;
        }
    }
    double lo = best > 0 ? detail::kGrid[best - 1] : 0.0;
    double hi = best + 1 < detail::kGridSize ? detail::kGrid[best + 1] : kMaxH2;

    constexpr double kInvPhi = 0.6180339887498949;
    double a = hi - kInvPhi * (hi - lo);
    double b = lo + kInvPhi * (hi - lo);
    double fa = f(a);
    double fb = f(b);
    while (hi - lo > detail::kH2Tolerance)
    {
        if (fa >= fb)
        {
            hi = b;
            b = a;
            fb = fa;
            a = hi - kInvPhi * (hi - lo);
            fa = f(a);
        }
        else
        {
            lo = a;
            a = b;
            fa = fb;
            b = lo + kInvPhi * (hi - lo);
            fb = f(b);
        }
    }
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);

    double arg = detail::kGrid[best];
    double value = grid_values[best];
    if (f_mid > value)
    {
        arg = mid;
        value = f_mid;
    }
    if (best_value != nullptr)
    {
        *best_value = value;
    }
    return arg;
}

}  // namespace kinward::adjust

#include "kinward/adjust/mixed_model.h"

#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "kinward/core/error.h"
#include "kinward/core/genotype_matrix.h"

namespace kinward::adjust
{

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_h2(double h2)
{
    if (!(h2 >= 0.0 && h2 <= kMaxH2))
    {
        throw std::invalid_argument("h2 must lie in [0, 1 - 1e-6]");
    }
}

}  // namespace

MixedModel::MixedModel(const EigenDecomposition& eig, const Eigen::VectorXd& y, MixedModelOptions options)
    : options_(options)
{
    init(eig.vectors, eig.values, y);
}

MixedModel::MixedModel(const KinshipMatrix& k, const Eigen::VectorXd& y, MixedModelOptions options)
    : options_(options)
{
    const auto eig = symmetric_eigen(k.matrix());
    init(eig.vectors, eig.values, y);
}

void MixedModel::init(const Eigen::MatrixXd& vectors, const Eigen::VectorXd& values, const Eigen::VectorXd& y)
{
    const auto n = vectors.rows();
    if (vectors.cols() != n || values.size() != n)
    {
        throw std::invalid_argument("mixed model needs a full eigendecomposition");
    }
    if (y.size() != n)
    {
        throw std::invalid_argument("phenotype length does not match the kinship matrix");
    }
    if (n < 3)
    {
        throw std::invalid_argument("mixed model needs at least 3 individuals");
    }
    if (!y.allFinite())
    {
        throw std::invalid_argument("phenotype contains non-finite values");
    }
    const double top = std::max(values.maxCoeff(), 0.0);
    if (values.minCoeff() < -1e-8 * std::max(top, 1.0))
    {
        throw NumericalError("kinship matrix is not positive semi-definite");
    }
    if (options_.fixed_h2)
    {
        check_h2(*options_.fixed_h2);
    }
    basis_ = vectors;
    s_ = 2.0 * values.cwiseMax(0.0);
    y_ = y;
    y_rot_ = basis_.transpose() * y;
    ones_rot_ = basis_.transpose() * Eigen::VectorXd::Ones(n);

    if (options_.fixed_h2)
    {
        null_ = evaluate(nullptr, *options_.fixed_h2);
    }
    else
    {
        double best = 0.0;
        const double h2 = maximize_h2([this](double h) { return null_profile(h); }, &best);
        null_ = evaluate(nullptr, h2);
    }
    if (!std::isfinite(null_.log_likelihood) || !(null_.sigma2 > 0.0))
    {
        throw NumericalError("null mixed model fit failed");
    }
}

MixedModelFit MixedModel::evaluate(const Eigen::VectorXd* x_rot, double h2) const
{
    const auto n = s_.size();
    const double resid_scale = 1.0 - h2;

    // Weighted normal equations, then residuals explicitly for accuracy.
    double cc = 0.0;
    double cy = 0.0;
    double cx = 0.0;
    double xx = 0.0;
    double xy = 0.0;
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const double d = h2 * s_[i] + resid_scale;
        const double w = 1.0 / d;
        const double c = ones_rot_[i];
        log_det += std::log(d);
        cc += w * c * c;
        cy += w * c * y_rot_[i];
        if (x_rot != nullptr)
        {
            const double x = (*x_rot)[i];
            cx += w * c * x;
            xx += w * x * x;
            xy += w * x * y_rot_[i];
        }
    }

    MixedModelFit fit;
    fit.h2 = h2;
    if (x_rot == nullptr)
    {
        fit.alpha = cy / cc;
    }
    else
    {
        const double det = cc * xx - cx * cx;
        if (!(det > 1e-12 * cc * xx))
        {
            fit.log_likelihood = kNaN;
            fit.sigma2 = kNaN;
            return fit;
        }
        fit.alpha = (xx * cy - cx * xy) / det;
        fit.beta = (cc * xy - cx * cy) / det;
    }

    double rss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        double r = y_rot_[i] - fit.alpha * ones_rot_[i];
        if (x_rot != nullptr)
        {
            r -= fit.beta * (*x_rot)[i];
        }
        rss += r * r / (h2 * s_[i] + resid_scale);
    }
    const double nd = static_cast<double>(n);
    fit.sigma2 = rss / nd;
    fit.log_likelihood = -0.5 * nd * (std::log(2.0 * std::numbers::pi * fit.sigma2) + 1.0) - 0.5 * log_det;
    if (!(fit.sigma2 > 0.0))
    {
        fit.log_likelihood = kNaN;
    }
    return fit;
}

double MixedModel::null_profile(double h2) const
{
    check_h2(h2);
    return evaluate(nullptr, h2).log_likelihood;
}

double MixedModel::alternative_profile(const Eigen::VectorXd& x_rot, double h2) const
{
    check_h2(h2);
    return evaluate(&x_rot, h2).log_likelihood;
}

Eigen::VectorXd MixedModel::rotate(const Eigen::VectorXd& v) const
{
    if (v.size() != s_.size())
    {
        throw std::invalid_argument("vector length does not match the kinship matrix");
    }
    return basis_.transpose() * v;
}

MixedModelFit MixedModel::fit_alternative_rotated(const Eigen::VectorXd& x_rot) const
{
    if (x_rot.size() != s_.size())
    {
        throw std::invalid_argument("rotated genotype length does not match the kinship matrix");
    }
    if (options_.fixed_h2 || options_.approximate)
    {
        return evaluate(&x_rot, null_.h2);
    }
    double best = 0.0;
    const double h2 = maximize_h2(
        [&](double h)
        {
            const double v = evaluate(&x_rot, h).log_likelihood;
            return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
        },
        &best);
    auto fit = evaluate(&x_rot, h2);
    // The alternative nests the null, so its maximum is at least its value at the null h2.
    const auto at_null = evaluate(&x_rot, null_.h2);
    if (!(fit.log_likelihood >= at_null.log_likelihood) && std::isfinite(at_null.log_likelihood))
    {
        fit = at_null;
    }
    return fit;
}

TestResult MixedModel::score_test(const Eigen::VectorXd& x_rot, int snp_index) const
{
    const double h2 = null_.h2;
    double cc = 0.0;
    double cx = 0.0;
    double xx = 0.0;
    double xr = 0.0;
    for (Eigen::Index i = 0; i < s_.size(); ++i)
    {
        const double w = 1.0 / (h2 * s_[i] + 1.0 - h2);
        const double c = ones_rot_[i];
        const double x = x_rot[i];
        cc += w * c * c;
        cx += w * c * x;
        xx += w * x * x;
        xr += w * x * (y_rot_[i] - null_.alpha * c);
    }
    const double info = xx - cx * cx / cc;
    if (!(info > 1e-12 * xx))
    {
        return TestResult::not_available(snp_index, Method::mm_score);
    }
    return TestResult::chi_squared(snp_index, Method::mm_score, xr * xr / (null_.sigma2 * info));
}

TestResult MixedModel::test_rotated(const Eigen::VectorXd& x_rot, MmMode mode, int snp_index) const
{
    if (x_rot.size() != s_.size())
    {
        throw std::invalid_argument("rotated genotype length does not match the kinship matrix");
    }
    if (mode == MmMode::score)
    {
        return score_test(x_rot, snp_index);
    }
    const auto score = score_test(x_rot, snp_index);
    if (!score.valid())
    {
        return TestResult::not_available(snp_index, Method::mm_lrt);
    }
    const auto alt = fit_alternative_rotated(x_rot);
    if (!std::isfinite(alt.log_likelihood))
    {
        std::cerr << "warning: alternative fit failed for SNP " << snp_index << "; using the score test\n";
        return score;
    }
    const double stat = std::max(0.0, 2.0 * (alt.log_likelihood - null_.log_likelihood));
    return TestResult::chi_squared(snp_index, Method::mm_lrt, stat);
}

TestResult MixedModel::test(const Eigen::VectorXd& x, MmMode mode, int snp_index) const
{
    Eigen::VectorXd xi = x;
    impute_mean(xi);
    return test_rotated(rotate(xi), mode, snp_index);
}

Eigen::VectorXd MixedModel::blup() const
{
    const double h2 = null_.h2;
    const Eigen::VectorXd r_rot = y_rot_ - null_.alpha * ones_rot_;
    const Eigen::ArrayXd shrink = (h2 * s_.array()) / (h2 * s_.array() + 1.0 - h2);
    return basis_ * (shrink * r_rot.array()).matrix();
}

MixedModelFit fit_mixed_null(const Phenotype& y, const KinshipMatrix& k, MixedModelOptions options)
{
    return MixedModel(k, y.vector(), options).null_fit();
}

TestResult mm_test(const Eigen::VectorXd& x,
                   const Phenotype& y,
                   const KinshipMatrix& k,
                   MmMode mode,
                   int snp_index,
                   MixedModelOptions options)
{
    if (x.size() != y.size())
    {
        throw std::invalid_argument("genotype and phenotype lengths differ");
    }
    return MixedModel(k, y.vector(), options).test(x, mode, snp_index);
}

Eigen::VectorXd blup(const EigenDecomposition& eig, const Eigen::VectorXd& y, double h2, double alpha)
{
    check_h2(h2);
    if (y.size() != eig.size() || eig.rank() != eig.size())
    {
        throw std::invalid_argument("blup needs a full eigendecomposition matching y");
    }
    const Eigen::ArrayXd s = 2.0 * eig.values.cwiseMax(0.0).array();
    const Eigen::ArrayXd shrink = (h2 * s) / (h2 * s + 1.0 - h2);
    const Eigen::VectorXd r_rot = eig.vectors.transpose() * (y.array() - alpha).matrix();
    return eig.vectors * (shrink * r_rot.array()).matrix();
}

}  // namespace kinward::adjust

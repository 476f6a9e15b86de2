#include "kinward/adjust/pc_adjust.h"

#include <stdexcept>

#include "kinward/core/genotype_matrix.h"

namespace kinward::adjust
{

namespace
{

// Residual sums of squares below this (per individual) count as zero.
constexpr double kMinVariance = 1e-12;

}  // namespace

PcAdjuster::PcAdjuster(const Eigen::MatrixXd& pcs, const Eigen::VectorXd& y)
    : n_(static_cast<int>(y.size())), k_(static_cast<int>(pcs.cols()))
{
    if (pcs.rows() != y.size())
    {
        throw std::invalid_argument("PC matrix and phenotype lengths differ");
    }
    if (k_ >= n_ - 2)
    {
        throw std::invalid_argument("too many PCs for the sample size");
    }
    Eigen::MatrixXd design(n_, k_ + 1);
    design.col(0).setOnes();
    design.rightCols(k_) = pcs;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(design);
    q_ = qr.householderQ() * Eigen::MatrixXd::Identity(n_, k_ + 1);
    y_resid_ = residualize(y);
    y_ss_ = y_resid_.squaredNorm();
}

Eigen::VectorXd PcAdjuster::residualize(const Eigen::VectorXd& v) const
{
    if (v.size() != n_)
    {
        throw std::invalid_argument("vector length does not match the PC matrix");
    }
    return v - q_ * (q_.transpose() * v);
}

TestResult PcAdjuster::test(const Eigen::VectorXd& x, int snp_index) const
{
    Eigen::VectorXd xi = x;
    impute_mean(xi);
    const Eigen::VectorXd xr = residualize(xi);
    const double x_ss = xr.squaredNorm();
    if (x_ss / n_ < kMinVariance)
    {
        return TestResult::not_available(snp_index, Method::pc);
    }
    if (y_ss_ / n_ < kMinVariance)
    {
        return TestResult::chi_squared(snp_index, Method::pc, 0.0);
    }
    const double xy = xr.dot(y_resid_);
    const double r2 = xy * xy / (x_ss * y_ss_);
    return TestResult::chi_squared(snp_index, Method::pc, (n_ - k_ - 1.0) * r2);
}

TestResult pc_adjusted_test(const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y,
                            const Eigen::MatrixXd& pcs,
                            int snp_index)
{
    return PcAdjuster(pcs, y).test(x, snp_index);
}

}  // namespace kinward::adjust

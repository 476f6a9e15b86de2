#pragma once

#include <Eigen/Dense>

#include "kinward/core/test_result.h"

namespace kinward::adjust
{

/// Linear adjustment of genotypes and phenotype for an intercept and k PCs.
/// The phenotype residual is computed once; each SNP costs O(nk).
class PcAdjuster
{
public:
    /// `pcs` is n x k (k may be 0). Requires k < n - 2.
    PcAdjuster(const Eigen::MatrixXd& pcs, const Eigen::VectorXd& y);

    [[nodiscard]] int num_pcs() const noexcept { return k_; }

    /// v minus its least-squares fit on [1, pcs].
    [[nodiscard]] Eigen::VectorXd residualize(const Eigen::VectorXd& v) const;

    /// (n - k - 1) r^2 of the two residual vectors; NaN genotypes are mean-imputed.
    /// NA when the genotype residual vanishes; 0 when the phenotype residual does.
    [[nodiscard]] TestResult test(const Eigen::VectorXd& x, int snp_index = 0) const;

private:
    Eigen::MatrixXd q_;  ///< orthonormal basis of [1, pcs]
    Eigen::VectorXd y_resid_;
    double y_ss_ = 0.0;
    int n_ = 0;
    int k_ = 0;
};

[[nodiscard]] TestResult pc_adjusted_test(const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& y,
                                          const Eigen::MatrixXd& pcs,
                                          int snp_index = 0);

}  // namespace kinward::adjust

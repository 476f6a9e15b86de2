#pragma once

#include <Eigen/Dense>

namespace kinward
{

/// n x n symmetric matrix of kinship coefficients. K_ii = (1 + f_i) / 2.
class KinshipMatrix
{
public:
    /// Throws if not square or asymmetric beyond 1e-12.
    explicit KinshipMatrix(Eigen::MatrixXd k);

    [[nodiscard]] int size() const noexcept { return static_cast<int>(k_.rows()); }
    [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return k_; }
    [[nodiscard]] double operator()(int i, int j) const { return k_(i, j); }

    /// f_i = 2 K_ii - 1.
    [[nodiscard]] double inbreeding(int i) const { return 2.0 * k_(i, i) - 1.0; }

    /// 2K = I: unrelated, outbred individuals.
    static KinshipMatrix unrelated(int n);

private:
    Eigen::MatrixXd k_;
};

}  // namespace kinward

#pragma once

#include <Eigen/Dense>

namespace kinward
{

/// Eigenpairs of a symmetric matrix, eigenvalues nonincreasing, eigenvectors
/// as orthonormal columns.
struct EigenDecomposition
{
    Eigen::MatrixXd vectors;
    Eigen::VectorXd values;

    [[nodiscard]] int size() const noexcept { return static_cast<int>(vectors.rows()); }
    [[nodiscard]] int rank() const noexcept { return static_cast<int>(values.size()); }

    /// Frobenius norm of v diag(values) v^T - a.
    [[nodiscard]] double reconstruction_error(const Eigen::MatrixXd& a) const;
    /// Max-abs entry of v^T v - I.
    [[nodiscard]] double orthonormality_error() const;
};

/// Full decomposition of a symmetric matrix (LAPACK divide and conquer).
/// Each eigenvector's largest-magnitude entry is made positive.
[[nodiscard]] EigenDecomposition symmetric_eigen(const Eigen::MatrixXd& a);

/// Inverse of a symmetric PSD matrix through its eigendecomposition. When the
/// smallest eigenvalue is below 1e-8 every eigenvalue is shifted by 1e-6
/// (ridge) and `ridged()` reports it.
class SpectralInverse
{
public:
    static constexpr double kRidgeTrigger = 1e-8;
    static constexpr double kRidge = 1e-6;

    explicit SpectralInverse(const EigenDecomposition& eig);
    explicit SpectralInverse(const Eigen::MatrixXd& a);

    [[nodiscard]] bool ridged() const noexcept { return ridged_; }
    [[nodiscard]] const Eigen::MatrixXd& basis() const noexcept { return basis_; }
    /// Eigenvalues after the ridge, same order as basis columns.
    [[nodiscard]] const Eigen::VectorXd& shifted_values() const noexcept { return values_; }

    [[nodiscard]] Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
    [[nodiscard]] Eigen::MatrixXd inverse() const;

private:
    void init(const Eigen::MatrixXd& vectors, const Eigen::VectorXd& values);

    Eigen::MatrixXd basis_;
    Eigen::VectorXd values_;
    bool ridged_ = false;
};

}  // namespace kinward

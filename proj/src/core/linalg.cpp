#include "kinward/core/linalg.h"

#include <lapacke.h>

#include <stdexcept>
#include <string>

#include "kinward/core/error.h"

namespace kinward
{

double EigenDecomposition::reconstruction_error(const Eigen::MatrixXd& a) const
{
    return (vectors * values.asDiagonal() * vectors.transpose() - a).norm();
}

double EigenDecomposition::orthonormality_error() const
{
    const auto k = vectors.cols();
    return (vectors.transpose() * vectors - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
}

EigenDecomposition symmetric_eigen(const Eigen::MatrixXd& a)
{
    if (a.rows() != a.cols() || a.rows() == 0)
    {
        throw std::invalid_argument("eigendecomposition needs a non-empty square matrix");
    }
    const auto n = static_cast<lapack_int>(a.rows());
    Eigen::MatrixXd work = a;
    Eigen::VectorXd ascending(n);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, work.data(), n, ascending.data());
    if (info != 0)
    {
        throw NumericalError("symmetric eigensolver failed (info=" + std::to_string(info) + ")");
    }

    EigenDecomposition eig;
    eig.values = ascending.reverse();
    eig.vectors = work.rowwise().reverse();
    for (Eigen::Index j = 0; j < eig.vectors.cols(); ++j)
    {
        Eigen::Index arg = 0;
        eig.vectors.col(j).cwiseAbs().maxCoeff(&arg);
        if (eig.vectors(arg, j) < 0.0)
        {
            eig.vectors.col(j) *= -1.0;
        }
    }
    return eig;
}

SpectralInverse::SpectralInverse(const EigenDecomposition& eig)
{
    init(eig.vectors, eig.values);
}

SpectralInverse::SpectralInverse(const Eigen::MatrixXd& a)
{
    const auto eig = symmetric_eigen(a);
    init(eig.vectors, eig.values);
}

void SpectralInverse::init(const Eigen::MatrixXd& vectors, const Eigen::VectorXd& values)
{
    basis_ = vectors;
    values_ = values;
    if (values_.minCoeff() < kRidgeTrigger)
    {
        values_.array() += kRidge;
        ridged_ = true;
    }
    if (values_.minCoeff() <= 0.0)
    {
        throw NumericalError("matrix is singular after ridge regularization");
    }
}

Eigen::VectorXd SpectralInverse::solve(const Eigen::VectorXd& b) const
{
    return basis_ * (basis_.transpose() * b).cwiseQuotient(values_);
}

Eigen::MatrixXd SpectralInverse::inverse() const
{
    return basis_ * values_.cwiseInverse().asDiagonal() * basis_.transpose();
}

}  // namespace kinward

#include "kinward/core/kinship_matrix.h"

#include <stdexcept>

namespace kinward
{

KinshipMatrix::KinshipMatrix(Eigen::MatrixXd k) : k_(std::move(k))
{
    if (k_.rows() != k_.cols() || k_.rows() == 0)
    {
        throw std::invalid_argument("kinship matrix must be square and non-empty");
    }
    if (!k_.allFinite())
    {
        throw std::invalid_argument("kinship matrix has non-finite entries");
    }
    if ((k_ - k_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    {
        throw std::invalid_argument("kinship matrix is not symmetric");
    }
}

KinshipMatrix KinshipMatrix::unrelated(int n)
{
    return KinshipMatrix(0.5 * Eigen::MatrixXd::Identity(n, n));
}

}  // namespace kinward

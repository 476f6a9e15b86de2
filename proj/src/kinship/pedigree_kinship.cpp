#include <stdexcept>

#include "kinward/core/error.h"
#include "kinward/kinship/kinship.h"

namespace kinward::kinship
{

KinshipMatrix pedigree_kinship(const Pedigree& ped, const std::optional<Eigen::MatrixXd>& founder_kinship)
{
    const int n = ped.size();
    if (n == 0)
    {
        throw std::invalid_argument("empty pedigree");
    }
    const auto founders = ped.founders();
    const int nf = static_cast<int>(founders.size());

    if (founder_kinship)
    {
        const auto& f = *founder_kinship;
        if (f.rows() != nf || f.cols() != nf)
        {
            throw std::invalid_argument("founder kinship must be " + std::to_string(nf) + " x " +
                                        std::to_string(nf));
        }
        if ((f - f.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        {
            throw std::invalid_argument("founder kinship is not symmetric");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(f, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -1e-9)
        {
            throw NumericalError("founder kinship is not positive semi-definite");
        }
    }

    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    // Founder block first: founders may appear anywhere in the ordering but
    // only relate to each other through the supplied matrix.
    for (int a = 0; a < nf; ++a)
    {
        for (int b = 0; b < nf; ++b)
        {
            const double value = founder_kinship ? (*founder_kinship)(a, b) : (a == b ? 0.5 : 0.0);
            k(founders[static_cast<std::size_t>(a)], founders[static_cast<std::size_t>(b)]) = value;
        }
    }

    // Parents precede children, so every j < i is not a descendant of i; nor is
    // any founder, wherever it is listed.
    for (int i = 0; i < n; ++i)
    {
        if (ped.is_founder(i))
        {
            continue;
        }
        const int m = *ped.mother(i);
        const int f = *ped.father(i);
        for (int j = 0; j < n; ++j)
        {
            if (j == i || (j > i && !ped.is_founder(j)))
            {
                continue;
            }
            const double value = 0.5 * (k(m, j) + k(f, j));
            k(i, j) = value;
            k(j, i) = value;
        }
        k(i, i) = 0.5 * (1.0 + k(m, f));
    }
    return KinshipMatrix(std::move(k));
}

}  // namespace kinward::kinship

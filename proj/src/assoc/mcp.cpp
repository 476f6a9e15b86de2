#include "kinward/assoc/mcp.h"

#include <cmath>
#include <stdexcept>

#include "kinward/core/genotype_matrix.h"

namespace kinward::assoc
{

namespace
{

TestResult statistic_from_forms(double xy, double xx, double yy, int n, int snp_index)
{
    const double det = yy * xx - xy * xy;
    if (!(xx > 0.0 && yy > 0.0) || !(det > 1e-12 * xx * yy))
    {
        return TestResult::not_available(snp_index, Method::mcp);
    }
    const double v = det / (n - 1.0);
    return TestResult::chi_squared(snp_index, Method::mcp, xy * xy / v);
}

}  // namespace

McpProjection::McpProjection(const KinshipMatrix& k) : inverse_(k.matrix())
{
    init();
}

McpProjection::McpProjection(const EigenDecomposition& eig) : inverse_(eig)
{
    init();
}

void McpProjection::init()
{
    const auto n = inverse_.basis().rows();
    ones_rot_ = inverse_.basis().transpose() * Eigen::VectorXd::Ones(n);
    ones_weighted_ = ones_rot_.cwiseQuotient(inverse_.shifted_values());
    ones_form_ = ones_rot_.dot(ones_weighted_);
}

Eigen::VectorXd McpProjection::rotate(const Eigen::VectorXd& v) const
{
    if (v.size() != ones_rot_.size())
    {
        throw std::invalid_argument("vector length does not match the kinship matrix");
    }
    return inverse_.basis().transpose() * v;
}

double McpProjection::rotated_form(const Eigen::VectorXd& a_rot, const Eigen::VectorXd& b_rot) const
{
    const double ab = a_rot.cwiseProduct(b_rot).cwiseQuotient(inverse_.shifted_values()).sum();
    return ab - ones_weighted_.dot(a_rot) * ones_weighted_.dot(b_rot) / ones_form_;
}

double McpProjection::form(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const
{
    return rotated_form(rotate(a), rotate(b));
}

Eigen::MatrixXd McpProjection::matrix() const
{
    const Eigen::MatrixXd inv = inverse_.inverse();
    const Eigen::VectorXd w = inverse_.basis() * ones_weighted_;
    return inv - w * w.transpose() / ones_form_;
}

TestResult mcp_statistic(const Eigen::VectorXd& x,
                         const Eigen::VectorXd& y,
                         const McpProjection& projection,
                         int snp_index)
{
    const auto x_rot = projection.rotate(x);
    const auto y_rot = projection.rotate(y);
    return statistic_from_forms(projection.rotated_form(x_rot, y_rot), projection.rotated_form(x_rot, x_rot),
                                projection.rotated_form(y_rot, y_rot), projection.size(), snp_index);
}

TestResult mcp_score(const Eigen::VectorXd& x, const Phenotype& y, const KinshipMatrix& k, int snp_index)
{
    if (x.size() != y.size() || k.size() != y.size())
    {
        throw std::invalid_argument("genotype, phenotype and kinship sizes differ");
    }
    Eigen::VectorXd filled = x;
    impute_mean(filled);
    const McpProjection projection(k);
    return mcp_statistic(filled, y.vector(), projection, snp_index);
}

McpScorer::McpScorer(const McpProjection& projection, const Eigen::VectorXd& y)
    : projection_(projection),
      y_rot_(projection.rotate(y)),
      y_form_(projection.rotated_form(y_rot_, y_rot_)),
      n_(projection.size())
{
}

TestResult McpScorer::test_rotated(const Eigen::VectorXd& x_rot, int snp_index) const
{
    return statistic_from_forms(projection_.rotated_form(x_rot, y_rot_), projection_.rotated_form(x_rot, x_rot),
                                y_form_, n_, snp_index);
}

TestResult McpScorer::test(const Eigen::VectorXd& x, int snp_index) const
{
    Eigen::VectorXd filled = x;
    impute_mean(filled);
    return test_rotated(projection_.rotate(filled), snp_index);
}

}  // namespace kinward::assoc

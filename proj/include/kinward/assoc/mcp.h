#pragma once

#include <Eigen/Dense>

#include "kinward/core/kinship_matrix.h"
#include "kinward/core/linalg.h"
#include "kinward/core/phenotype.h"
#include "kinward/core/test_result.h"

namespace kinward::assoc
{

/// P = K^-1 - K^-1 1 1^T K^-1 / (1^T K^-1 1), held in the eigenbasis of K so
/// that quadratic forms cost O(n) once their arguments are rotated.
class McpProjection
{
public:
    explicit McpProjection(const KinshipMatrix& k);
    /// `eig` must decompose K itself.
    explicit McpProjection(const EigenDecomposition& eig);

    /// K had to be ridged before inversion.
    [[nodiscard]] bool ridged() const noexcept { return inverse_.ridged(); }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(ones_rot_.size()); }

    /// U^T v in the eigenbasis of K.
    [[nodiscard]] Eigen::VectorXd rotate(const Eigen::VectorXd& v) const;
    /// a^T P b for rotated a and b.
    [[nodiscard]] double rotated_form(const Eigen::VectorXd& a_rot, const Eigen::VectorXd& b_rot) const;
    [[nodiscard]] double form(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

    /// Dense P, for checks.
    [[nodiscard]] Eigen::MatrixXd matrix() const;

private:
    void init();

    SpectralInverse inverse_;
    Eigen::VectorXd ones_rot_;
    Eigen::VectorXd ones_weighted_;  ///< U^T 1 / lambda
    double ones_form_ = 0.0;         ///< 1^T K^-1 1
};

/// T^2 / V with T = y^T P x and (n - 1) V = (y^T P y)(x^T P x) - (y^T P x)^2.
/// Symmetric in x and y. NA when V is not positive.
[[nodiscard]] TestResult mcp_statistic(const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& y,
                                       const McpProjection& projection,
                                       int snp_index = 0);

/// Convenience form: builds the projection from K. NaN genotypes are mean-imputed.
[[nodiscard]] TestResult mcp_score(const Eigen::VectorXd& x, const Phenotype& y, const KinshipMatrix& k,
                                   int snp_index = 0);

/// Per-SNP MCP tests sharing one projection and one rotated phenotype.
class McpScorer
{
public:
    McpScorer(const McpProjection& projection, const Eigen::VectorXd& y);

    /// `x_rot` is projection.rotate(x).
    [[nodiscard]] TestResult test_rotated(const Eigen::VectorXd& x_rot, int snp_index) const;
    [[nodiscard]] TestResult test(const Eigen::VectorXd& x, int snp_index) const;

private:
    const McpProjection& projection_;
    Eigen::VectorXd y_rot_;
    double y_form_;
    int n_;
};

}  // namespace kinward::assoc

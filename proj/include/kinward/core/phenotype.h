#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace kinward
{

enum class PhenotypeKind
{
    binary,
    quantitative,
};

/// Per-individual outcome. Binary phenotypes are coded 0 (control) / 1 (case).
class Phenotype
{
public:
    Phenotype(std::vector<double> values, PhenotypeKind kind, std::vector<std::string> ids = {});

    /// Binary when every value is 0 or 1, quantitative otherwise.
    static Phenotype infer(std::vector<double> values, std::vector<std::string> ids = {});

    [[nodiscard]] int size() const noexcept { return static_cast<int>(values_.size()); }
    [[nodiscard]] PhenotypeKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<std::string>& ids() const noexcept { return ids_; }
    [[nodiscard]] double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

    [[nodiscard]] Eigen::VectorXd vector() const;

    [[nodiscard]] int num_cases() const;
    [[nodiscard]] int num_controls() const;

    /// Throws unless binary with both classes present.
    void require_case_control() const;

private:
    std::vector<double> values_;
    PhenotypeKind kind_;
    std::vector<std::string> ids_;
};

}  // namespace kinward

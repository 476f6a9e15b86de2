#include "kinward/core/phenotype.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kinward
{

Phenotype::Phenotype(std::vector<double> values, PhenotypeKind kind, std::vector<std::string> ids)
    : values_(std::move(values)), kind_(kind), ids_(std::move(ids))
{
    if (!ids_.empty() && ids_.size() != values_.size())
    {
        throw std::invalid_argument("phenotype ids and values differ in length");
    }
    for (double v : values_)
    {
        if (!std::isfinite(v))
        {
            throw std::invalid_argument("phenotype values must be finite");
        }
        if (kind_ == PhenotypeKind::binary && v != 0.0 && v != 1.0)
        {
            throw std::invalid_argument("binary phenotype values must be 0 or 1");
        }
    }
}

Phenotype Phenotype::infer(std::vector<double> values, std::vector<std::string> ids)
{
    const bool binary = std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0 || v == 1.0; });
    return {std::move(values), binary ? PhenotypeKind::binary : PhenotypeKind::quantitative, std::move(ids)};
}

Eigen::VectorXd Phenotype::vector() const
{
    return Eigen::Map<const Eigen::VectorXd>(values_.data(), static_cast<Eigen::Index>(values_.size()));
}

int Phenotype::num_cases() const
{
    return static_cast<int>(std::count(values_.begin(), values_.end(), 1.0));
}

int Phenotype::num_controls() const
{
    return static_cast<int>(std::count(values_.begin(), values_.end(), 0.0));
}

void Phenotype::require_case_control() const
{
    if (kind_ != PhenotypeKind::binary)
    {
        throw std::invalid_argument("case-control test needs a binary phenotype");
    }
    if (num_cases() == 0 || num_controls() == 0)
    {
        throw std::invalid_argument("case-control test needs at least one case and one control");
    }
}

}  // namespace kinward

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace kinward::sim
{

enum class Design
{
    population,  ///< finite island population, then case/control quotas
    admixture,   ///< one unadmixed island plus individuals admixed between two others
};

/// Quotas for the population design. A single entry is a pooled quota over
/// all islands; otherwise one entry per island.
struct PopulationPlan
{
    int population_size = 6000;
    std::vector<int> cases{1000};
    std::vector<int> controls{1000};
};

/// Case probability of an admixed individual is intercept + slope * a_i,
/// a_i ~ Uniform(0, 1) being the ancestry share from `source_a`.
struct AdmixturePlan
{
    int anchor_island = 0;
    int anchor_cases = 100;
    int anchor_controls = 200;
    int admixed = 700;
    int source_a = 1;
    int source_b = 2;
    double case_intercept = 0.3;
    double case_slope = 0.5;
};

struct SimScenario
{
    Design design = Design::population;
    int islands = 3;
    double fst = 0.1;
    int snps = 10000;
    double maf_min = 0.05;
    double maf_max = 0.5;
    int causal = 20;
    double odds_ratio = 1.18;
    double prevalence = 0.18;
    PopulationPlan population;
    AdmixturePlan admixture;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
    [[nodiscard]] int sample_size() const;

    /// Three islands, F = 0.1, 1000 cases and 1000 controls from 6000.
    static SimScenario unbiased();
    /// As unbiased(), with controls 50 / 50 / 900 across the islands.
    static SimScenario ascertained();
    /// Three islands, F = 0.01, 2000 null SNPs; 300 from island 1 and 700 admixed.
    static SimScenario admixed();
};

/// Flat "key = value" text; '#' starts a comment. Unknown keys are errors.
[[nodiscard]] SimScenario read_scenario(std::istream& in);
[[nodiscard]] SimScenario read_scenario(const std::filesystem::path& path);
void write_scenario(std::ostream& out, const SimScenario& sc);

}  // namespace kinward::sim

#include "kinward/sim/simulator.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kinward/core/error.h"
#include "kinward/core/io.h"

namespace kinward::sim
{

namespace
{

double logistic(double t)
{
    return 1.0 / (1.0 + std::exp(-t));
}

double logit(double p)
{
    return std::log(p / (1.0 - p));
}

double uniform(Rng& rng)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double draw_beta(double a, double b, Rng& rng)
{
    const double x = std::gamma_distribution<double>(a, 1.0)(rng);
    const double y = std::gamma_distribution<double>(b, 1.0)(rng);
    return x / (x + y);
}

std::uint8_t draw_count(double p, Rng& rng)
{
    return static_cast<std::uint8_t>((uniform(rng) < p) + (uniform(rng) < p));
}

// Genetic scores sum_j beta_j x_j for `draws` individuals spread evenly over islands.
std::vector<double> genetic_scores(std::span<const double> log_odds,
                                   const std::vector<std::vector<double>>& island_freqs,
                                   Rng& rng,
                                   int draws)
{
    const auto islands = static_cast<int>(island_freqs.size());
    if (islands == 0)
    {
        throw std::invalid_argument("need at least one island");
    }
    for (const auto& f : island_freqs)
    {
        if (f.size() != log_odds.size())
        {
            throw std::invalid_argument("island frequencies do not match the causal effects");
        }
    }
    std::vector<double> scores(static_cast<std::size_t>(draws), 0.0);
    for (int k = 0; k < draws; ++k)
    {
        const auto& freq = island_freqs[static_cast<std::size_t>(k % islands)];
        double s = 0.0;
        for (std::size_t j = 0; j < log_odds.size(); ++j)
        {
            s += log_odds[j] * draw_count(freq[j], rng);
        }
        scores[static_cast<std::size_t>(k)] = s;
    }
    return scores;
}

double mean_risk(double intercept, const std::vector<double>& scores)
{
    double total = 0.0;
    for (double s : scores)
    {
        total += logistic(intercept + s);
    }
    return total / static_cast<double>(scores.size());
}

SimOutput simulate_population(const SimScenario& sc, Rng& rng)
{
    const int islands = sc.islands;
    const int snps = sc.snps;

    std::vector<double> ancestral(static_cast<std::size_t>(snps));
    std::vector<std::vector<double>> freq(static_cast<std::size_t>(snps));
    std::uniform_real_distribution<double> maf(sc.maf_min, sc.maf_max);
    for (int l = 0; l < snps; ++l)
    {
        ancestral[static_cast<std::size_t>(l)] = maf(rng);
        freq[static_cast<std::size_t>(l)] =
            draw_subpop_frequencies(ancestral[static_cast<std::size_t>(l)], sc.fst, islands, rng);
    }

    std::vector<int> all(static_cast<std::size_t>(snps));
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> causal;
    std::sample(all.begin(), all.end(), std::back_inserter(causal), sc.causal, rng);

    const auto nc = causal.size();
    const std::vector<double> log_odds(nc, std::log(sc.odds_ratio));
    std::vector<std::vector<double>> causal_freqs(static_cast<std::size_t>(islands), std::vector<double>(nc));
    for (int s = 0; s < islands; ++s)
    {
        for (std::size_t j = 0; j < nc; ++j)
        {
            causal_freqs[static_cast<std::size_t>(s)][j] =
                freq[static_cast<std::size_t>(causal[j])][static_cast<std::size_t>(s)];
        }
    }
    const double intercept = calibrate_intercept(log_odds, causal_freqs, sc.prevalence, rng);

    const int pop = sc.population.population_size;
    const int per_island = pop / islands;
    auto island_of = [per_island](int i) { return i / per_island; };

    const auto& plan = sc.population;
    std::vector<std::uint8_t> pop_causal(static_cast<std::size_t>(pop) * nc);
    std::vector<int> chosen;
    std::vector<double> status;
    int attempt = 0;
    for (attempt = 1; attempt <= kMaxAttempts; ++attempt)
    {
        // Case and control pools, per island.
        std::vector<std::vector<int>> case_pool(static_cast<std::size_t>(islands));
        std::vector<std::vector<int>> control_pool(static_cast<std::size_t>(islands));
        for (int i = 0; i < pop; ++i)
        {
            const int s = island_of(i);
            double eta = intercept;
            for (std::size_t j = 0; j < nc; ++j)
            {
                const auto x = draw_count(causal_freqs[static_cast<std::size_t>(s)][j], rng);
                pop_causal[static_cast<std::size_t>(i) * nc + j] = x;
                eta += log_odds[j] * x;
            }
            auto& pool = uniform(rng) < logistic(eta) ? case_pool : control_pool;
            pool[static_cast<std::size_t>(s)].push_back(i);
        }

        auto draw_quota = [&](const std::vector<std::vector<int>>& pools, const std::vector<int>& quota,
                              std::vector<int>& picked) -> bool
        {
            if (quota.size() == 1)
            {
                std::vector<int> merged;
                for (const auto& p : pools)
                {
                    merged.insert(merged.end(), p.begin(), p.end());
                }
                if (static_cast<int>(merged.size()) < quota[0])
                {
                    return false;
                }
                std::sample(merged.begin(), merged.end(), std::back_inserter(picked), quota[0], rng);
                return true;
            }
            for (int s = 0; s < islands; ++s)
            {
                const auto& p = pools[static_cast<std::size_t>(s)];
                const int q = quota[static_cast<std::size_t>(s)];
                if (static_cast<int>(p.size()) < q)
                {
                    return false;
                }
                std::sample(p.begin(), p.end(), std::back_inserter(picked), q, rng);
            }
            return true;
        };

        std::vector<int> cases;
        std::vector<int> controls;
        if (!draw_quota(case_pool, plan.cases, cases) || !draw_quota(control_pool, plan.controls, controls))
        {
            continue;
        }
        chosen.clear();
        status.clear();
        std::vector<std::pair<int, double>> members;
        for (int i : cases)
        {
            members.emplace_back(i, 1.0);
        }
        for (int i : controls)
        {
            members.emplace_back(i, 0.0);
        }
        std::sort(members.begin(), members.end());
        for (const auto& [i, y] : members)
        {
            chosen.push_back(i);
            status.push_back(y);
        }
        break;
    }
    if (attempt > kMaxAttempts)
    {
        throw Error("case/control quotas could not be met in " + std::to_string(kMaxAttempts) + " populations");
    }

    const int n = static_cast<int>(chosen.size());
    std::vector<std::uint8_t> counts(static_cast<std::size_t>(n) * static_cast<std::size_t>(snps));
    std::vector<int> causal_slot(static_cast<std::size_t>(snps), -1);
    for (std::size_t j = 0; j < nc; ++j)
    {
        causal_slot[static_cast<std::size_t>(causal[j])] = static_cast<int>(j);
    }
    for (int l = 0; l < snps; ++l)
    {
        auto* col = counts.data() + static_cast<std::size_t>(l) * static_cast<std::size_t>(n);
        const int slot = causal_slot[static_cast<std::size_t>(l)];
        for (int k = 0; k < n; ++k)
        {
            const int i = chosen[static_cast<std::size_t>(k)];
            if (slot >= 0)
            {
                col[k] = pop_causal[static_cast<std::size_t>(i) * nc + static_cast<std::size_t>(slot)];
            }
            else
            {
                col[k] = draw_count(freq[static_cast<std::size_t>(l)][static_cast<std::size_t>(island_of(i))], rng);
            }
        }
    }

    Eigen::MatrixXd ancestry = Eigen::MatrixXd::Zero(n, islands);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
    {
        const int s = island_of(chosen[static_cast<std::size_t>(k)]);
        labels[static_cast<std::size_t>(k)] = s;
        ancestry(k, s) = 1.0;
    }

    SimOutput out{GenotypeMatrix(n, snps, std::move(counts)),
                  Phenotype(status, PhenotypeKind::binary),
                  true_kinship(ancestry, sc.fst),
                  causal,
                  std::move(labels),
                  std::move(ancestry),
                  std::move(ancestral),
                  intercept,
                  attempt};
    return out;
}

SimOutput simulate_admixture(const SimScenario& sc, Rng& rng)
{
    const auto& plan = sc.admixture;
    const int islands = sc.islands;
    const int snps = sc.snps;
    const int anchored = plan.anchor_controls + plan.anchor_cases;
    const int n = anchored + plan.admixed;

    std::vector<double> status(static_cast<std::size_t>(n), 0.0);
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    std::vector<double> share(static_cast<std::size_t>(n), 0.0);
    Eigen::MatrixXd ancestry = Eigen::MatrixXd::Zero(n, islands);
    for (int i = 0; i < anchored; ++i)
    {
        status[static_cast<std::size_t>(i)] = i >= plan.anchor_controls ? 1.0 : 0.0;
        labels[static_cast<std::size_t>(i)] = plan.anchor_island;
        ancestry(i, plan.anchor_island) = 1.0;
    }
    for (int i = anchored; i < n; ++i)
    {
        const double a = uniform(rng);
        share[static_cast<std::size_t>(i)] = a;
        ancestry(i, plan.source_a) = a;
        ancestry(i, plan.source_b) = 1.0 - a;
        status[static_cast<std::size_t>(i)] = uniform(rng) < plan.case_intercept + plan.case_slope * a ? 1.0 : 0.0;
    }

    std::vector<double> ancestral(static_cast<std::size_t>(snps));
    std::vector<std::uint8_t> counts(static_cast<std::size_t>(n) * static_cast<std::size_t>(snps));
    std::uniform_real_distribution<double> maf(sc.maf_min, sc.maf_max);
    for (int l = 0; l < snps; ++l)
    {
        const double p = maf(rng);
        ancestral[static_cast<std::size_t>(l)] = p;
        const auto f = draw_subpop_frequencies(p, sc.fst, islands, rng);
        auto* col = counts.data() + static_cast<std::size_t>(l) * static_cast<std::size_t>(n);
        for (int i = 0; i < n; ++i)
        {
            if (i < anchored)
            {
                col[i] = draw_count(f[static_cast<std::size_t>(plan.anchor_island)], rng);
                continue;
            }
            // Each allele copy picks its source island independently.
            int x = 0;
            for (int copy = 0; copy < 2; ++copy)
            {
                const int s = uniform(rng) < share[static_cast<std::size_t>(i)] ? plan.source_a : plan.source_b;
                x += uniform(rng) < f[static_cast<std::size_t>(s)];
            }
            col[i] = static_cast<std::uint8_t>(x);
        }
    }

    SimOutput out{GenotypeMatrix(n, snps, std::move(counts)),
                  Phenotype(status, PhenotypeKind::binary),
                  true_kinship(ancestry, sc.fst),
                  {},
                  std::move(labels),
                  std::move(ancestry),
                  std::move(ancestral),
                  0.0,
                  1};
    return out;
}

}  // namespace

std::vector<double> draw_subpop_frequencies(double p, double fst, int islands, Rng& rng)
{
    if (!(p > 0.0 && p < 1.0))
    {
        throw std::invalid_argument("ancestral frequency must lie in (0, 1)");
    }
    if (!(fst >= 0.0 && fst < 1.0))
    {
        throw std::invalid_argument("F must lie in [0, 1)");
    }
    if (islands < 1)
    {
        throw std::invalid_argument("need at least one island");
    }
    std::vector<double> out(static_cast<std::size_t>(islands), p);
    if (fst == 0.0)
    {
        return out;
    }
    const double scale = (1.0 - fst) / fst;
    for (auto& f : out)
    {
        f = draw_beta(scale * p, scale * (1.0 - p), rng);
    }
    return out;
}

double calibrate_intercept(std::span<const double> log_odds,
                           const std::vector<std::vector<double>>& island_freqs,
                           double prevalence,
                           Rng& rng,
                           int draws)
{
    if (!(prevalence > 0.0 && prevalence < 1.0))
    {
        throw std::invalid_argument("prevalence must lie in (0, 1)");
    }
    if (draws < 1)
    {
        throw std::invalid_argument("need at least one calibration draw");
    }
    const double base = logit(prevalence);
    if (std::all_of(log_odds.begin(), log_odds.end(), [](double b) { return b == 0.0; }))
    {
        return base;
    }
    const auto scores = genetic_scores(log_odds, island_freqs, rng, draws);
    double spread = 1.0;
    for (double b : log_odds)
    {
        spread += 2.0 * std::abs(b);
    }
    double lo = base - spread;
    double hi = base + spread;
    if (!(mean_risk(lo, scores) <= prevalence && mean_risk(hi, scores) >= prevalence))
    {
        throw NumericalError("intercept calibration failed to bracket the prevalence");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (mean_risk(mid, scores) < prevalence ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double realized_prevalence(double intercept,
                           std::span<const double> log_odds,
                           const std::vector<std::vector<double>>& island_freqs,
                           Rng& rng,
                           int draws)
{
    const auto scores = genetic_scores(log_odds, island_freqs, rng, draws);
    int cases = 0;
    for (double s : scores)
    {
        cases += uniform(rng) < logistic(intercept + s);
    }
    return static_cast<double>(cases) / draws;
}

KinshipMatrix true_kinship(const Eigen::MatrixXd& ancestry, double fst)
{
    if (ancestry.rows() < 1)
    {
        throw std::invalid_argument("empty ancestry matrix");
    }
    Eigen::MatrixXd k = fst * (ancestry * ancestry.transpose());
    for (Eigen::Index i = 0; i < k.rows(); ++i)
    {
        k(i, i) = 0.5 * (1.0 + fst * ancestry.row(i).squaredNorm());
    }
    return KinshipMatrix(std::move(k));
}

std::vector<std::uint8_t> SimOutput::causal_mask() const
{
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(genotypes.num_snps()), 0);
    for (int l : causal)
    {
        mask[static_cast<std::size_t>(l)] = 1;
    }
    return mask;
}

SimOutput simulate_panel(const SimScenario& sc, Rng& rng)
{
    sc.validate();
    return sc.design == Design::population ? simulate_population(sc, rng) : simulate_admixture(sc, rng);
}

SimOutput simulate_replicate(const SimScenario& sc, int replicate)
{
    if (replicate < 0)
    {
        throw std::invalid_argument("replicate index must be non-negative");
    }
    Rng rng(sc.seed + static_cast<std::uint64_t>(replicate));
    return simulate_panel(sc, rng);
}

void write_replicate(const std::filesystem::path& dir, int replicate, const SimOutput& out)
{
    std::filesystem::create_directories(dir);
    const auto stem = "rep" + std::to_string(replicate) + "_";
    io::write_genotypes(dir / (stem + "genotypes.txt"), out.genotypes);
    io::write_phenotypes(dir / (stem + "phenotypes.txt"), out.phenotype);
    io::write_matrix(dir / (stem + "kinship.tsv"), out.true_k);

    std::ofstream truth(dir / (stem + "truth.tsv"));
    if (!truth)
    {
        throw Error("cannot write " + (dir / (stem + "truth.tsv")).string());
    }
    truth << "snp_index\tcausal\n";
    const auto mask = out.causal_mask();
    for (std::size_t l = 0; l < mask.size(); ++l)
    {
        truth << l << '\t' << static_cast<int>(mask[l]) << '\n';
    }
}

}  // namespace kinward::sim

// kinward: kinship estimation, structure-corrected association testing and
// simulation benchmarks from the command line.

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kinward/adjust/grammar.h"
#include "kinward/adjust/mixed_model.h"
#include "kinward/adjust/pc_adjust.h"
#include "kinward/adjust/principal_components.h"
#include "kinward/assoc/armitage.h"
#include "kinward/assoc/mcp.h"
#include "kinward/assoc/tdt.h"
#include "kinward/core/error.h"
#include "kinward/core/io.h"
#include "kinward/core/linalg.h"
#include "kinward/eval/compare.h"
#include "kinward/gc/genomic_control.h"
#include "kinward/kinship/kinship.h"
#include "kinward/sim/simulator.h"

namespace fs = std::filesystem;
using namespace kinward;

namespace
{

struct KinshipArgs
{
    fs::path genotypes;
    fs::path pedigree;
    fs::path founder_kinship;
    std::string method = "correlation";
    int freq_iters = 1;
    fs::path out;
};

struct AssocArgs
{
    fs::path genotypes;
    fs::path phenotypes;
    fs::path kinship;
    fs::path trios;
    std::string method = "armitage";
    std::string mm_mode = "lrt";
    bool mm_approximate = false;
    int num_pcs = adjust::kDefaultNumPcs;
    int freq_iters = 1;
    fs::path out;
};

struct GcArgs
{
    fs::path results;
    std::string method = "median";
    double q = 0.9;
    bool floor = false;
    fs::path out;
};

struct SimulateArgs
{
    fs::path scenario;
    int replicates = 1;
    fs::path out_dir;
};

struct EvalArgs
{
    fs::path scenario;
    std::string methods = "gc,pc,mm,mcp";
    int replicates = 1;
    std::string kinship = "true";
    int num_pcs = adjust::kDefaultNumPcs;
    bool mm_approximate = false;
    int threads = 0;
    fs::path out_dir;
};

int run_kinship(const KinshipArgs& a)
{
    std::optional<KinshipMatrix> k;
    if (a.method == "pedigree")
    {
        if (a.pedigree.empty())
        {
            throw Error("--pedigree is required for the pedigree method");
        }
        const auto ped = io::read_pedigree(a.pedigree);
        std::optional<Eigen::MatrixXd> founders;
        if (!a.founder_kinship.empty())
        {
            founders = io::read_matrix(a.founder_kinship).matrix();
        }
        k = kinship::pedigree_kinship(ped, founders);
    }
    else
    {
        if (a.genotypes.empty())
        {
            throw Error("--genotypes is required for marker-based kinship");
        }
        const auto g = io::read_genotypes(a.genotypes);
        if (a.method == "ibs")
        {
            k = kinship::kinship_ibs(g);
        }
        else
        {
            const auto refined = kinship::estimate_kinship(g, a.freq_iters);
            if (a.freq_iters > 0 && !refined.converged)
            {
                std::cerr << "note: allele frequencies still moving after " << refined.iterations << " rounds\n";
            }
            k = refined.kinship;
        }
    }
    io::write_matrix(a.out, *k);
    return 0;
}

std::vector<TestResult> run_tdt(const GenotypeMatrix& g, const Phenotype& y, const fs::path& trio_path)
{
    if (y.ids().empty())
    {
        throw Error("the phenotype file must carry individual ids for TDT");
    }
    std::unordered_map<std::string, int> row;
    for (int i = 0; i < y.size(); ++i)
    {
        row.emplace(y.ids()[static_cast<std::size_t>(i)], i);
    }
    auto lookup = [&](const std::string& id)
    {
        const auto it = row.find(id);
        if (it == row.end())
        {
            throw Error("trio member '" + id + "' is not in the phenotype file");
        }
        return it->second;
    };

    std::vector<std::array<int, 3>> trios;
    for (const auto& ids : io::read_trios(trio_path))
    {
        const int child = lookup(ids[2]);
        // Only affected children carry transmission information.
        if (y.kind() == PhenotypeKind::binary && y[child] != 1.0)
        {
            continue;
        }
        trios.push_back({lookup(ids[0]), lookup(ids[1]), child});
    }
    if (trios.empty())
    {
        throw Error("no trios with an affected child");
    }

    std::vector<TestResult> results;
    long skipped = 0;
    for (int l = 0; l < g.num_snps(); ++l)
    {
        std::vector<assoc::Trio> usable;
        for (const auto& [f, m, c] : trios)
        {
            if (g.is_missing(f, l) || g.is_missing(m, l) || g.is_missing(c, l))
            {
                continue;
            }
            const assoc::Trio t{g.count(f, l), g.count(m, l), g.count(c, l)};
            try
            {
                (void)assoc::TrioSet({t});
                usable.push_back(t);
            }
            catch (const std::invalid_argument&)
            {
                ++skipped;
            }
        }
        const auto counts = assoc::count_transmissions(assoc::TrioSet(std::move(usable)));
        if (counts.ref + counts.alt == 0)
        {
            results.push_back(TestResult::not_available(l, Method::tdt));
            continue;
        }
        results.push_back(assoc::tdt(counts, l).result);
    }
    if (skipped > 0)
    {
        std::cerr << "warning: skipped " << skipped << " Mendelian-inconsistent trio genotypes\n";
    }
    return results;
}

int run_assoc(const AssocArgs& a)
{
    const auto g = io::read_genotypes(a.genotypes);
    const auto y = io::read_phenotypes(a.phenotypes);
    if (y.size() != g.num_individuals())
    {
        throw Error("phenotype file has " + std::to_string(y.size()) + " rows but the genotypes have " +
                    std::to_string(g.num_individuals()) + " individuals");
    }
    const int snps = g.num_snps();
    std::vector<TestResult> results;
    results.reserve(static_cast<std::size_t>(snps));

    if (a.method == "armitage")
    {
        for (int l = 0; l < snps; ++l)
        {
            results.push_back(assoc::armitage(g.snp_dosages(l), y, l));
        }
        io::write_results(a.out, results);
        return 0;
    }
    if (a.method == "tdt")
    {
        if (a.trios.empty())
        {
            throw Error("--trios is required for TDT");
        }
        io::write_results(a.out, run_tdt(g, y, a.trios));
        return 0;
    }

    const KinshipMatrix k = a.kinship.empty() ? kinship::estimate_kinship(g, a.freq_iters).kinship
                                              : io::read_matrix(a.kinship);
    if (k.size() != g.num_individuals())
    {
        throw Error("kinship matrix does not match the genotypes");
    }
    const auto eig = symmetric_eigen(k.matrix());
    const Eigen::VectorXd yv = y.vector();
    auto dosages = [&](int l)
    {
        Eigen::VectorXd x = g.snp_dosages(l);
        impute_mean(x);
        return x;
    };

    if (a.method == "pc")
    {
        const auto pcs = adjust::principal_components(eig, a.num_pcs);
        const adjust::PcAdjuster adjuster(pcs.vectors, yv);
        for (int l = 0; l < snps; ++l)
        {
            results.push_back(adjuster.test(dosages(l), l));
        }
    }
    else if (a.method == "mcp")
    {
        const assoc::McpProjection projection(eig);
        if (projection.ridged())
        {
            std::cerr << "note: kinship matrix is near-singular; a ridge of " << SpectralInverse::kRidge
                      << " was added\n";
        }
        const assoc::McpScorer scorer(projection, yv);
        for (int l = 0; l < snps; ++l)
        {
            results.push_back(scorer.test(dosages(l), l));
        }
    }
    else if (a.method == "mm" || a.method == "grammar")
    {
        adjust::MixedModelOptions options;
        options.approximate = a.mm_approximate;
        const adjust::MixedModel model(eig, yv, options);
        std::cerr << "null fit: h2=" << model.null_fit().h2 << " sigma2=" << model.null_fit().sigma2 << '\n';
        if (a.method == "mm")
        {
            const auto mode = a.mm_mode == "score" ? adjust::MmMode::score : adjust::MmMode::lrt;
            for (int l = 0; l < snps; ++l)
            {
                results.push_back(model.test(dosages(l), mode, l));
            }
        }
        else
        {
            const adjust::Grammar grammar(model, yv);
            for (int l = 0; l < snps; ++l)
            {
                results.push_back(grammar.test(dosages(l), l));
            }
        }
    }
    io::write_results(a.out, results);
    return 0;
}

int run_gc(const GcArgs& a)
{
    const auto results = io::read_results(a.results);
    const auto stats = gc::statistics_of(results);
    gc::LambdaEstimate lambda;
    if (a.method == "median")
    {
        lambda = gc::lambda_median(stats, a.floor);
    }
    else if (a.method == "mean")
    {
        lambda = gc::lambda_mean(stats);
    }
    else
    {
        lambda = gc::lambda_trimmed(stats, a.q);
    }
    std::cout << "lambda\t" << io::format_double(lambda.lambda) << '\n';
    io::write_results(a.out, gc::gc_adjust(results, lambda));
    return 0;
}

int run_simulate(const SimulateArgs& a)
{
    const auto sc = sim::read_scenario(a.scenario);
    for (int r = 0; r < a.replicates; ++r)
    {
        sim::write_replicate(a.out_dir, r, sim::simulate_replicate(sc, r));
    }
    return 0;
}

int run_eval(const EvalArgs& a)
{
    const auto sc = sim::read_scenario(a.scenario);
    eval::CompareOptions options;
    options.methods = eval::parse_method_list(a.methods);
    options.replicates = a.replicates;
    options.kinship = a.kinship == "estimated" ? eval::KinshipSource::estimated : eval::KinshipSource::truth;
    options.num_pcs = a.num_pcs;
    options.mm.approximate = a.mm_approximate;
    options.threads = a.threads;
    options.progress = [](int done, int total) { std::cerr << "replicate " << done << "/" << total << '\n'; };
    const auto cmp = eval::compare_methods(sc, options);
    eval::write_comparison(a.out_dir, cmp);

    std::cout << "method\tlambda\tauc\ttype1_0.05\ttype1_0.001\n";
    for (const auto& s : cmp.summary)
    {
        std::cout << to_string(s.method) << '\t' << io::format_double(s.lambda) << '\t' << io::format_double(s.auc)
                  << '\t' << io::format_double(s.type1_05) << '\t' << io::format_double(s.type1_001) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"kinward: kinship, structure-corrected association tests and simulation benchmarks"};
    app.require_subcommand(1);

    KinshipArgs kin;
    auto* kin_cmd = app.add_subcommand("kinship", "Estimate a kinship matrix");
    kin_cmd->add_option("--genotypes", kin.genotypes, "Genotype file");
    kin_cmd->add_option("--pedigree", kin.pedigree, "Pedigree file (ID mother father)");
    kin_cmd->add_option("--founder-kinship", kin.founder_kinship, "Founder kinship matrix, in founder order");
    kin_cmd->add_option("--method", kin.method, "Estimator")
        ->check(CLI::IsMember({"correlation", "ibs", "pedigree"}));
    kin_cmd->add_option("--freq-iters", kin.freq_iters, "Allele-frequency refinement rounds")
        ->check(CLI::NonNegativeNumber);
    kin_cmd->add_option("--out", kin.out, "Output matrix")->required();

    AssocArgs as;
    auto* assoc_cmd = app.add_subcommand("assoc", "Per-SNP association tests");
    assoc_cmd->add_option("--genotypes", as.genotypes, "Genotype file")->required();
    assoc_cmd->add_option("--phenotypes", as.phenotypes, "Phenotype file, genotype row order")->required();
    assoc_cmd->add_option("--method", as.method, "Test")
        ->check(CLI::IsMember({"armitage", "tdt", "mcp", "pc", "mm", "grammar"}));
    assoc_cmd->add_option("--kinship", as.kinship, "Kinship matrix; estimated from the genotypes if absent");
    assoc_cmd->add_option("--trios", as.trios, "Trio file (father mother child)");
    assoc_cmd->add_option("--num-pcs", as.num_pcs, "PCs to adjust for")->check(CLI::PositiveNumber);
    assoc_cmd->add_option("--mm-mode", as.mm_mode, "Mixed-model test")->check(CLI::IsMember({"lrt", "score"}));
    assoc_cmd->add_flag("--mm-approximate", as.mm_approximate, "Reuse the null h2 under the alternative");
    assoc_cmd->add_option("--freq-iters", as.freq_iters, "Frequency refinement rounds for estimated kinship")
        ->check(CLI::NonNegativeNumber);
    assoc_cmd->add_option("--out", as.out, "Results TSV")->required();

    GcArgs gca;
    auto* gc_cmd = app.add_subcommand("gc", "Genomic control");
    gc_cmd->add_option("--results", gca.results, "Results TSV")->required();
    gc_cmd->add_option("--method", gca.method, "Lambda estimator")
        ->check(CLI::IsMember({"median", "mean", "trimmed"}));
    gc_cmd->add_option("--q", gca.q, "Trim fraction for the trimmed mean")->check(CLI::Range(0.0, 1.0));
    gc_cmd->add_flag("--floor", gca.floor, "Never deflate (median method)");
    gc_cmd->add_option("--out", gca.out, "Adjusted results TSV")->required();

    SimulateArgs sa;
    auto* sim_cmd = app.add_subcommand("simulate", "Simulate case-control panels");
    sim_cmd->add_option("--scenario", sa.scenario, "Scenario file (key = value)")->required();
    sim_cmd->add_option("--replicates", sa.replicates, "Number of replicates")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--out-dir", sa.out_dir, "Output directory")->required();

    EvalArgs ea;
    auto* eval_cmd = app.add_subcommand("eval", "Compare methods over simulated replicates");
    eval_cmd->add_option("--scenario", ea.scenario, "Scenario file (key = value)")->required();
    eval_cmd->add_option("--methods", ea.methods, "Comma-separated: armitage,gc,pc,mm,mm-score,mcp,grammar");
    eval_cmd->add_option("--replicates", ea.replicates, "Number of replicates")->check(CLI::PositiveNumber);
    eval_cmd->add_option("--kinship", ea.kinship, "Kinship used by pc/mm/mcp/grammar")
        ->check(CLI::IsMember({"true", "estimated"}));
    eval_cmd->add_option("--num-pcs", ea.num_pcs, "PCs to adjust for")->check(CLI::NonNegativeNumber);
    eval_cmd->add_flag("--mm-approximate", ea.mm_approximate, "Reuse the null h2 under the alternative");
    eval_cmd->add_option("--threads", ea.threads, "Replicates run in parallel; 0 uses every core")
        ->check(CLI::NonNegativeNumber);
    eval_cmd->add_option("--out-dir", ea.out_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*kin_cmd)
            return run_kinship(kin);
        if (*assoc_cmd)
            return run_assoc(as);
        if (*gc_cmd)
            return run_gc(gca);
        if (*sim_cmd)
            return run_simulate(sa);
        if (*eval_cmd)
            return run_eval(ea);
    }
    catch (const std::exception& e)
    {
        std::cerr << "kinward: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

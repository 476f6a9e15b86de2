#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string_view>
#include <vector>

#include "kinward/adjust/mixed_model.h"
#include "kinward/core/test_result.h"
#include "kinward/sim/scenario.h"

namespace kinward::eval
{

enum class KinshipSource
{
    truth,      ///< the generative K of the simulation
    estimated,  ///< correlation estimator from the simulated genotypes
};

struct CompareOptions
{
    std::vector<Method> methods{Method::gc, Method::pc, Method::mm_lrt, Method::mcp};
    int replicates = 1;
    int first_replicate = 0;
    KinshipSource kinship = KinshipSource::truth;
    int num_pcs = 10;
    int freq_iters = 0;  ///< frequency refinement rounds for estimated K
    adjust::MixedModelOptions mm{};
    /// Replicates run concurrently on this many threads; 0 uses the hardware
    /// concurrency. Results do not depend on it.
    int threads = 0;
    /// Called after each replicate with (replicates done, total), under a lock.
    std::function<void(int, int)> progress;
};

/// Per-SNP results of every requested method on one simulated study.
struct ReplicateResults
{
    int replicate = 0;
    std::vector<std::uint8_t> causal;
    std::map<Method, std::vector<TestResult>> results;
    double gc_lambda = 1.0;  ///< median lambda of the Armitage statistics
    bool ridged = false;     ///< K had to be ridged for MCP
};

struct MethodSummary
{
    Method method = Method::gc;
    double lambda = 1.0;     ///< median lambda over pooled null statistics
    double auc = 0.0;        ///< NaN without causal SNPs
    double type1_05 = 0.0;   ///< null rejection rate at 0.05
    double type1_001 = 0.0;  ///< null rejection rate at 0.001
    long null_tests = 0;
    long causal_tests = 0;
};

struct Comparison
{
    std::vector<MethodSummary> summary;
    std::map<Method, std::vector<TestResult>> pooled;
    std::vector<std::uint8_t> causal;  ///< aligned with every pooled vector
    std::vector<double> gc_lambdas;    ///< one per replicate
};

/// Simulate replicate r and run the requested methods on it. One
/// eigendecomposition of K serves PCs, MCP, the mixed model and GRAMMAR.
[[nodiscard]] ReplicateResults run_replicate(const sim::SimScenario& sc, int replicate, const CompareOptions& options);

/// Pool replicates in the order given and summarize each method.
[[nodiscard]] Comparison aggregate(const std::vector<ReplicateResults>& replicates, const std::vector<Method>& methods);

[[nodiscard]] Comparison compare_methods(const sim::SimScenario& sc, const CompareOptions& options);

/// qq_<method>.tsv, roc_<method>.tsv (when causal SNPs exist) and summary.tsv.
void write_comparison(const std::filesystem::path& dir, const Comparison& comparison);

/// Comma-separated method tags; "mm" maps to the mixed-model LRT.
[[nodiscard]] std::vector<Method> parse_method_list(std::string_view text);

}  // namespace kinward::eval

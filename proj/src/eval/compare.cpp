#include "kinward/eval/compare.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include "kinward/adjust/grammar.h"
#include "kinward/adjust/pc_adjust.h"
#include "kinward/assoc/armitage.h"
#include "kinward/assoc/mcp.h"
#include "kinward/core/error.h"
#include "kinward/core/io.h"
#include "kinward/core/linalg.h"
#include "kinward/eval/qq.h"
#include "kinward/eval/roc.h"
#include "kinward/gc/genomic_control.h"
#include "kinward/kinship/kinship.h"
#include "kinward/sim/simulator.h"

namespace kinward::eval
{

namespace
{

// SNPs rotated into the eigenbasis per block.
constexpr int kRotateBlock = 512;

bool wants(const std::vector<Method>& methods, Method m)
{
    return std::find(methods.begin(), methods.end(), m) != methods.end();
}

Eigen::MatrixXd dosage_block(const GenotypeMatrix& g, int start, int len)
{
    Eigen::MatrixXd x(g.num_individuals(), len);
    for (int c = 0; c < len; ++c)
    {
        Eigen::VectorXd col = g.snp_dosages(start + c);
        impute_mean(col);
        x.col(c) = col;
    }
    return x;
}

double rejection_rate(const std::vector<TestResult>& results,
                      const std::vector<std::uint8_t>& causal,
                      double alpha,
                      long* tests)
{
    long count = 0;
    long rejected = 0;
    for (std::size_t k = 0; k < results.size(); ++k)
    {
        if (causal[k] || !results[k].valid())
        {
            continue;
        }
        ++count;
        rejected += results[k].p_value < alpha;
    }
    if (tests != nullptr)
    {
        *tests = count;
    }
    return count > 0 ? static_cast<double>(rejected) / static_cast<double>(count)
                     : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

ReplicateResults run_replicate(const sim::SimScenario& sc, int replicate, const CompareOptions& options)
{
    const auto& methods = options.methods;
    if (methods.empty())
    {
        throw std::invalid_argument("no methods requested");
    }
    for (Method m : methods)
    {
        if (m == Method::tdt)
        {
            throw std::invalid_argument("TDT needs trios and cannot run on a case-control panel");
        }
    }
    const auto panel = sim::simulate_replicate(sc, replicate);
    const auto& g = panel.genotypes;
    const int n = g.num_individuals();
    const int snps = g.num_snps();
    const Eigen::VectorXd y = panel.phenotype.vector();

    ReplicateResults out;
    out.replicate = replicate;
    out.causal = panel.causal_mask();

    // Armitage is needed for GC whether or not it was requested itself.
    if (wants(methods, Method::armitage) || wants(methods, Method::gc))
    {
        std::vector<TestResult> arm;
        arm.reserve(static_cast<std::size_t>(snps));
        for (int l = 0; l < snps; ++l)
        {
            arm.push_back(assoc::armitage(g.snp_dosages(l), panel.phenotype, l));
        }
        const auto stats = gc::statistics_of(arm);
        const auto lambda = gc::lambda_median(stats);
        out.gc_lambda = lambda.lambda;
        if (wants(methods, Method::gc))
        {
            out.results[Method::gc] = gc::gc_adjust(arm, lambda);
        }
        if (wants(methods, Method::armitage))
        {
            out.results[Method::armitage] = std::move(arm);
        }
    }

    const bool need_pc = wants(methods, Method::pc);
    const bool need_mcp = wants(methods, Method::mcp);
    const bool need_mm = wants(methods, Method::mm_lrt) || wants(methods, Method::mm_score);
    const bool need_grammar = wants(methods, Method::grammar);
    if (!(need_pc || need_mcp || need_mm || need_grammar))
    {
        return out;
    }

    std::optional<KinshipMatrix> estimated;
    if (options.kinship == KinshipSource::estimated)
    {
        estimated = kinship::estimate_kinship(g, options.freq_iters).kinship;
    }
    const KinshipMatrix& k = estimated ? *estimated : panel.true_k;
    const auto eig = symmetric_eigen(k.matrix());

    std::optional<adjust::PcAdjuster> pc;
    if (need_pc)
    {
        if (options.num_pcs < 0 || options.num_pcs >= n - 2)
        {
            throw std::invalid_argument("number of PCs out of range for the sample size");
        }
        pc.emplace(eig.vectors.leftCols(options.num_pcs), y);
    }
    std::optional<assoc::McpProjection> projection;
    std::optional<assoc::McpScorer> mcp;
    if (need_mcp)
    {
        projection.emplace(eig);
        mcp.emplace(*projection, y);
        out.ridged = projection->ridged();
    }
    std::optional<adjust::MixedModel> model;
    std::optional<adjust::Grammar> grammar;
    if (need_mm || need_grammar)
    {
        model.emplace(eig, y, options.mm);
        if (need_grammar)
        {
            grammar.emplace(*model, y);
        }
    }

    auto reserve = [&](Method m)
    {
        if (wants(methods, m))
        {
            out.results[m].reserve(static_cast<std::size_t>(snps));
        }
    };
    for (Method m : {Method::pc, Method::mcp, Method::mm_lrt, Method::mm_score, Method::grammar})
    {
        reserve(m);
    }

    for (int start = 0; start < snps; start += kRotateBlock)
    {
        const int len = std::min(kRotateBlock, snps - start);
        const Eigen::MatrixXd x = dosage_block(g, start, len);
        Eigen::MatrixXd x_rot;
        if (need_mcp || need_mm)
        {
            x_rot.noalias() = eig.vectors.transpose() * x;
        }
        for (int c = 0; c < len; ++c)
        {
            const int l = start + c;
            if (pc)
            {
                out.results[Method::pc].push_back(pc->test(x.col(c), l));
            }
            if (mcp)
            {
                out.results[Method::mcp].push_back(mcp->test_rotated(x_rot.col(c), l));
            }
            if (model && wants(methods, Method::mm_lrt))
            {
                out.results[Method::mm_lrt].push_back(model->test_rotated(x_rot.col(c), adjust::MmMode::lrt, l));
            }
            if (model && wants(methods, Method::mm_score))
            {
                out.results[Method::mm_score].push_back(
                    model->test_rotated(x_rot.col(c), adjust::MmMode::score, l));
            }
            if (grammar)
            {
                out.results[Method::grammar].push_back(grammar->test(x.col(c), l));
            }
        }
    }
    return out;
}

Comparison aggregate(const std::vector<ReplicateResults>& replicates, const std::vector<Method>& methods)
{
    Comparison cmp;
    for (const auto& rep : replicates)
    {
        cmp.causal.insert(cmp.causal.end(), rep.causal.begin(), rep.causal.end());
        cmp.gc_lambdas.push_back(rep.gc_lambda);
        for (Method m : methods)
        {
            const auto it = rep.results.find(m);
            if (it == rep.results.end())
            {
                throw std::invalid_argument("replicate lacks results for " + std::string(to_string(m)));
            }
            auto& pooled = cmp.pooled[m];
            pooled.insert(pooled.end(), it->second.begin(), it->second.end());
        }
    }

    const bool any_causal = std::any_of(cmp.causal.begin(), cmp.causal.end(), [](auto c) { return c != 0; });
    for (Method m : methods)
    {
        const auto& pooled = cmp.pooled[m];
        MethodSummary s;
        s.method = m;
        std::vector<double> null_stats;
        for (std::size_t k = 0; k < pooled.size(); ++k)
        {
            if (!pooled[k].valid())
            {
                continue;
            }
            if (cmp.causal[k])
            {
                ++s.causal_tests;
            }
            else
            {
                null_stats.push_back(pooled[k].statistic);
            }
        }
        s.lambda = null_stats.empty() ? std::numeric_limits<double>::quiet_NaN()
                                      : gc::lambda_median(null_stats).lambda;
        s.type1_05 = rejection_rate(pooled, cmp.causal, 0.05, &s.null_tests);
        s.type1_001 = rejection_rate(pooled, cmp.causal, 0.001, nullptr);
        s.auc = any_causal ? roc(pooled, cmp.causal).auc : std::numeric_limits<double>::quiet_NaN();
        cmp.summary.push_back(s);
    }
    return cmp;
}

Comparison compare_methods(const sim::SimScenario& sc, const CompareOptions& options)
{
    sc.validate();
    if (options.replicates < 1)
    {
        throw std::invalid_argument("need at least one replicate");
    }
    const int total = options.replicates;
    int workers = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, total);

    std::vector<std::optional<ReplicateResults>> slots(static_cast<std::size_t>(total));
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex mutex;
    int done = 0;
    auto work = [&]
    {
        for (int r = next++; r < total && !failed; r = next++)
        {
            try
            {
                slots[static_cast<std::size_t>(r)] = run_replicate(sc, options.first_replicate + r, options);
            }
            catch (...)
            {
                const std::lock_guard lock(mutex);
                if (!error)
                {
                    error = std::current_exception();
                }
                failed = true;
                return;
            }
            const std::lock_guard lock(mutex);
            ++done;
            if (options.progress)
            {
                options.progress(done, total);
            }
        }
    };
    if (workers == 1)
    {
        work();
    }
    else
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w)
        {
            pool.emplace_back(work);
        }
    }
    if (error)
    {
        std::rethrow_exception(error);
    }

    // Reduce in replicate order.
    std::vector<ReplicateResults> reps;
    reps.reserve(slots.size());
    for (auto& slot : slots)
    {
        reps.push_back(std::move(*slot));
    }
    return aggregate(reps, options.methods);
}

void write_comparison(const std::filesystem::path& dir, const Comparison& comparison)
{
    std::filesystem::create_directories(dir);
    const bool any_causal =
        std::any_of(comparison.causal.begin(), comparison.causal.end(), [](auto c) { return c != 0; });
    for (const auto& [method, pooled] : comparison.pooled)
    {
        const std::string tag(to_string(method));
        write_qq(dir / ("qq_" + tag + ".tsv"), qq(pooled, comparison.causal));
        if (any_causal)
        {
            write_roc(dir / ("roc_" + tag + ".tsv"), roc(pooled, comparison.causal));
        }
    }
    std::ofstream out(dir / "summary.tsv");
    if (!out)
    {
        throw Error("cannot write " + (dir / "summary.tsv").string());
    }
    out << "method\tlambda\tauc\ttype1_0.05\ttype1_0.001\tnull_tests\tcausal_tests\n";
    for (const auto& s : comparison.summary)
    {
        out << to_string(s.method) << '\t' << io::format_double(s.lambda) << '\t' << io::format_double(s.auc) << '\t'
            << io::format_double(s.type1_05) << '\t' << io::format_double(s.type1_001) << '\t' << s.null_tests
            << '\t' << s.causal_tests << '\n';
    }
}

std::vector<Method> parse_method_list(std::string_view text)
{
    std::vector<Method> out;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const auto comma = text.find(',', pos);
        const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (item == "mm")
        {
            out.push_back(Method::mm_lrt);
        }
        else if (const auto m = parse_method(item))
        {
            out.push_back(*m);
        }
        else
        {
            throw std::invalid_argument("unknown method '" + std::string(item) + "'");
        }
        if (comma == std::string_view::npos)
        {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

}  // namespace kinward::eval

#include "kinward/eval/roc.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "kinward/core/error.h"
#include "kinward/core/io.h"

namespace kinward::eval
{

RocCurve roc(std::span<const TestResult> results, std::span<const std::uint8_t> causal)
{
    if (causal.size() != results.size())
    {
        throw std::invalid_argument("truth labels do not match the results");
    }
    constexpr double kLowest = -std::numeric_limits<double>::infinity();
    std::vector<double> score(results.size());
    double positives = 0.0;
    for (std::size_t k = 0; k < results.size(); ++k)
    {
        score[k] = results[k].valid() ? results[k].statistic : kLowest;
        positives += causal[k] != 0;
    }
    const double negatives = static_cast<double>(results.size()) - positives;
    if (positives == 0.0 || negatives == 0.0)
    {
        throw std::invalid_argument("ROC needs at least one causal and one null SNP");
    }

    std::vector<std::size_t> order(results.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

    RocCurve curve;
    curve.thresholds.push_back(std::numeric_limits<double>::infinity());
    curve.tpr.push_back(0.0);
    curve.fpr.push_back(0.0);
    double tp = 0.0;
    double fp = 0.0;
    for (std::size_t k = 0; k < order.size();)
    {
        const double t = score[order[k]];
        while (k < order.size() && score[order[k]] == t)
        {
            (causal[order[k]] ? tp : fp) += 1.0;
            ++k;
        }
        const double tpr = tp / positives;
        const double fpr = fp / negatives;
        curve.auc += 0.5 * (fpr - curve.fpr.back()) * (tpr + curve.tpr.back());
        curve.thresholds.push_back(t);
        curve.tpr.push_back(tpr);
        curve.fpr.push_back(fpr);
    }
    return curve;
}

void write_roc(const std::filesystem::path& path, const RocCurve& curve)
{
    std::ofstream out(path);
    if (!out)
    {
        throw Error("cannot write " + path.string());
    }
    out << "threshold\tfpr\ttpr\n";
    for (std::size_t k = 0; k < curve.tpr.size(); ++k)
    {
        const double t = curve.thresholds[k];
        out << (std::isinf(t) ? (t > 0 ? "inf" : "-inf") : io::format_double(t)) << '\t'
            << io::format_double(curve.fpr[k]) << '\t' << io::format_double(curve.tpr[k]) << '\n';
    }
}

}  // namespace kinward::eval

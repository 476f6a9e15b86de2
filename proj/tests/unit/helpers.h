#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "kinward/core/genotype_matrix.h"

namespace kinward::testing
{

/// Individuals as rows; -1 marks a missing genotype.
inline GenotypeMatrix from_rows(const std::vector<std::vector<int>>& rows)
{
    const int n = static_cast<int>(rows.size());
    const int snps = static_cast<int>(rows.front().size());
    std::vector<std::uint8_t> counts(static_cast<std::size_t>(n * snps));
    std::vector<std::uint8_t> missing(static_cast<std::size_t>(n * snps));
    for (int i = 0; i < n; ++i)
    {
        for (int l = 0; l < snps; ++l)
        {
            const int v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
            const auto idx = static_cast<std::size_t>(l * n + i);
            missing[idx] = v < 0;
            counts[idx] = static_cast<std::uint8_t>(v < 0 ? 0 : v);
        }
    }
    return GenotypeMatrix(n, snps, std::move(counts), std::move(missing));
}

/// Independent Binomial(2, p_l) genotypes.
inline GenotypeMatrix binomial_panel(int n, const std::vector<double>& p, std::mt19937_64& rng)
{
    const int snps = static_cast<int>(p.size());
    std::vector<std::uint8_t> counts(static_cast<std::size_t>(n) * static_cast<std::size_t>(snps));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int l = 0; l < snps; ++l)
    {
        for (int i = 0; i < n; ++i)
        {
            counts[static_cast<std::size_t>(l) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
                static_cast<std::uint8_t>((u(rng) < p[static_cast<std::size_t>(l)]) +
                                          (u(rng) < p[static_cast<std::size_t>(l)]));
        }
    }
    return GenotypeMatrix(n, snps, std::move(counts));
}

inline std::vector<double> uniform_frequencies(int snps, double lo, double hi, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> p(static_cast<std::size_t>(snps));
    for (auto& v : p)
    {
        v = u(rng);
    }
    return p;
}

/// Random symmetric positive definite matrix with eigenvalues in [lo, hi].
inline Eigen::MatrixXd random_spd(int n, double lo, double hi, std::mt19937_64& rng)
{
    std::normal_distribution<double> z;
    Eigen::MatrixXd a(n, n);
    for (int j = 0; j < n; ++j)
    {
        for (int i = 0; i < n; ++i)
        {
            a(i, j) = z(rng);
        }
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    const Eigen::MatrixXd q = qr.householderQ();
    std::uniform_real_distribution<double> u(lo, hi);
    Eigen::VectorXd values(n);
    for (int i = 0; i < n; ++i)
    {
        values[i] = u(rng);
    }
    Eigen::MatrixXd m = q * values.asDiagonal() * q.transpose();
    return 0.5 * (m + m.transpose());
}

}  // namespace kinward::testing

#pragma once

#include <cstdint>

#include "itercur/pinv.hpp"

namespace itercur {

/// Full singular spectrum of a dense matrix plus its tail energies
/// t_r = sqrt(sum_{i > r} sigma_i^2), the optimal rank-r Frobenius error.
struct SpectrumSummary {
    Eigen::VectorXd singular_values;  // nonincreasing
    Eigen::VectorXd tail_energies;    // t_0 .. t_min(m,n)

    double tail_energy(Index r) const;
};

SpectrumSummary compute_spectrum(const MatrixHandle& A);

/// ||A - A_r||_F for the optimal rank-r approximation; 0 when r exceeds
/// min(m, n).
double truncated_svd_error(const MatrixHandle& A, Index r);

/// One-shot fixed-rank CUR: draw a fresh ceil(1.1 r)-row Gaussian sketch,
/// pick r columns by LUPP on the sketched matrix, r rows by LUPP on the
/// gathered columns, and factor the cross block.
CurFactors slupp_cur(const MatrixHandle& A, Index r, std::uint64_t seed);

/// ||A - A X^+ X||_F with X = G A for a b-row Gaussian G.
double rangefinder_error(const MatrixHandle& A, Index b, std::uint64_t seed);

/// A - C * core * R, fully materialized. The reference evaluator for every
/// residual identity in the test suites.
Eigen::MatrixXd naive_cur_residual(const MatrixHandle& A, const CurFactors& cur);

}  // namespace itercur

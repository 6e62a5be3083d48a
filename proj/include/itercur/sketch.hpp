#pragma once

#include <cstdint>

#include "itercur/pinv.hpp"

namespace itercur {

/// Floor(1.1 * b) in exact integer arithmetic.
inline Index sketch_rows_for_block(Index b) { return (11 * b) / 10; }

/// The fixed embedding and the sketched-residual bookkeeping that one
/// adaptive run recycles across iterations.
///
/// The embedding has unit-variance entries rather than variance 1/c: the
/// stopping statistic is the ratio ||G(A-CUR)||_F / ||GA||_F, so the scale
/// cancels. Anything comparing against the variance-1/c convention must
/// rescale norms by 1/sqrt(c).
struct SketchState {
    Eigen::MatrixXd embedding;       // G, c x m
    Eigen::MatrixXd sketched_input;  // G*A, c x n, computed once
    Eigen::MatrixXd col_residual;    // current sketched residual, c x n
    double ga_norm = 0.0;
    std::uint64_t seed = 0;
    Index c = 0;
    Index b = 0;
};

/// Draw the embedding, cache G*A, and initialize the residual to it.
/// Identical (seed, b, shape) inputs produce a bitwise-identical embedding.
SketchState make_sketch(std::uint64_t seed, Index b, const MatrixHandle& A);

/// Recompute the sketched residual from the cached G*A (the embedding is
/// never re-applied to A) and return rho = ||S_col||_F / ||G*A||_F.
double downdate_col_residual(SketchState& state, const CurFactors& cur);

/// S_row = A(:, J_new) - C * core * R(:, J_new), dense m x |J_new|.
/// J_new must be disjoint from the columns already in `cur`.
Eigen::MatrixXd row_residual(const MatrixHandle& A, const CurFactors& cur,
                             std::span<const Index> new_cols);

}  // namespace itercur

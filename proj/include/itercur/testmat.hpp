#pragma once

#include <cstdint>
#include <string>

#include "itercur/matrix.hpp"

namespace itercur {

/// Synthetic test-matrix families.
///
///   LowRank(m, n, r)          G1 * G2^T for standard normal factors
///   LowRankPd(m, n, r, decay) LowRank plus a geometrically decaying diagonal
///   Lehmer(n)                 A(i, j) = min(i+1, j+1) / max(i+1, j+1)
///   ExpDecay(n, ratio)        orthogonally invariant, sigma_i = ratio^i
struct GeneratorSpec {
    enum class Kind { LowRank, LowRankPd, Lehmer, ExpDecay };

    Kind kind = Kind::LowRank;
    Index rows = 0;
    Index cols = 0;
    Index rank = 0;
    double decay = 0.0;  // diagonal ratio for LowRankPd; <= 0 selects the
                         // default with D(last)/D(first) = 1e-12
    double ratio = 0.5;  // singular-value ratio for ExpDecay, in (0, 1)
    std::uint64_t seed = 0;

    static GeneratorSpec low_rank(Index m, Index n, Index r, std::uint64_t seed);
    static GeneratorSpec low_rank_pd(Index m, Index n, Index r, double decay,
                                     std::uint64_t seed);
    static GeneratorSpec lehmer(Index n);
    static GeneratorSpec exp_decay(Index n, double ratio, std::uint64_t seed);
};

/// Deterministic per (spec, seed); repeated calls are bitwise identical.
MatrixHandle generate(const GeneratorSpec& spec);

/// Load a MatrixMarket file. Coordinate files become CSR (symmetric storage
/// is expanded), array files become dense. Real-valued fields only.
MatrixHandle read_matrix_market(const std::string& path);

/// Write a matrix in MatrixMarket exchange format; values round-trip exactly
/// through read_matrix_market.
void write_matrix_market(const std::string& path, const MatrixHandle& A);

}  // namespace itercur

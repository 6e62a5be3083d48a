#include "itercur/sketch.hpp"

#include <stdexcept>
#include <unordered_set>

#include "itercur/rng.hpp"

namespace itercur {

SketchState make_sketch(std::uint64_t seed, Index b, const MatrixHandle& A) {
    if (b < 1) throw std::invalid_argument("block size must be at least 1");
    if (A.empty()) throw std::invalid_argument("matrix must be nonempty");
    if (b > A.rows()) throw std::invalid_argument("block exceeds row count");

    SketchState state;
    state.seed = seed;
    state.b = b;
    state.c = sketch_rows_for_block(b);
    state.embedding = gaussian_matrix(state.c, A.rows(), seed, RngStream::Sketch);
    state.sketched_input = matmul(state.embedding, A);
    state.col_residual = state.sketched_input;
    state.ga_norm = state.sketched_input.norm();
    return state;
}

double downdate_col_residual(SketchState& state, const CurFactors& cur) {
    if (cur.empty()) {
        state.col_residual = state.sketched_input;
        return state.ga_norm > 0.0 ? 1.0 : 0.0;
    }

    // GC comes from the cached G*A, never from a fresh multiply against A.
    const Index r = cur.rank();
    Eigen::MatrixXd sketched_cols(state.c, r);
    for (Index k = 0; k < r; ++k)
        sketched_cols.col(k) = state.sketched_input.col(cur.col_indices[static_cast<std::size_t>(k)]);

    const Eigen::MatrixXd gcu = apply_pinv_right(cur.core, sketched_cols);  // c x r
    state.col_residual = state.sketched_input - matmul(gcu, cur.R);
    return state.ga_norm > 0.0 ? state.col_residual.norm() / state.ga_norm : 0.0;
}

Eigen::MatrixXd row_residual(const MatrixHandle& A, const CurFactors& cur,
                             std::span<const Index> new_cols) {
    if (!cur.empty()) {
        std::unordered_set<Index> held(cur.col_indices.begin(), cur.col_indices.end());
        for (Index j : new_cols)
            if (held.count(j))
                throw std::invalid_argument("row_residual: column " + std::to_string(j) +
                                            " already selected");
    }

    Eigen::MatrixXd out = gather_cols(A, new_cols).to_dense();
    if (cur.empty()) return out;

    const MatrixHandle r_cols = gather_cols(cur.R, new_cols);
    const Eigen::MatrixXd core_r = apply_pinv_left(cur.core, r_cols.to_dense());
    out -= matmul(cur.C, core_r);
    return out;
}

}  // namespace itercur

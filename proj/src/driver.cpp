#include "itercur/driver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace itercur {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

const char* to_string(RunStatus status) {
    switch (status) {
        case RunStatus::Converged: return "Converged";
        case RunStatus::MaxRank: return "MaxRank";
        case RunStatus::ResidualExhausted: return "ResidualExhausted";
    }
    return "Unknown";
}

double adjusted_threshold(double epsilon, double delta, double alpha, Index c) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1)");
    if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
    if (c < 1) throw std::invalid_argument("sketch rows must be positive");
    const double neg_log_alpha = -std::log(alpha);
    if (static_cast<double>(c) <= 4.0 * neg_log_alpha)
        throw std::domain_error("block too small for requested alpha");
    const double xi =
        (1.0 + delta) * std::sqrt(1.0 - 2.0 * std::sqrt(neg_log_alpha / static_cast<double>(c)));
    return xi * epsilon;
}

double gratton_tail(Index c, double tau) {
    if (c < 1) throw std::invalid_argument("sketch rows must be positive");
    if (!(tau > 1.0)) throw std::domain_error("tau must exceed 1");
    const double t2 = tau * tau;
    return std::exp(-static_cast<double>(c) * (t2 - 1.0) * (t2 - 1.0) / (4.0 * t2 * t2));
}

CurResult iterative_cur(const MatrixHandle& A, const StoppingConfig& cfg,
                        const SelectionMethod& col_method, const SelectionMethod& row_method,
                        std::uint64_t seed, const IterationObserver& observer) {
    if (A.empty()) throw std::invalid_argument("matrix must be nonempty");
    if (fro_norm(A) == 0.0) throw std::invalid_argument("matrix must be nonzero");
    if (cfg.epsilon < 0.0) throw std::invalid_argument("epsilon must be nonnegative");
    if (cfg.b < 1) throw std::invalid_argument("block size must be at least 1");

    const Index min_dim = std::min(A.rows(), A.cols());
    const Index max_rank = cfg.max_rank > 0 ? std::min(cfg.max_rank, min_dim) : min_dim;
    const Index max_iters =
        cfg.max_iters > 0 ? cfg.max_iters : (min_dim + cfg.b - 1) / cfg.b + 1;

    CurResult result;
    const auto run_start = Clock::now();

    auto sketch_start = Clock::now();
    SketchState state = make_sketch(seed, cfg.b, A);
    result.trace.sketch_s = seconds_since(sketch_start);

    const double threshold = cfg.risk_adjust
        ? adjusted_threshold(cfg.epsilon, cfg.delta, cfg.alpha, state.c)
        : cfg.epsilon;
    result.trace.threshold = threshold;

    double rho = downdate_col_residual(state, result.factors);  // rho_0 = 1
    if (rho <= threshold) {
        result.trace.status = RunStatus::Converged;
        result.trace.final_rho = rho;
        result.trace.note = "threshold at or above the initial estimate; empty factorization";
        result.trace.total_s = seconds_since(run_start);
        return result;
    }

    CurFactors cur;
    Index k = 0;
    RunStatus status = RunStatus::MaxRank;

    while (true) {
        if (cur.rank() >= max_rank || k >= max_iters) {
            status = RunStatus::MaxRank;
            break;
        }

        IterationRecord rec;
        rec.k = k;

        const Index block = std::min(cfg.b, max_rank - cur.rank());

        auto t0 = Clock::now();
        SelectionResult colsel =
            select_columns(state.col_residual, block, col_method, cur.col_indices);
        rec.select_cols_s = seconds_since(t0);
        rec.col_truncated = colsel.truncated;
        if (colsel.indices.empty()) {
            status = RunStatus::ResidualExhausted;
            break;
        }

        t0 = Clock::now();
        const Eigen::MatrixXd s_row = row_residual(A, cur, colsel.indices);
        rec.row_residual_s = seconds_since(t0);

        // The row block is capped at the realized column-block width so the
        // cross block stays square.
        t0 = Clock::now();
        SelectionResult rowsel = select_rows(
            s_row, static_cast<Index>(colsel.indices.size()), row_method, cur.row_indices);
        rec.select_rows_s = seconds_since(t0);
        rec.row_truncated = rowsel.truncated;
        if (rowsel.indices.empty()) {
            status = RunStatus::ResidualExhausted;
            break;
        }

        const std::size_t width = std::min(colsel.indices.size(), rowsel.indices.size());
        IndexList new_cols = cur.col_indices;
        IndexList new_rows = cur.row_indices;
        new_cols.insert(new_cols.end(), colsel.indices.begin(),
                        colsel.indices.begin() + static_cast<std::ptrdiff_t>(width));
        new_rows.insert(new_rows.end(), rowsel.indices.begin(),
                        rowsel.indices.begin() + static_cast<std::ptrdiff_t>(width));

        t0 = Clock::now();
        CurFactors next;
        try {
            next = make_cur_factors(A, std::move(new_rows), std::move(new_cols));
        } catch (const std::runtime_error&) {
            // Singular cross block after masking/truncation: return the
            // factors from the last successful iteration.
            status = RunStatus::ResidualExhausted;
            break;
        }
        rec.core_s = seconds_since(t0);

        cur = std::move(next);
        rec.cols_added = static_cast<Index>(width);
        rec.rows_added = static_cast<Index>(width);

        t0 = Clock::now();
        rho = downdate_col_residual(state, cur);
        rec.downdate_s = seconds_since(t0);
        rec.rho = rho;

        ++k;
        result.trace.iterations.push_back(rec);
        if (observer) observer(cur, rec);

        if (rho <= threshold) {
            status = RunStatus::Converged;
            break;
        }
    }

    result.factors = std::move(cur);
    result.trace.status = status;
    result.trace.final_rho = rho;
    result.trace.total_s = seconds_since(run_start);
    return result;
}

double true_relative_error(const MatrixHandle& A, const CurFactors& cur) {
    const double a_norm = fro_norm(A);
    if (a_norm == 0.0) return 0.0;
    if (cur.empty()) return 1.0;

    constexpr Index kPanel = 256;
    const Index n = A.cols();
    double sq = 0.0;
    IndexList panel;
    for (Index start = 0; start < n; start += kPanel) {
        const Index stop = std::min(start + kPanel, n);
        panel.resize(static_cast<std::size_t>(stop - start));
        for (Index j = start; j < stop; ++j) panel[static_cast<std::size_t>(j - start)] = j;

        Eigen::MatrixXd diff = gather_cols(A, panel).to_dense();
        const Eigen::MatrixXd core_r =
            apply_pinv_left(cur.core, gather_cols(cur.R, panel).to_dense());
        diff -= matmul(cur.C, core_r);
        sq += diff.squaredNorm();
    }
    return std::sqrt(sq) / a_norm;
}

}  // namespace itercur

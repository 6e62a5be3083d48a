#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "itercur/select.hpp"
#include "itercur/sketch.hpp"

namespace itercur {

/// Stopping parameters for the rank-adaptive run. With risk_adjust set, the
/// sketched estimate is compared against xi * epsilon, where
/// xi = (1 + delta) * sqrt(1 - 2 * sqrt(-ln(alpha) / c)); this keeps the
/// probability of stopping with a true error above (1 + delta) * epsilon
/// below alpha. epsilon = 0 together with max_rank gives a fixed-rank run.
struct StoppingConfig {
    double epsilon = 1e-6;
    Index b = 50;
    double delta = 0.0;    // allowed overshoot factor 1 + delta
    double alpha = 0.05;   // failure probability, in (0, 1)
    bool risk_adjust = false;
    Index max_rank = 0;    // 0 -> min(m, n)
    Index max_iters = 0;   // 0 -> ceil(min(m, n) / b) + 1
};

enum class RunStatus { Converged, MaxRank, ResidualExhausted };

const char* to_string(RunStatus status);

struct IterationRecord {
    Index k = 0;
    double rho = 1.0;
    Index cols_added = 0;
    Index rows_added = 0;
    bool col_truncated = false;
    bool row_truncated = false;
    double select_cols_s = 0.0;
    double row_residual_s = 0.0;
    double select_rows_s = 0.0;
    double core_s = 0.0;
    double downdate_s = 0.0;
};

struct RunTrace {
    std::vector<IterationRecord> iterations;
    RunStatus status = RunStatus::Converged;
    double final_rho = 1.0;
    double threshold = 0.0;
    double sketch_s = 0.0;
    double total_s = 0.0;
    std::string note;
};

struct CurResult {
    CurFactors factors;
    RunTrace trace;
};

/// xi * epsilon. Requires alpha in (0,1), delta >= 0, and c > -4 ln(alpha);
/// otherwise the radicand is nonpositive and the request is rejected with
/// "block too small for requested alpha".
double adjusted_threshold(double epsilon, double delta, double alpha, Index c);

/// Pr[||G A||_F <= (1/tau) ||A||_F] <= exp(-c (tau^2-1)^2 / (4 tau^4)) for a
/// Gaussian embedding with c rows and variance-1/c entries. Requires tau > 1.
double gratton_tail(Index c, double tau);

/// Invoked with the factors as they stand after each completed iteration.
using IterationObserver =
    std::function<void(const CurFactors&, const IterationRecord&)>;

/// The adaptive driver: select a column block from the sketched residual,
/// a row block from the row residual at those columns, refactor the core over
/// the accumulated indices, downdate the sketched residual, and stop once the
/// estimate falls below the threshold (or the rank/iteration budget runs out,
/// or the residual is numerically exhausted).
CurResult iterative_cur(const MatrixHandle& A, const StoppingConfig& cfg,
                        const SelectionMethod& col_method, const SelectionMethod& row_method,
                        std::uint64_t seed, const IterationObserver& observer = {});

/// Exact ||A - CUR||_F / ||A||_F, accumulated over column panels so the full
/// residual is never materialized.
double true_relative_error(const MatrixHandle& A, const CurFactors& cur);

}  // namespace itercur

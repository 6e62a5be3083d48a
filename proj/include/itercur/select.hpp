#pragma once

#include "itercur/matrix.hpp"

namespace itercur {

enum class PivotKind { Lupp, Qrcp, Osinsky };

/// Index-selection rule applied to small residual matrices. `pivot_floor` is
/// the relative magnitude (against the first pivot of the block) below which
/// the block terminates early; it must lie in (0, 1).
struct SelectionMethod {
    PivotKind kind = PivotKind::Lupp;
    double pivot_floor = 1e-13;
};

struct SelectionResult {
    IndexList indices;                 // distinct, never intersecting the mask
    bool truncated = false;            // true iff fewer than b indices returned
    double last_pivot_magnitude = 0.0; // magnitude of the last accepted pivot
};

/// Choose up to b columns of the c x n matrix M.
///
/// LUPP runs partially pivoted elimination on M^T; the pivot rows of M^T are
/// the chosen columns. QRCP pivots on the columns of M directly by greedy
/// orthogonalized column norms. Ties break toward the lowest index, excluded
/// indices are masked out before pivoting, and the block stops early once the
/// running pivot drops below pivot_floor relative to the block's first pivot
/// or below the absolute floor 100 * eps * ||M||_F.
SelectionResult select_columns(const Eigen::MatrixXd& M, Index b,
                               const SelectionMethod& method, const IndexList& exclude);

/// Choose up to min(b, cols(M)) rows of the m x b_eff matrix M. LUPP pivots
/// on M directly, QRCP on its transpose; masking and truncation rules match
/// select_columns.
SelectionResult select_rows(const Eigen::MatrixXd& M, Index b,
                            const SelectionMethod& method, const IndexList& exclude);

}  // namespace itercur

#pragma once

#include <memory>

#include "itercur/matrix.hpp"

namespace itercur {

/// How the core pseudoinverse is factored. The LU variant is reserved for
/// loose tolerances and currently rejects with "not implemented".
enum class CoreFactorization { OrthogonalTriangular, LowerUpper };

/// Pseudoinverse of a cross block, held in factored form (rank-revealing
/// orthogonal-triangular factorization with column pivoting). The operator
/// can be applied from either side without ever materializing an inverse.
class FactoredPinv {
public:
    FactoredPinv() = default;

    Index rows() const;
    Index cols() const;
    Index rank() const;
    double tolerance() const;
    bool valid() const { return impl_ != nullptr; }

    /// X^+ * rhs (minimum-norm least-squares solve against X).
    Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;

    /// (X^T)^+ * rhs, so rhs * X^+ == solve_transposed(rhs^T)^T.
    Eigen::MatrixXd solve_transposed(const Eigen::MatrixXd& rhs) const;

    /// Explicit pseudoinverse, for export only.
    Eigen::MatrixXd materialize() const;

    struct Impl;

private:
    std::shared_ptr<const Impl> impl_;
    friend FactoredPinv build_pinv(const MatrixHandle&, double, CoreFactorization);
};

/// Factor X^+ with relative rank tolerance `tol`: triangular diagonal entries
/// below tol * (largest diagonal magnitude) are discarded. A negative `tol`
/// selects the default 1e-12 * max(rows, cols). Throws "singular cross block"
/// when X is entirely zero.
FactoredPinv build_pinv(const MatrixHandle& X, double tol = -1.0,
                        CoreFactorization kind = CoreFactorization::OrthogonalTriangular);

/// P^+ * M and M * P^+ for a conformable matrix M.
MatrixHandle apply_pinv_left(const FactoredPinv& P, const MatrixHandle& M);
MatrixHandle apply_pinv_right(const FactoredPinv& P, const MatrixHandle& M);
Eigen::MatrixXd apply_pinv_left(const FactoredPinv& P, const Eigen::MatrixXd& M);
Eigen::MatrixXd apply_pinv_right(const FactoredPinv& P, const Eigen::MatrixXd& M);

/// CUR factors: C = A(:,J), core = A(I,J)^+, R = A(I,:). The index sets are
/// the same length and the blocks are gathered from A, never recomputed.
struct CurFactors {
    IndexList row_indices;  // I
    IndexList col_indices;  // J
    MatrixHandle C;
    FactoredPinv core;
    MatrixHandle R;

    bool empty() const { return col_indices.empty(); }
    Index rank() const { return static_cast<Index>(col_indices.size()); }
};

/// Gather C, R and factor the cross block for explicit index sets.
/// Requires |I| == |J| with distinct entries in each.
CurFactors make_cur_factors(const MatrixHandle& A, IndexList row_indices,
                            IndexList col_indices, double tol = -1.0);

}  // namespace itercur

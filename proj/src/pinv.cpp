#include "itercur/pinv.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include <Eigen/QR>

namespace itercur {

struct FactoredPinv::Impl {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod_transposed;
    Index rows = 0;
    Index cols = 0;
    double tol = 0.0;
};

Index FactoredPinv::rows() const { return impl_ ? impl_->rows : 0; }
Index FactoredPinv::cols() const { return impl_ ? impl_->cols : 0; }
Index FactoredPinv::rank() const { return impl_ ? impl_->cod.rank() : 0; }
double FactoredPinv::tolerance() const { return impl_ ? impl_->tol : 0.0; }

Eigen::MatrixXd FactoredPinv::solve(const Eigen::MatrixXd& rhs) const {
    if (!impl_) throw std::logic_error("FactoredPinv is empty");
    if (rhs.rows() != impl_->rows)
        throw std::invalid_argument("apply_pinv_left: expected " + std::to_string(impl_->rows) +
                                    " rows, got " + std::to_string(rhs.rows()));
    return impl_->cod.solve(rhs);
}

Eigen::MatrixXd FactoredPinv::solve_transposed(const Eigen::MatrixXd& rhs) const {
    if (!impl_) throw std::logic_error("FactoredPinv is empty");
    if (rhs.rows() != impl_->cols)
        throw std::invalid_argument("apply_pinv_right: expected " + std::to_string(impl_->cols) +
                                    " columns, got " + std::to_string(rhs.rows()));
    return impl_->cod_transposed.solve(rhs);
}

Eigen::MatrixXd FactoredPinv::materialize() const {
    if (!impl_) throw std::logic_error("FactoredPinv is empty");
    return impl_->cod.solve(Eigen::MatrixXd::Identity(impl_->rows, impl_->rows));
}

FactoredPinv build_pinv(const MatrixHandle& X, double tol, CoreFactorization kind) {
    if (kind == CoreFactorization::LowerUpper)
        throw std::runtime_error("LU core factorization not implemented");
    if (X.empty()) throw std::invalid_argument("build_pinv: empty matrix");
    if (fro_norm(X) == 0.0) throw std::runtime_error("singular cross block");

    auto impl = std::make_shared<FactoredPinv::Impl>();
    impl->rows = X.rows();
    impl->cols = X.cols();
    impl->tol = tol >= 0.0 ? tol : 1e-12 * static_cast<double>(std::max(X.rows(), X.cols()));

    const Eigen::MatrixXd dense = X.to_dense();
    impl->cod.setThreshold(impl->tol);
    impl->cod.compute(dense);
    impl->cod_transposed.setThreshold(impl->tol);
    impl->cod_transposed.compute(dense.transpose());

    FactoredPinv out;
    out.impl_ = std::move(impl);
    return out;
}

Eigen::MatrixXd apply_pinv_left(const FactoredPinv& P, const Eigen::MatrixXd& M) {
    return P.solve(M);
}

Eigen::MatrixXd apply_pinv_right(const FactoredPinv& P, const Eigen::MatrixXd& M) {
    return P.solve_transposed(M.transpose()).transpose();
}

MatrixHandle apply_pinv_left(const FactoredPinv& P, const MatrixHandle& M) {
    return MatrixHandle(P.solve(M.to_dense()));
}

MatrixHandle apply_pinv_right(const FactoredPinv& P, const MatrixHandle& M) {
    return MatrixHandle(apply_pinv_right(P, M.to_dense()));
}

namespace {

void check_distinct(const IndexList& idx, const char* what) {
    std::unordered_set<Index> seen;
    for (Index i : idx)
        if (!seen.insert(i).second)
            throw std::invalid_argument(std::string(what) + " indices must be distinct");
}

}  // namespace

CurFactors make_cur_factors(const MatrixHandle& A, IndexList row_indices,
                            IndexList col_indices, double tol) {
    if (row_indices.size() != col_indices.size())
        throw std::invalid_argument("cross block must be square: |I| != |J|");
    check_distinct(row_indices, "row");
    check_distinct(col_indices, "column");

    CurFactors cur;
    if (row_indices.empty()) return cur;

    const Eigen::MatrixXd cross = gather_block(A, row_indices, col_indices);
    cur.core = build_pinv(MatrixHandle(cross), tol);
    cur.C = gather_cols(A, col_indices);
    cur.R = gather_rows(A, row_indices);
    cur.row_indices = std::move(row_indices);
    cur.col_indices = std::move(col_indices);
    return cur;
}

}  // namespace itercur

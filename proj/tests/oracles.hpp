#pragma once

// Independent reference implementations used to pin expected values. These
// deliberately take different code paths from the library: plain loops,
// SVD-based pseudoinverses, and Eigen's own pivoted factorizations.

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "itercur/matrix.hpp"

namespace oracle {

using itercur::Index;
using itercur::IndexList;
using itercur::MatrixHandle;

inline Eigen::MatrixXd random_dense(Index rows, Index cols, unsigned seed,
                                    double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::MatrixXd out(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) out(i, j) = dist(gen);
    return out;
}

inline Eigen::MatrixXd random_gaussian(Index rows, Index cols, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist;
    Eigen::MatrixXd out(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) out(i, j) = dist(gen);
    return out;
}

// Dense matrix with ~density fraction of nonzeros, returned as a CSR handle.
inline MatrixHandle random_sparse(Index rows, Index cols, double density, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Index> row_ptr{0};
    std::vector<Index> col_idx;
    std::vector<double> values;
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j)
            if (coin(gen) < density) {
                col_idx.push_back(j);
                values.push_back(value(gen));
            }
        row_ptr.push_back(static_cast<Index>(values.size()));
    }
    return MatrixHandle(rows, cols, std::move(row_ptr), std::move(col_idx), std::move(values));
}

inline Eigen::MatrixXd copy_cols(const Eigen::MatrixXd& A, const IndexList& cols) {
    Eigen::MatrixXd out(A.rows(), static_cast<Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k)
        for (Index i = 0; i < A.rows(); ++i) out(i, static_cast<Index>(k)) = A(i, cols[k]);
    return out;
}

inline Eigen::MatrixXd copy_rows(const Eigen::MatrixXd& A, const IndexList& rows) {
    Eigen::MatrixXd out(static_cast<Index>(rows.size()), A.cols());
    for (std::size_t k = 0; k < rows.size(); ++k)
        for (Index j = 0; j < A.cols(); ++j) out(static_cast<Index>(k), j) = A(rows[k], j);
    return out;
}

inline Eigen::MatrixXd triple_loop_product(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(A.rows(), B.cols());
    for (Index i = 0; i < A.rows(); ++i)
        for (Index j = 0; j < B.cols(); ++j)
            for (Index k = 0; k < A.cols(); ++k) out(i, j) += A(i, k) * B(k, j);
    return out;
}

inline double sum_of_squares_norm(const Eigen::MatrixXd& A) {
    double sq = 0.0;
    for (Index j = 0; j < A.cols(); ++j)
        for (Index i = 0; i < A.rows(); ++i) sq += A(i, j) * A(i, j);
    return std::sqrt(sq);
}

// SVD-based pseudoinverse with relative threshold, an independent route from
// the library's orthogonal-triangular factorization.
inline Eigen::MatrixXd svd_pinv(const Eigen::MatrixXd& X, double rel_tol = 1e-12) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * sv(0)) inv(i) = 1.0 / sv(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

// Pivot sequence of row-swapping Gaussian elimination with partial pivoting,
// reported in the original row numbering.
inline IndexList lupp_reference_pivots(Eigen::MatrixXd W, Index steps) {
    IndexList original(static_cast<std::size_t>(W.rows()));
    for (Index i = 0; i < W.rows(); ++i) original[static_cast<std::size_t>(i)] = i;
    IndexList pivots;
    const Index limit = std::min({steps, W.rows(), W.cols()});
    for (Index s = 0; s < limit; ++s) {
        Index best = s;
        for (Index i = s; i < W.rows(); ++i)
            if (std::abs(W(i, s)) > std::abs(W(best, s))) best = i;
        if (W(best, s) == 0.0) break;
        W.row(s).swap(W.row(best));
        std::swap(original[static_cast<std::size_t>(s)], original[static_cast<std::size_t>(best)]);
        pivots.push_back(original[static_cast<std::size_t>(s)]);
        for (Index i = s + 1; i < W.rows(); ++i) {
            const double factor = W(i, s) / W(s, s);
            W.row(i).tail(W.cols() - s) -= factor * W.row(s).tail(W.cols() - s);
        }
    }
    return pivots;
}

// Greedy column pivots by recomputed orthogonalized norms: at every step the
// residual of each candidate against an explicit orthonormal basis of the
// already chosen columns is rebuilt from scratch.
inline IndexList qrcp_reference_pivots(const Eigen::MatrixXd& M, Index steps) {
    IndexList pivots;
    Eigen::MatrixXd basis(M.rows(), 0);
    std::vector<char> taken(static_cast<std::size_t>(M.cols()), 0);
    const Index limit = std::min({steps, M.rows(), M.cols()});
    for (Index s = 0; s < limit; ++s) {
        Index best = -1;
        double best_norm = -1.0;
        for (Index j = 0; j < M.cols(); ++j) {
            if (taken[static_cast<std::size_t>(j)]) continue;
            Eigen::VectorXd residual = M.col(j);
            if (basis.cols() > 0) residual -= basis * (basis.transpose() * residual);
            const double norm = residual.norm();
            if (norm > best_norm) {
                best_norm = norm;
                best = j;
            }
        }
        if (best < 0 || best_norm == 0.0) break;
        pivots.push_back(best);
        taken[static_cast<std::size_t>(best)] = 1;
        Eigen::VectorXd q = M.col(best);
        if (basis.cols() > 0) q -= basis * (basis.transpose() * q);
        q /= q.norm();
        basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
        basis.col(basis.cols() - 1) = q;
    }
    return pivots;
}

}  // namespace oracle

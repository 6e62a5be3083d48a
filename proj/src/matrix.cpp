#include "itercur/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace itercur {

namespace {

void check_finite(const Eigen::MatrixXd& M) {
    if (!M.allFinite())
        throw std::invalid_argument("matrix contains non-finite entries");
}

[[noreturn]] void bad_index(const char* where, Index idx, Index bound) {
    throw std::out_of_range(std::string(where) + ": index " + std::to_string(idx) +
                            " out of range [0, " + std::to_string(bound) + ")");
}

// Counting transpose of a CSR matrix; output rows stay sorted.
CsrData csr_transpose(const CsrData& a) {
    CsrData t;
    t.rows = a.cols;
    t.cols = a.rows;
    const Index nnz = static_cast<Index>(a.values.size());
    t.row_ptr.assign(static_cast<std::size_t>(t.rows) + 1, 0);
    t.col_idx.resize(static_cast<std::size_t>(nnz));
    t.values.resize(static_cast<std::size_t>(nnz));
    for (Index p = 0; p < nnz; ++p) ++t.row_ptr[static_cast<std::size_t>(a.col_idx[p]) + 1];
    for (Index j = 0; j < t.rows; ++j)
        t.row_ptr[static_cast<std::size_t>(j) + 1] += t.row_ptr[static_cast<std::size_t>(j)];
    std::vector<Index> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
    for (Index i = 0; i < a.rows; ++i) {
        for (Index p = a.row_ptr[static_cast<std::size_t>(i)];
             p < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++p) {
            const Index j = a.col_idx[static_cast<std::size_t>(p)];
            const Index slot = next[static_cast<std::size_t>(j)]++;
            t.col_idx[static_cast<std::size_t>(slot)] = i;
            t.values[static_cast<std::size_t>(slot)] = a.values[static_cast<std::size_t>(p)];
        }
    }
    return t;
}

}  // namespace

struct MatrixHandle::SparseBlock {
    CsrData csr;
    // Transpose cache, built once column gathers become frequent.
    mutable std::mutex cache_mutex;
    mutable std::shared_ptr<const CsrData> transpose;
    mutable int col_gather_calls = 0;

    std::shared_ptr<const CsrData> transpose_cache() const {
        std::lock_guard<std::mutex> lock(cache_mutex);
        if (!transpose) transpose = std::make_shared<const CsrData>(csr_transpose(csr));
        return transpose;
    }

    bool want_transpose() const {
        std::lock_guard<std::mutex> lock(cache_mutex);
        ++col_gather_calls;
        return transpose != nullptr || col_gather_calls > 4;
    }
};

MatrixHandle::MatrixHandle() : dense_(std::make_shared<const Eigen::MatrixXd>()) {}

MatrixHandle::MatrixHandle(Eigen::MatrixXd dense)
    : rows_(dense.rows()), cols_(dense.cols()) {
    check_finite(dense);
    dense_ = std::make_shared<const Eigen::MatrixXd>(std::move(dense));
}

MatrixHandle::MatrixHandle(Index rows, Index cols, std::vector<Index> row_ptr,
                           std::vector<Index> col_idx, std::vector<double> values)
    : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    if (row_ptr.size() != static_cast<std::size_t>(rows) + 1)
        throw std::invalid_argument("row_ptr must have rows+1 entries");
    if (row_ptr.front() != 0 || row_ptr.back() != static_cast<Index>(values.size()))
        throw std::invalid_argument("row_ptr must start at 0 and end at nnz");
    if (col_idx.size() != values.size())
        throw std::invalid_argument("col_idx and values must have equal length");
    for (Index i = 0; i < rows; ++i) {
        const Index lo = row_ptr[static_cast<std::size_t>(i)];
        const Index hi = row_ptr[static_cast<std::size_t>(i) + 1];
        if (hi < lo) throw std::invalid_argument("row_ptr must be nondecreasing");
        for (Index p = lo; p < hi; ++p) {
            const Index j = col_idx[static_cast<std::size_t>(p)];
            if (j < 0 || j >= cols) bad_index("csr column", j, cols);
            if (p > lo && j <= col_idx[static_cast<std::size_t>(p) - 1])
                throw std::invalid_argument(
                    "csr column indices must be strictly increasing within each row");
        }
    }
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("matrix contains non-finite entries");
    auto block = std::make_shared<SparseBlock>();
    block->csr = CsrData{rows, cols, std::move(row_ptr), std::move(col_idx), std::move(values)};
    sparse_ = std::move(block);
}

Index MatrixHandle::nnz() const {
    return is_sparse() ? static_cast<Index>(sparse_->csr.values.size()) : rows_ * cols_;
}

const Eigen::MatrixXd& MatrixHandle::dense_data() const {
    if (is_sparse()) throw std::logic_error("dense_data() called on sparse matrix");
    return *dense_;
}

const CsrData& MatrixHandle::csr_data() const {
    if (!is_sparse()) throw std::logic_error("csr_data() called on dense matrix");
    return sparse_->csr;
}

Eigen::MatrixXd MatrixHandle::to_dense() const {
    if (!is_sparse()) return *dense_;
    const CsrData& a = sparse_->csr;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows_, cols_);
    for (Index i = 0; i < rows_; ++i)
        for (Index p = a.row_ptr[static_cast<std::size_t>(i)];
             p < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++p)
            out(i, a.col_idx[static_cast<std::size_t>(p)]) =
                a.values[static_cast<std::size_t>(p)];
    return out;
}

MatrixHandle gather_cols(const MatrixHandle& A, std::span<const Index> cols) {
    for (Index j : cols)
        if (j < 0 || j >= A.cols()) bad_index("gather_cols", j, A.cols());

    if (!A.is_sparse()) {
        const Eigen::MatrixXd& M = A.dense_data();
        Eigen::MatrixXd out(A.rows(), static_cast<Index>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k)
            out.col(static_cast<Index>(k)) = M.col(cols[k]);
        return MatrixHandle(std::move(out));
    }

    const Index m = A.rows();
    const Index w = static_cast<Index>(cols.size());
    std::vector<Index> row_ptr(static_cast<std::size_t>(m) + 1, 0);
    std::vector<Index> col_idx;
    std::vector<double> values;

    if (A.sparse_->want_transpose()) {
        // Gather rows of the cached transpose, then transpose back.
        const auto t = A.sparse_->transpose_cache();
        CsrData sub;
        sub.rows = w;
        sub.cols = m;
        sub.row_ptr.assign(static_cast<std::size_t>(w) + 1, 0);
        for (Index k = 0; k < w; ++k) {
            const Index j = cols[static_cast<std::size_t>(k)];
            const Index lo = t->row_ptr[static_cast<std::size_t>(j)];
            const Index hi = t->row_ptr[static_cast<std::size_t>(j) + 1];
            sub.row_ptr[static_cast<std::size_t>(k) + 1] =
                sub.row_ptr[static_cast<std::size_t>(k)] + (hi - lo);
            sub.col_idx.insert(sub.col_idx.end(), t->col_idx.begin() + lo, t->col_idx.begin() + hi);
            sub.values.insert(sub.values.end(), t->values.begin() + lo, t->values.begin() + hi);
        }
        CsrData back = csr_transpose(sub);
        return MatrixHandle(m, w, std::move(back.row_ptr), std::move(back.col_idx),
                            std::move(back.values));
    }

    // Direct pass: binary-search each requested column inside every row.
    const CsrData& a = A.csr_data();
    std::vector<std::pair<Index, double>> hits;
    for (Index i = 0; i < m; ++i) {
        const auto lo = a.col_idx.begin() + a.row_ptr[static_cast<std::size_t>(i)];
        const auto hi = a.col_idx.begin() + a.row_ptr[static_cast<std::size_t>(i) + 1];
        hits.clear();
        for (Index k = 0; k < w; ++k) {
            const Index j = cols[static_cast<std::size_t>(k)];
            const auto it = std::lower_bound(lo, hi, j);
            if (it != hi && *it == j)
                hits.emplace_back(k, a.values[static_cast<std::size_t>(it - a.col_idx.begin())]);
        }
        std::sort(hits.begin(), hits.end());
        for (const auto& [k, v] : hits) {
            col_idx.push_back(k);
            values.push_back(v);
        }
        row_ptr[static_cast<std::size_t>(i) + 1] = static_cast<Index>(values.size());
    }
    return MatrixHandle(m, w, std::move(row_ptr), std::move(col_idx), std::move(values));
}

MatrixHandle gather_rows(const MatrixHandle& A, std::span<const Index> rows) {
    for (Index i : rows)
        if (i < 0 || i >= A.rows()) bad_index("gather_rows", i, A.rows());

    if (!A.is_sparse()) {
        const Eigen::MatrixXd& M = A.dense_data();
        Eigen::MatrixXd out(static_cast<Index>(rows.size()), A.cols());
        for (std::size_t k = 0; k < rows.size(); ++k)
            out.row(static_cast<Index>(k)) = M.row(rows[k]);
        return MatrixHandle(std::move(out));
    }

    const CsrData& a = A.csr_data();
    std::vector<Index> row_ptr(rows.size() + 1, 0);
    std::vector<Index> col_idx;
    std::vector<double> values;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const Index i = rows[k];
        const Index lo = a.row_ptr[static_cast<std::size_t>(i)];
        const Index hi = a.row_ptr[static_cast<std::size_t>(i) + 1];
        col_idx.insert(col_idx.end(), a.col_idx.begin() + lo, a.col_idx.begin() + hi);
        values.insert(values.end(), a.values.begin() + lo, a.values.begin() + hi);
        row_ptr[k + 1] = static_cast<Index>(values.size());
    }
    return MatrixHandle(static_cast<Index>(rows.size()), A.cols(), std::move(row_ptr),
                        std::move(col_idx), std::move(values));
}

Eigen::MatrixXd gather_block(const MatrixHandle& A, std::span<const Index> rows,
                             std::span<const Index> cols) {
    return gather_cols(gather_rows(A, rows), cols).to_dense();
}

namespace {

[[noreturn]] void shape_mismatch(Index ar, Index ac, Index br, Index bc) {
    throw std::invalid_argument("matmul: shape mismatch (" + std::to_string(ar) + "x" +
                                std::to_string(ac) + ") * (" + std::to_string(br) + "x" +
                                std::to_string(bc) + ")");
}

Eigen::MatrixXd csr_times_dense(const CsrData& a, const Eigen::MatrixXd& B) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows, B.cols());
    for (Index i = 0; i < a.rows; ++i)
        for (Index p = a.row_ptr[static_cast<std::size_t>(i)];
             p < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++p)
            out.row(i) += a.values[static_cast<std::size_t>(p)] *
                          B.row(a.col_idx[static_cast<std::size_t>(p)]);
    return out;
}

Eigen::MatrixXd dense_times_csr(const Eigen::MatrixXd& A, const CsrData& b) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(A.rows(), b.cols);
    for (Index k = 0; k < b.rows; ++k)
        for (Index p = b.row_ptr[static_cast<std::size_t>(k)];
             p < b.row_ptr[static_cast<std::size_t>(k) + 1]; ++p)
            out.col(b.col_idx[static_cast<std::size_t>(p)]) +=
                b.values[static_cast<std::size_t>(p)] * A.col(k);
    return out;
}

Eigen::MatrixXd csr_times_csr(const CsrData& a, const CsrData& b) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows, b.cols);
    for (Index i = 0; i < a.rows; ++i)
        for (Index p = a.row_ptr[static_cast<std::size_t>(i)];
             p < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++p) {
            const Index k = a.col_idx[static_cast<std::size_t>(p)];
            const double v = a.values[static_cast<std::size_t>(p)];
            for (Index q = b.row_ptr[static_cast<std::size_t>(k)];
                 q < b.row_ptr[static_cast<std::size_t>(k) + 1]; ++q)
                out(i, b.col_idx[static_cast<std::size_t>(q)]) +=
                    v * b.values[static_cast<std::size_t>(q)];
        }
    return out;
}

}  // namespace

MatrixHandle matmul(const MatrixHandle& A, const MatrixHandle& B) {
    if (A.cols() != B.rows()) shape_mismatch(A.rows(), A.cols(), B.rows(), B.cols());
    if (!A.is_sparse() && !B.is_sparse())
        return MatrixHandle(Eigen::MatrixXd(A.dense_data() * B.dense_data()));
    if (A.is_sparse() && !B.is_sparse())
        return MatrixHandle(csr_times_dense(A.csr_data(), B.dense_data()));
    if (!A.is_sparse() && B.is_sparse())
        return MatrixHandle(dense_times_csr(A.dense_data(), B.csr_data()));
    return MatrixHandle(csr_times_csr(A.csr_data(), B.csr_data()));
}

Eigen::MatrixXd matmul(const Eigen::MatrixXd& A, const MatrixHandle& B) {
    if (A.cols() != B.rows()) shape_mismatch(A.rows(), A.cols(), B.rows(), B.cols());
    return B.is_sparse() ? dense_times_csr(A, B.csr_data())
                         : Eigen::MatrixXd(A * B.dense_data());
}

Eigen::MatrixXd matmul(const MatrixHandle& A, const Eigen::MatrixXd& B) {
    if (A.cols() != B.rows()) shape_mismatch(A.rows(), A.cols(), B.rows(), B.cols());
    return A.is_sparse() ? csr_times_dense(A.csr_data(), B)
                         : Eigen::MatrixXd(A.dense_data() * B);
}

double fro_norm(const MatrixHandle& A) {
    if (!A.is_sparse()) return A.dense_data().norm();
    double sq = 0.0;
    for (double v : A.csr_data().values) sq += v * v;
    return std::sqrt(sq);
}

}  // namespace itercur

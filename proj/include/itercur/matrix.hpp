#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace itercur {

using Index = std::int64_t;
using IndexList = std::vector<Index>;

/// Compressed-sparse-row storage. Column indices are strictly increasing
/// within each row and `row_ptr.back() == values.size()`.
struct CsrData {
    Index rows = 0;
    Index cols = 0;
    std::vector<Index> row_ptr;
    std::vector<Index> col_idx;
    std::vector<double> values;
};

/// Unified dense / CSR matrix with value semantics. The payload is immutable
/// and shared between copies, so handles are cheap to pass around.
class MatrixHandle {
public:
    MatrixHandle();

    /// Wrap a dense matrix. All entries must be finite.
    explicit MatrixHandle(Eigen::MatrixXd dense);

    /// Build a CSR matrix from raw arrays (validated on construction).
    MatrixHandle(Index rows, Index cols, std::vector<Index> row_ptr,
                 std::vector<Index> col_idx, std::vector<double> values);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    bool is_sparse() const { return sparse_ != nullptr; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    /// Stored entry count (rows*cols for dense).
    Index nnz() const;

    const Eigen::MatrixXd& dense_data() const;
    const CsrData& csr_data() const;
    Eigen::MatrixXd to_dense() const;

    struct SparseBlock;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::shared_ptr<const Eigen::MatrixXd> dense_;
    std::shared_ptr<SparseBlock> sparse_;

    friend MatrixHandle gather_cols(const MatrixHandle&, std::span<const Index>);
};

/// C = A(:, J). Column k of the result equals column J[k] of A, copied
/// exactly. Sparse input yields sparse output.
MatrixHandle gather_cols(const MatrixHandle& A, std::span<const Index> cols);

/// R = A(I, :). Row k of the result equals row I[k] of A, copied exactly.
MatrixHandle gather_rows(const MatrixHandle& A, std::span<const Index> rows);

/// A(I, J) as a dense block (used for the cross matrix).
Eigen::MatrixXd gather_block(const MatrixHandle& A, std::span<const Index> rows,
                             std::span<const Index> cols);

/// Standard matrix product; the result is always dense. All storage
/// combinations are supported.
MatrixHandle matmul(const MatrixHandle& A, const MatrixHandle& B);
Eigen::MatrixXd matmul(const Eigen::MatrixXd& A, const MatrixHandle& B);
Eigen::MatrixXd matmul(const MatrixHandle& A, const Eigen::MatrixXd& B);

double fro_norm(const MatrixHandle& A);

}  // namespace itercur

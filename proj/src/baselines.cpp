#include "itercur/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "itercur/rng.hpp"
#include "itercur/select.hpp"

namespace itercur {

double SpectrumSummary::tail_energy(Index r) const {
    if (r < 0) throw std::invalid_argument("rank must be nonnegative");
    if (r >= tail_energies.size()) return 0.0;
    return tail_energies(r);
}

SpectrumSummary compute_spectrum(const MatrixHandle& A) {
    SpectrumSummary out;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A.to_dense());
    out.singular_values = svd.singularValues();

    const Index k = out.singular_values.size();
    out.tail_energies.resize(k + 1);
    out.tail_energies(k) = 0.0;
    double sq = 0.0;
    for (Index i = k - 1; i >= 0; --i) {
        sq += out.singular_values(i) * out.singular_values(i);
        out.tail_energies(i) = std::sqrt(sq);
    }
    return out;
}

double truncated_svd_error(const MatrixHandle& A, Index r) {
    return compute_spectrum(A).tail_energy(r);
}

CurFactors slupp_cur(const MatrixHandle& A, Index r, std::uint64_t seed) {
    if (r < 0 || r > std::min(A.rows(), A.cols()))
        throw std::invalid_argument("rank must lie in [0, min(m, n)]");
    if (r == 0) return CurFactors{};

    const Index sketch_rows = (11 * r + 9) / 10;  // ceil(1.1 r)
    const Eigen::MatrixXd G =
        gaussian_matrix(sketch_rows, A.rows(), seed, RngStream::SluppSketch);
    const Eigen::MatrixXd sketched = matmul(G, A);

    const SelectionMethod lupp{};
    const SelectionResult cols = select_columns(sketched, std::min(r, sketch_rows), lupp, {});
    if (cols.indices.empty()) throw std::runtime_error("singular cross block");

    const Eigen::MatrixXd picked = gather_cols(A, cols.indices).to_dense();
    const SelectionResult rows =
        select_rows(picked, static_cast<Index>(cols.indices.size()), lupp, {});
    if (rows.indices.empty()) throw std::runtime_error("singular cross block");

    const std::size_t width = std::min(cols.indices.size(), rows.indices.size());
    IndexList I(rows.indices.begin(), rows.indices.begin() + static_cast<std::ptrdiff_t>(width));
    IndexList J(cols.indices.begin(), cols.indices.begin() + static_cast<std::ptrdiff_t>(width));
    return make_cur_factors(A, std::move(I), std::move(J));
}

double rangefinder_error(const MatrixHandle& A, Index b, std::uint64_t seed) {
    if (b < 2) throw std::invalid_argument("sketch size must be at least 2");
    const Eigen::MatrixXd dense = A.to_dense();
    if (dense.norm() == 0.0) return 0.0;

    const Eigen::MatrixXd G = gaussian_matrix(b, A.rows(), seed, RngStream::Rangefinder);
    const Eigen::MatrixXd X = G * dense;
    const FactoredPinv pinv = build_pinv(MatrixHandle(X));
    const Eigen::MatrixXd projected = apply_pinv_right(pinv, dense) * X;
    return (dense - projected).norm();
}

Eigen::MatrixXd naive_cur_residual(const MatrixHandle& A, const CurFactors& cur) {
    Eigen::MatrixXd residual = A.to_dense();
    if (cur.empty()) return residual;
    const Eigen::MatrixXd core_r = apply_pinv_left(cur.core, cur.R.to_dense());
    residual -= matmul(cur.C, core_r);
    return residual;
}

}  // namespace itercur

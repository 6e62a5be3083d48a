#include "itercur/select.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace itercur {

namespace {

constexpr double kAbsFloorFactor = 1e2 * std::numeric_limits<double>::epsilon();

std::vector<char> build_mask(Index size, const IndexList& exclude, const char* where) {
    std::vector<char> banned(static_cast<std::size_t>(size), 0);
    for (Index e : exclude) {
        if (e < 0 || e >= size)
            throw std::out_of_range(std::string(where) + ": excluded index " +
                                    std::to_string(e) + " out of range");
        banned[static_cast<std::size_t>(e)] = 1;
    }
    return banned;
}

void validate(const Eigen::MatrixXd& M, const SelectionMethod& method) {
    if (!(method.pivot_floor > 0.0 && method.pivot_floor < 1.0))
        throw std::invalid_argument("pivot_floor must lie in (0, 1)");
    if (!M.allFinite()) throw std::invalid_argument("selection input must be finite");
}

// Partially pivoted elimination over the rows of W. At step s the pivot is
// the largest |W(i, s)| among unbanned rows (lowest index on ties); the pivot
// row is then eliminated from the remaining candidates. Equivalent to the
// pivot sequence of classic row-swapping LUPP.
SelectionResult lupp_pivot_rows(Eigen::MatrixXd W, Index b, double pivot_floor,
                                double abs_floor, std::vector<char> banned) {
    SelectionResult result;
    const Index steps = std::min(b, W.cols());
    double first_pivot = 0.0;

    for (Index s = 0; s < steps; ++s) {
        Index best = -1;
        double best_mag = -1.0;
        for (Index i = 0; i < W.rows(); ++i) {
            if (banned[static_cast<std::size_t>(i)]) continue;
            const double mag = std::abs(W(i, s));
            if (mag > best_mag) {
                best_mag = mag;
                best = i;
            }
        }
        if (best < 0 || best_mag <= abs_floor) break;
        if (s == 0)
            first_pivot = best_mag;
        else if (best_mag < pivot_floor * first_pivot)
            break;

        result.indices.push_back(best);
        result.last_pivot_magnitude = best_mag;
        banned[static_cast<std::size_t>(best)] = 1;

        if (s + 1 < W.cols()) {
            const double pivot = W(best, s);
            for (Index i = 0; i < W.rows(); ++i) {
                if (banned[static_cast<std::size_t>(i)]) continue;
                const double factor = W(i, s) / pivot;
                W.row(i).tail(W.cols() - s - 1) -=
                    factor * W.row(best).tail(W.cols() - s - 1);
            }
        }
    }

    result.truncated = static_cast<Index>(result.indices.size()) < b;
    return result;
}

// Greedy orthogonalized-column-norm pivoting over the columns of W: pick the
// candidate of largest residual norm, then project it out of the remaining
// candidates (norms are recomputed from the updated columns each step).
SelectionResult qrcp_pivot_cols(Eigen::MatrixXd W, Index b, double pivot_floor,
                                double abs_floor, std::vector<char> banned) {
    SelectionResult result;
    const Index steps = std::min(b, std::min(W.rows(), W.cols()));
    double first_pivot = 0.0;

    for (Index s = 0; s < steps; ++s) {
        Index best = -1;
        double best_sq = -1.0;
        for (Index j = 0; j < W.cols(); ++j) {
            if (banned[static_cast<std::size_t>(j)]) continue;
            const double sq = W.col(j).squaredNorm();
            if (sq > best_sq) {
                best_sq = sq;
                best = j;
            }
        }
        if (best < 0) break;
        const double best_mag = std::sqrt(best_sq);
        if (best_mag <= abs_floor) break;
        if (s == 0)
            first_pivot = best_mag;
        else if (best_mag < pivot_floor * first_pivot)
            break;

        result.indices.push_back(best);
        result.last_pivot_magnitude = best_mag;
        banned[static_cast<std::size_t>(best)] = 1;

        const Eigen::VectorXd q = W.col(best) / best_mag;
        for (Index j = 0; j < W.cols(); ++j) {
            if (banned[static_cast<std::size_t>(j)]) continue;
            W.col(j) -= q * q.dot(W.col(j));
        }
    }

    result.truncated = static_cast<Index>(result.indices.size()) < b;
    return result;
}

}  // namespace

SelectionResult select_columns(const Eigen::MatrixXd& M, Index b,
                               const SelectionMethod& method, const IndexList& exclude) {
    validate(M, method);
    if (b < 0 || b > M.rows())
        throw std::invalid_argument("select_columns: block size " + std::to_string(b) +
                                    " exceeds sketch rows " + std::to_string(M.rows()));
    const double abs_floor = kAbsFloorFactor * M.norm();
    auto banned = build_mask(M.cols(), exclude, "select_columns");
    switch (method.kind) {
        case PivotKind::Lupp:
            return lupp_pivot_rows(M.transpose(), b, method.pivot_floor, abs_floor,
                                   std::move(banned));
        case PivotKind::Qrcp:
            return qrcp_pivot_cols(M, b, method.pivot_floor, abs_floor, std::move(banned));
        case PivotKind::Osinsky:
            throw std::runtime_error("Osinsky selection not implemented");
    }
    throw std::logic_error("unknown selection method");
}

SelectionResult select_rows(const Eigen::MatrixXd& M, Index b,
                            const SelectionMethod& method, const IndexList& exclude) {
    validate(M, method);
    if (b < 0) throw std::invalid_argument("select_rows: negative block size");
    const Index effective = std::min(b, M.cols());
    const double abs_floor = kAbsFloorFactor * M.norm();
    auto banned = build_mask(M.rows(), exclude, "select_rows");
    switch (method.kind) {
        case PivotKind::Lupp: {
            auto result = lupp_pivot_rows(M, effective, method.pivot_floor, abs_floor,
                                          std::move(banned));
            result.truncated = static_cast<Index>(result.indices.size()) < b;
            return result;
        }
        case PivotKind::Qrcp: {
            auto result = qrcp_pivot_cols(M.transpose(), effective, method.pivot_floor,
                                          abs_floor, std::move(banned));
            result.truncated = static_cast<Index>(result.indices.size()) < b;
            return result;
        }
        case PivotKind::Osinsky:
            throw std::runtime_error("Osinsky selection not implemented");
    }
    throw std::logic_error("unknown selection method");
}

}  // namespace itercur

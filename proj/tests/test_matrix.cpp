#include <doctest.h>

#include "itercur/matrix.hpp"
#include "oracles.hpp"

using namespace itercur;

namespace {

MatrixHandle lehmer3() {
    Eigen::MatrixXd a(3, 3);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j)
            a(i, j) = static_cast<double>(std::min(i, j) + 1) / static_cast<double>(std::max(i, j) + 1);
    return MatrixHandle(a);
}

}  // namespace

TEST_CASE("gather_cols on the identity") {
    const MatrixHandle eye(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2)));
    const IndexList j{1};
    const Eigen::MatrixXd col = gather_cols(eye, j).to_dense();
    CHECK(col.rows() == 2);
    CHECK(col.cols() == 1);
    CHECK(col(0, 0) == 0.0);
    CHECK(col(1, 0) == 1.0);
}

TEST_CASE("gather_cols on the 3x3 Lehmer matrix") {
    const IndexList j{0, 2};
    const Eigen::MatrixXd got = gather_cols(lehmer3(), j).to_dense();
    Eigen::MatrixXd want(3, 2);
    want << 1.0, 1.0 / 3.0, 1.0 / 2.0, 2.0 / 3.0, 1.0 / 3.0, 1.0;
    CHECK((got - want).norm() == 0.0);
}

TEST_CASE("gather_cols matches a brute-force copy loop bit-exactly") {
    const Eigen::MatrixXd a = oracle::random_dense(8, 8, 31);
    const IndexList j{3, 5};
    const Eigen::MatrixXd got = gather_cols(MatrixHandle(a), j).to_dense();
    const Eigen::MatrixXd want = oracle::copy_cols(a, j);
    CHECK(got == want);
}

TEST_CASE("gather_rows on the identity and a sparse diagonal") {
    const MatrixHandle eye(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2)));
    const Eigen::MatrixXd row = gather_rows(eye, IndexList{0}).to_dense();
    CHECK(row(0, 0) == 1.0);
    CHECK(row(0, 1) == 0.0);

    const MatrixHandle diag(4, 4, {0, 1, 2, 3, 4}, {0, 1, 2, 3}, {1.0, 2.0, 3.0, 4.0});
    const MatrixHandle picked = gather_rows(diag, IndexList{2, 3});
    CHECK(picked.is_sparse());
    CHECK(picked.nnz() == 2);
    const Eigen::MatrixXd dense = picked.to_dense();
    CHECK(dense(0, 2) == 3.0);
    CHECK(dense(1, 3) == 4.0);
}

TEST_CASE("sparse row gather matches densify-then-copy") {
    const MatrixHandle a = oracle::random_sparse(20, 20, 0.2, 77);
    const IndexList i{7};
    const Eigen::MatrixXd got = gather_rows(a, i).to_dense();
    const Eigen::MatrixXd want = oracle::copy_rows(a.to_dense(), i);
    CHECK(got == want);
}

TEST_CASE("gather rejects out-of-range indices with the offending index") {
    const MatrixHandle eye(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2)));
    CHECK_THROWS_WITH_AS(gather_cols(eye, IndexList{5}),
                         doctest::Contains("index 5"), std::out_of_range);
    CHECK_THROWS_WITH_AS(gather_rows(eye, IndexList{-1}),
                         doctest::Contains("index -1"), std::out_of_range);
}

TEST_CASE("sparse column gather agrees with the dense path on both cache branches") {
    const MatrixHandle a = oracle::random_sparse(25, 30, 0.15, 5);
    const Eigen::MatrixXd dense = a.to_dense();
    const IndexList j{1, 4, 9, 17, 28};
    // The transpose cache kicks in after a few gathers; every round must
    // produce the same result.
    for (int round = 0; round < 8; ++round) {
        const MatrixHandle got = gather_cols(a, j);
        CHECK(got.is_sparse());
        CHECK(got.to_dense() == oracle::copy_cols(dense, j));
    }
}

TEST_CASE("matmul identity and hand arithmetic") {
    const MatrixHandle eye(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2)));
    const Eigen::MatrixXd b = oracle::random_dense(2, 3, 12);
    CHECK(matmul(eye, MatrixHandle(b)).to_dense() == b);

    Eigen::MatrixXd a(2, 2);
    a << 1, 2, 3, 4;
    Eigen::MatrixXd v(2, 1);
    v << 0, 1;
    const Eigen::MatrixXd got = matmul(MatrixHandle(a), MatrixHandle(v)).to_dense();
    CHECK(got(0, 0) == 2.0);
    CHECK(got(1, 0) == 4.0);
}

TEST_CASE("sparse times dense matches the triple-loop oracle") {
    const MatrixHandle a = oracle::random_sparse(30, 30, 0.2, 41);
    const Eigen::MatrixXd b = oracle::random_dense(30, 5, 42);
    const Eigen::MatrixXd got = matmul(a, MatrixHandle(b)).to_dense();
    const Eigen::MatrixXd want = oracle::triple_loop_product(a.to_dense(), b);
    CHECK((got - want).norm() <= 1e-13 * want.norm());
}

TEST_CASE("all storage combinations agree with the densified product") {
    const MatrixHandle a = oracle::random_sparse(12, 9, 0.3, 8);
    const MatrixHandle b = oracle::random_sparse(9, 7, 0.3, 9);
    const Eigen::MatrixXd want = oracle::triple_loop_product(a.to_dense(), b.to_dense());
    const MatrixHandle ad(a.to_dense());
    const MatrixHandle bd(b.to_dense());
    for (const auto* left : {&a, &ad})
        for (const auto* right : {&b, &bd}) {
            const MatrixHandle got = matmul(*left, *right);
            CHECK_FALSE(got.is_sparse());
            CHECK((got.to_dense() - want).norm() <= 1e-13 * want.norm());
        }
}

TEST_CASE("matmul reports both shapes on a dimension mismatch") {
    const MatrixHandle a(Eigen::MatrixXd(Eigen::MatrixXd::Zero(2, 3)));
    const MatrixHandle b(Eigen::MatrixXd(Eigen::MatrixXd::Zero(2, 3)));
    CHECK_THROWS_WITH_AS(matmul(a, b), doctest::Contains("(2x3) * (2x3)"),
                         std::invalid_argument);
}

TEST_CASE("fro_norm basics and oracle agreement") {
    CHECK(fro_norm(MatrixHandle(Eigen::MatrixXd(Eigen::MatrixXd::Zero(5, 5)))) == 0.0);
    CHECK(fro_norm(MatrixHandle(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2)))) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    const Eigen::MatrixXd a = oracle::random_dense(10, 10, 3);
    const double want = oracle::sum_of_squares_norm(a);
    CHECK(fro_norm(MatrixHandle(a)) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("gather then fro_norm equals the norm of the copied submatrix") {
    const MatrixHandle a = oracle::random_sparse(15, 12, 0.4, 21);
    const IndexList j{0, 3, 11};
    const IndexList i{2, 5, 9, 14};
    CHECK(fro_norm(gather_cols(a, j)) ==
          oracle::sum_of_squares_norm(oracle::copy_cols(a.to_dense(), j)));
    CHECK(fro_norm(gather_rows(a, i)) ==
          oracle::sum_of_squares_norm(oracle::copy_rows(a.to_dense(), i)));
}

TEST_CASE("matmul is associative to 1e-12 on random triples") {
    for (unsigned seed = 0; seed < 20; ++seed) {
        const MatrixHandle a(oracle::random_dense(10, 10, 100 + seed));
        const MatrixHandle b(oracle::random_dense(10, 10, 200 + seed));
        const MatrixHandle c(oracle::random_dense(10, 10, 300 + seed));
        const Eigen::MatrixXd left = matmul(matmul(a, b), c).to_dense();
        const Eigen::MatrixXd right = matmul(a, matmul(b, c)).to_dense();
        CHECK((left - right).norm() <= 1e-12 * left.norm());
    }
}

TEST_CASE("CSR construction validates its invariants") {
    CHECK_THROWS_AS(MatrixHandle(2, 2, {0, 1}, {0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(MatrixHandle(2, 2, {0, 2, 1}, {0, 1}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(MatrixHandle(1, 3, {0, 2}, {2, 1}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(MatrixHandle(1, 2, {0, 1}, {5}, {1.0}), std::out_of_range);
    CHECK_THROWS_AS(MatrixHandle(1, 1, {0, 1}, {0}, {std::nan("")}), std::invalid_argument);
    Eigen::MatrixXd bad(1, 1);
    bad(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(MatrixHandle{bad}, std::invalid_argument);
}

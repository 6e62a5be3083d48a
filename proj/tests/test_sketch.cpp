#include <doctest.h>

#include <algorithm>

#include "itercur/baselines.hpp"
#include "itercur/rng.hpp"
#include "itercur/select.hpp"
#include "itercur/sketch.hpp"
#include "oracles.hpp"

using namespace itercur;

TEST_CASE("sketch of the zero matrix") {
    const MatrixHandle zero(Eigen::MatrixXd(Eigen::MatrixXd::Zero(5, 5)));
    const SketchState state = make_sketch(1, 2, zero);
    CHECK(state.sketched_input.norm() == 0.0);
    CHECK(state.ga_norm == 0.0);
}

TEST_CASE("identity input copies the embedding, and c = floor(1.1 b)") {
    const MatrixHandle eye(Eigen::MatrixXd(Eigen::MatrixXd::Identity(4, 4)));
    const SketchState state = make_sketch(9, 2, eye);
    CHECK(state.c == 2);  // floor(2.2)
    CHECK(state.sketched_input == state.embedding);
    CHECK(state.col_residual == state.sketched_input);

    CHECK(sketch_rows_for_block(1) == 1);
    CHECK(sketch_rows_for_block(10) == 11);
    CHECK(sketch_rows_for_block(50) == 55);
    CHECK(sketch_rows_for_block(100) == 110);
    CHECK(sketch_rows_for_block(250) == 275);
}

TEST_CASE("same seed gives a bitwise-identical sketch") {
    const MatrixHandle a(oracle::random_dense(12, 10, 2));
    const SketchState s1 = make_sketch(42, 3, a);
    const SketchState s2 = make_sketch(42, 3, a);
    CHECK(s1.embedding == s2.embedding);
    CHECK(s1.col_residual == s2.col_residual);
    const SketchState s3 = make_sketch(43, 3, a);
    CHECK(s1.embedding != s3.embedding);
}

TEST_CASE("the embedding depends only on seed and shape, not storage") {
    const MatrixHandle sparse = oracle::random_sparse(10, 8, 0.3, 4);
    const MatrixHandle dense(sparse.to_dense());
    const SketchState s1 = make_sketch(7, 2, sparse);
    const SketchState s2 = make_sketch(7, 2, dense);
    CHECK(s1.embedding == s2.embedding);
    CHECK((s1.sketched_input - s2.sketched_input).norm() <=
          1e-13 * s2.sketched_input.norm());
}

TEST_CASE("make_sketch validates the block size") {
    const MatrixHandle a(oracle::random_dense(4, 6, 1));
    CHECK_THROWS_AS(make_sketch(0, 0, a), std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_sketch(0, 5, a), doctest::Contains("block exceeds row count"),
                         std::invalid_argument);
}

TEST_CASE("downdate with empty factors resets the residual and returns 1") {
    const MatrixHandle a(oracle::random_dense(8, 6, 3));
    SketchState state = make_sketch(5, 2, a);
    state.col_residual.setZero();
    const double rho = downdate_col_residual(state, CurFactors{});
    CHECK(rho == 1.0);
    CHECK(state.col_residual == state.sketched_input);
}

TEST_CASE("one block interpolates a rank-1 matrix") {
    const Eigen::MatrixXd u = oracle::random_gaussian(30, 1, 11);
    const Eigen::MatrixXd v = oracle::random_gaussian(20, 1, 12);
    const MatrixHandle a(Eigen::MatrixXd(u * v.transpose()));

    SketchState state = make_sketch(8, 1, a);
    const SelectionMethod lupp{};
    const SelectionResult cols = select_columns(state.col_residual, 1, lupp, {});
    REQUIRE(cols.indices.size() == 1);
    const Eigen::MatrixXd s_row = row_residual(a, CurFactors{}, cols.indices);
    const SelectionResult rows = select_rows(s_row, 1, lupp, {});
    REQUIRE(rows.indices.size() == 1);

    const CurFactors cur = make_cur_factors(a, rows.indices, cols.indices);
    const double rho = downdate_col_residual(state, cur);
    CHECK(rho <= 1e-12);
}

TEST_CASE("downdated residual matches a from-scratch sketch of the residual") {
    const Eigen::MatrixXd g1 = oracle::random_gaussian(40, 5, 21);
    const Eigen::MatrixXd g2 = oracle::random_gaussian(30, 5, 22);
    const MatrixHandle a(Eigen::MatrixXd(g1 * g2.transpose()));

    const CurFactors cur = slupp_cur(a, 5, 17);
    SketchState state = make_sketch(3, 4, a);
    const double rho = downdate_col_residual(state, cur);

    const Eigen::MatrixXd fresh = state.embedding * naive_cur_residual(a, cur);
    const double want = fresh.norm() / state.ga_norm;
    CHECK(rho == doctest::Approx(want).epsilon(1e-12));
    CHECK((state.col_residual - fresh).norm() <= 1e-11 * state.ga_norm);
}

TEST_CASE("recycled-sketch identity holds across seeds and shapes") {
    for (unsigned seed = 0; seed < 20; ++seed) {
        const Index m = 30 + static_cast<Index>(seed % 4) * 20;
        const Index n = 25 + static_cast<Index>(seed % 3) * 25;
        const Eigen::MatrixXd dense = oracle::random_gaussian(m, n, 500 + seed);
        const MatrixHandle a(dense);
        const CurFactors cur = slupp_cur(a, 4 + static_cast<Index>(seed % 3), 900 + seed);

        SketchState state = make_sketch(seed, 5, a);
        downdate_col_residual(state, cur);
        const Eigen::MatrixXd fresh = state.embedding * naive_cur_residual(a, cur);
        CHECK((state.col_residual - fresh).norm() <= 1e-11 * fresh.norm());
    }
}

TEST_CASE("residual entries vanish on previously selected columns") {
    const Eigen::MatrixXd dense = oracle::random_gaussian(25, 25, 61);
    const MatrixHandle a(dense);
    const CurFactors cur = slupp_cur(a, 6, 62);
    SketchState state = make_sketch(8, 6, a);
    downdate_col_residual(state, cur);
    double worst = 0.0;
    for (Index j : cur.col_indices)
        worst = std::max(worst, state.col_residual.col(j).cwiseAbs().maxCoeff());
    CHECK(worst <= 1e-10 * state.ga_norm);
}

TEST_CASE("sketched norm estimator concentrates around the true norm") {
    // 200x200 rank-20 matrix plus mild noise, 500 unit-variance embeddings
    // with c = 110; the theorem's variance convention needs a 1/sqrt(c)
    // rescale. The empirical median of the rescaled ratio must sit in
    // [0.9, 1.1].
    const Eigen::MatrixXd g1 = oracle::random_gaussian(200, 20, 71);
    const Eigen::MatrixXd g2 = oracle::random_gaussian(200, 20, 72);
    Eigen::MatrixXd s = g1 * g2.transpose();
    const Eigen::MatrixXd noise = oracle::random_gaussian(200, 200, 73);
    s += (1e-6 * s.norm() / noise.norm()) * noise;

    const Index c = 110;
    const double s_norm = s.norm();
    std::vector<double> ratios;
    ratios.reserve(500);
    for (unsigned t = 0; t < 500; ++t) {
        const Eigen::MatrixXd g = gaussian_matrix(c, 200, 1000 + t, RngStream::Sketch);
        ratios.push_back((g * s).norm() / std::sqrt(static_cast<double>(c)) / s_norm);
    }
    std::nth_element(ratios.begin(), ratios.begin() + 250, ratios.end());
    const double median = ratios[250];
    CHECK(median >= 0.9);
    CHECK(median <= 1.1);
}

TEST_CASE("row residual without factors is the gathered columns") {
    const MatrixHandle a = oracle::random_sparse(12, 10, 0.4, 81);
    const IndexList j{2, 7};
    const Eigen::MatrixXd got = row_residual(a, CurFactors{}, j);
    CHECK(got == oracle::copy_cols(a.to_dense(), j));
}

TEST_CASE("row residual of the identity after selecting (0, 0)") {
    const MatrixHandle eye(Eigen::MatrixXd(Eigen::MatrixXd::Identity(3, 3)));
    const CurFactors cur = make_cur_factors(eye, IndexList{0}, IndexList{0});
    const Eigen::MatrixXd got = row_residual(eye, cur, IndexList{1});
    Eigen::MatrixXd want(3, 1);
    want << 0, 1, 0;
    CHECK((got - want).norm() <= 1e-15);
}

TEST_CASE("row residual matches the naive residual at the requested columns") {
    const Eigen::MatrixXd dense = oracle::random_gaussian(20, 20, 91);
    const MatrixHandle a(dense);
    const CurFactors cur = slupp_cur(a, 4, 92);

    IndexList fresh;
    for (Index j = 0; j < 20 && fresh.size() < 2; ++j)
        if (std::find(cur.col_indices.begin(), cur.col_indices.end(), j) ==
            cur.col_indices.end())
            fresh.push_back(j);

    const Eigen::MatrixXd got = row_residual(a, cur, fresh);
    const Eigen::MatrixXd full = naive_cur_residual(a, cur);
    const Eigen::MatrixXd want = oracle::copy_cols(full, fresh);
    CHECK((got - want).norm() <= 1e-12 * dense.norm());

    // Rows already held by the factors are numerically zero.
    for (Index i : cur.row_indices)
        CHECK(got.row(i).cwiseAbs().maxCoeff() <=
              1e-10 * oracle::copy_cols(dense, fresh).norm());
}

TEST_CASE("row residual rejects columns that are already selected") {
    const MatrixHandle a(oracle::random_dense(6, 6, 95));
    const CurFactors cur = make_cur_factors(a, IndexList{0}, IndexList{3});
    CHECK_THROWS_AS(row_residual(a, cur, IndexList{3}), std::invalid_argument);
}

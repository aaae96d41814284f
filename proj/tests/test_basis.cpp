#include <doctest.h>

#include <cmath>

#include "opgeo/basis.hpp"
#include "opgeo/errors.hpp"
#include "oracles.hpp"

using namespace opgeo;

namespace {

OperatorSpec euclid_op(Mat m) {
    const std::size_t r = m.rows, c = m.cols;
    return OperatorSpec::make(std::move(m), SpaceSpec::euclidean(c), SpaceSpec::euclidean(r));
}

Mat diag3(double a, double b, double c) {
    Mat m(3, 3);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

void check_basis_invariants(const OperatorSpec& op, const BasisResult& b) {
    const std::size_t n = b.vectors.size();
    REQUIRE(n == op.domain.dim);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(norm(op.domain, b.vectors[i]) - 1.0) <= 1e-12);
        for (std::size_t j = i + 1; j < n; ++j)
            CHECK(std::abs(inner(op.domain, b.vectors[i], b.vectors[j])) <= 1e-10);
    }
    const double bound = 1e-8 * (b.image_norms[0] * b.image_norms[0] +
                                 2.220446049250313e-16);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) CHECK(std::abs(b.image_gram(i, j)) <= bound);
    for (std::size_t i = 1; i < n; ++i) CHECK(b.image_norms[i] <= b.image_norms[i - 1]);
}

}  // namespace

TEST_CASE("deflation on a diagonal operator") {
    const OperatorSpec op = euclid_op(diag3(3, 2, 1));
    const BasisResult b = greedy_orthogonal_basis(op);
    check_basis_invariants(op, b);
    CHECK(b.image_norms[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(b.image_norms[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(b.image_norms[2] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < 3; ++i) {
        Vec e(3, 0.0);
        e[i] = 1.0;
        CHECK(nrm2(vsub(b.vectors[i], e)) <= 1e-10);  // canonical signs
    }
    CHECK(b.image_gram(0, 0) == doctest::Approx(9.0));
    CHECK(b.image_gram(1, 1) == doctest::Approx(4.0));
    CHECK(b.image_gram(2, 2) == doctest::Approx(1.0));
}

TEST_CASE("deflation on a rotation: any orthonormal pair, unit images") {
    const double th = 0.7;
    Mat rot(2, 2);
    rot(0, 0) = std::cos(th);
    rot(0, 1) = -std::sin(th);
    rot(1, 0) = std::sin(th);
    rot(1, 1) = std::cos(th);
    const OperatorSpec op = euclid_op(std::move(rot));
    const BasisResult b = greedy_orthogonal_basis(op);
    check_basis_invariants(op, b);
    CHECK(b.image_norms[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.image_norms[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("deflation matches the eigenvalue-route singular values") {
    SplitMix64 rng(61);
    const Mat m = random_orthogonal(4, rng);
    Mat a(4, 4);
    for (double& v : a.a) v = rng.gaussian();
    const OperatorSpec op = euclid_op(a);
    const BasisResult b = greedy_orthogonal_basis(op);
    check_basis_invariants(op, b);
    const std::vector<double> sv = oracle::singular_values_by_eig(a.a, 4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(b.image_norms[i] == doctest::Approx(sv[i]).epsilon(1e-8));
    (void)m;
}

TEST_CASE("deflation equals singular values across random shapes") {
    SplitMix64 rng(67);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = 2 + rng.next_u64() % 5;
        const std::size_t cols = 2 + rng.next_u64() % 5;
        Mat a(rows, cols);
        for (double& v : a.a) v = rng.gaussian();
        const OperatorSpec op = euclid_op(a);
        const BasisResult b = greedy_orthogonal_basis(op);
        check_basis_invariants(op, b);
        std::vector<double> sv = oracle::singular_values_by_eig(a.a, rows, cols);
        sv.resize(cols, 0.0);
        for (std::size_t i = 0; i < cols; ++i)
            CHECK(b.image_norms[i] == doctest::Approx(sv[i]).epsilon(1e-8));
    }
}

TEST_CASE("degenerate spectrum still yields an orthonormal basis") {
    const OperatorSpec op = euclid_op(Mat::identity(4));
    const BasisResult b = greedy_orthogonal_basis(op);
    check_basis_invariants(op, b);
    for (double s : b.image_norms) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("verification accepts the construction and rejects a mixed basis") {
    const OperatorSpec op = euclid_op(diag3(3, 2, 1));
    const BasisResult good = greedy_orthogonal_basis(op);
    CHECK(verify_orthogonality_on_basis(op, good));

    BasisResult bad = good;
    const double c = 1.0 / std::sqrt(2.0);
    bad.vectors = {{c, c, 0}, {c, -c, 0}, {0, 0, 1}};
    CHECK_FALSE(verify_orthogonality_on_basis(op, bad));  // <Tx1,Tx2> = 5/2

    BasisResult wrong_size = good;
    wrong_size.vectors.pop_back();
    CHECK_THROWS_AS(verify_orthogonality_on_basis(op, wrong_size), InvalidInput);
}

TEST_CASE("rank-one operators map kernel directions to zero images") {
    Mat m(2, 2);
    m(0, 0) = 1.0;
    const OperatorSpec op = euclid_op(m);
    const BasisResult b = greedy_orthogonal_basis(op);
    check_basis_invariants(op, b);
    CHECK(b.image_norms[0] == doctest::Approx(1.0));
    CHECK(b.image_norms[1] <= 1e-12);
    CHECK(verify_orthogonality_on_basis(op, b));

    const SvdComparison cmp = compare_with_svd(op);
    CHECK(cmp.rank == 1);
    CHECK(cmp.rank_deficient);  // T(S) is not a basis
    CHECK(cmp.singular_values[0] == doctest::Approx(1.0));
    CHECK(cmp.singular_values[1] <= 1e-12);
}

TEST_CASE("svd comparison on exact and random inputs") {
    const SvdComparison diag_cmp = compare_with_svd(euclid_op(diag3(3, 2, 1)));
    CHECK(diag_cmp.max_value_gap <= 1e-12);
    for (double a : diag_cmp.subspace_angles) CHECK(a <= 1e-7);
    CHECK_FALSE(diag_cmp.rank_deficient);

    SplitMix64 rng(71);
    Mat a(5, 5);
    for (double& v : a.a) v = rng.gaussian();
    const SvdComparison cmp = compare_with_svd(euclid_op(a));
    CHECK(cmp.max_value_gap <= 1e-8);
    for (double ang : cmp.subspace_angles) CHECK(ang <= 1e-5);
}

TEST_CASE("deflation requires Euclidean spaces") {
    CHECK_THROWS_AS(greedy_orthogonal_basis(OperatorSpec::make(
                        Mat::identity(2), SpaceSpec::lp(1, 2), SpaceSpec::lp(1, 2))),
                    InvalidInput);
}

TEST_CASE("deflation with gram-weighted domain") {
    Mat g(2, 2);
    g(0, 0) = 2.0;
    g(0, 1) = 0.5;
    g(1, 0) = 0.5;
    g(1, 1) = 1.0;
    const SpaceSpec dom = SpaceSpec::euclidean_gram(g);
    Mat a(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 0.3;
    a(1, 1) = 0.4;
    const OperatorSpec op = OperatorSpec::make(a, dom, SpaceSpec::euclidean(2));
    const BasisResult b = greedy_orthogonal_basis(op);
    check_basis_invariants(op, b);
    // First vector attains the operator norm.
    CHECK(b.image_norms[0] == doctest::Approx(operator_norm(op).value).epsilon(1e-10));
}

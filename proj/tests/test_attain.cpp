#include <doctest.h>

#include <cmath>

#include "opgeo/attain.hpp"
#include "opgeo/errors.hpp"
#include "oracles.hpp"

using namespace opgeo;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Mat mat2(double a, double b, double c, double d) {
    Mat m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

OperatorSpec euclid_op(Mat m) {
    const std::size_t r = m.rows, c = m.cols;
    return OperatorSpec::make(std::move(m), SpaceSpec::euclidean(c), SpaceSpec::euclidean(r));
}

Mat random_mat(std::size_t r, std::size_t c, SplitMix64& rng) {
    Mat m(r, c);
    for (double& v : m.a) v = rng.gaussian();
    return m;
}

}  // namespace

TEST_CASE("operator norm: spectral on diagonal") {
    const auto r = operator_norm(euclid_op(mat2(2, 0, 0, 1)));
    CHECK(r.method == NormMethod::Spectral);
    CHECK(r.certified);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(r.argmax[0]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r.argmax[1]) <= 1e-12);
}

TEST_CASE("operator norm: vertex enumeration on the sup plane") {
    const SpaceSpec linf = SpaceSpec::lp(kInf, 2);
    const OperatorSpec op = OperatorSpec::make(mat2(1, 1, 0, 0), linf, linf);

    // Enumeration oracle over the four sign vertices.
    double expected = 0.0;
    for (double s1 : {-1.0, 1.0})
        for (double s2 : {-1.0, 1.0})
            expected = std::max(expected, std::abs(s1 + s2));
    CHECK(expected == 2.0);  // frozen

    const auto r = operator_norm(op);
    CHECK(r.method == NormMethod::Vertex);
    CHECK(r.value == doctest::Approx(2.0));
    CHECK(r.argmax == Vec{1, 1});
    CHECK(norm(op.codomain, matvec(op.matrix, r.argmax)) ==
          doctest::Approx(r.value).epsilon(1e-10));
}

TEST_CASE("operator norm: identity on any space") {
    for (const SpaceSpec& s : {SpaceSpec::euclidean(3), SpaceSpec::lp(1, 3),
                               SpaceSpec::lp(kInf, 3), SpaceSpec::lp(2.7, 3)}) {
        const OperatorSpec op = OperatorSpec::make(Mat::identity(3), s, s);
        const auto r = operator_norm(op, NormMethod::Auto, 5);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("operator norm: multistart agrees with certified methods") {
    SplitMix64 rng(41);
    for (int i = 0; i < 30; ++i) {
        const std::size_t dim = 2 + i % 3;
        const Mat m = random_mat(dim, dim, rng);
        const OperatorSpec op = euclid_op(m);
        const double exact = operator_norm(op, NormMethod::Spectral).value;
        const double lower = operator_norm(op, NormMethod::Multistart, 100 + i).value;
        CHECK(lower == doctest::Approx(exact).epsilon(1e-6));
    }
    const SpaceSpec linf = SpaceSpec::lp(kInf, 2);
    for (int i = 0; i < 30; ++i) {
        const OperatorSpec op = OperatorSpec::make(random_mat(2, 2, rng), linf, linf);
        const double exact = operator_norm(op, NormMethod::Vertex).value;
        const double lower = operator_norm(op, NormMethod::Multistart, 200 + i).value;
        CHECK(lower == doctest::Approx(exact).epsilon(1e-6));
    }
}

TEST_CASE("operator norm: method restrictions and zero matrix") {
    const OperatorSpec op = OperatorSpec::make(mat2(1, 0, 0, 1), SpaceSpec::lp(3, 2),
                                               SpaceSpec::lp(3, 2));
    CHECK_THROWS_AS(operator_norm(op, NormMethod::Spectral), InvalidInput);
    CHECK_THROWS_AS(operator_norm(op, NormMethod::Vertex), InvalidInput);
    const OperatorSpec zero = euclid_op(mat2(0, 0, 0, 0));
    CHECK(operator_norm(zero).value == doctest::Approx(0.0));
    CHECK(operator_norm(zero, NormMethod::Multistart).value == doctest::Approx(0.0));
}

TEST_CASE("attainment set: diagonal and identity") {
    const AttainmentSet att = norm_attainment_set(euclid_op(mat2(2, 0, 0, 1)));
    CHECK(att.op_norm == doctest::Approx(2.0));
    CHECK(att.exhaustive);
    CHECK_FALSE(att.degenerate);
    REQUIRE(att.euclidean_subspace.has_value());
    CHECK(att.euclidean_subspace->cols == 1);
    CHECK(std::abs((*att.euclidean_subspace)(0, 0)) == doctest::Approx(1.0));
    REQUIRE(att.points.size() == 2);

    const AttainmentSet id = norm_attainment_set(euclid_op(Mat::identity(2)));
    REQUIRE(id.euclidean_subspace.has_value());
    CHECK(id.euclidean_subspace->cols == 2);  // M_T = S_X
    CHECK(id.exhaustive);

    const AttainmentSet zero = norm_attainment_set(euclid_op(mat2(0, 0, 0, 0)));
    CHECK(zero.degenerate);
    CHECK(zero.op_norm == 0.0);
    CHECK(zero.euclidean_subspace->cols == 2);
}

TEST_CASE("attainment set: the flat-segment operator on the sup plane") {
    const SpaceSpec linf = SpaceSpec::lp(kInf, 2);
    const OperatorSpec op = OperatorSpec::make(mat2(1, 0, 1, 0), linf, linf);
    const AttainmentSet att = norm_attainment_set(op);
    CHECK(att.op_norm == doctest::Approx(1.0));
    CHECK(att.exhaustive);
    CHECK(att.points.size() == 4);  // every vertex attains
    REQUIRE(att.faces.size() == 2);  // the two faces x = +-1
    for (const auto& f : att.faces) {
        CHECK(std::abs(f.first[0]) == 1.0);
        CHECK(f.first[0] == f.second[0]);
    }
}

TEST_CASE("attainment set: multistart cloud on a smooth plane") {
    const SpaceSpec l4 = SpaceSpec::lp(4, 2);
    const OperatorSpec op = OperatorSpec::make(mat2(2, 0, 0, 1), l4, l4);
    const AttainmentSet att = norm_attainment_set(op, 1e-8, 3);
    CHECK_FALSE(att.exhaustive);
    CHECK(att.op_norm == doctest::Approx(2.0).epsilon(1e-8));
    REQUIRE(!att.points.empty());
    for (const Vec& p : att.points) {
        CHECK(norm(op.domain, p) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(norm(op.codomain, matvec(op.matrix, p)) >= att.op_norm - 1e-7);
    }
}

TEST_CASE("attainment sanity and scaling invariance of M_T") {
    SplitMix64 rng(43);
    for (int i = 0; i < 40; ++i) {
        const Mat m = random_mat(3, 3, rng);
        const OperatorSpec op = euclid_op(m);
        const AttainmentSet att = norm_attainment_set(op);
        for (const Vec& p : att.points) {
            CHECK(norm(op.domain, p) == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(norm(op.codomain, matvec(op.matrix, p)) >= att.op_norm - 1e-8);
        }
        double c = 0.0;
        while (std::abs(c) < 0.1) c = 2.0 * rng.gaussian();
        const AttainmentSet scaled_att = norm_attainment_set(euclid_op(mscale(m, c)));
        REQUIRE(scaled_att.points.size() == att.points.size());
        for (std::size_t j = 0; j < att.points.size(); ++j)
            CHECK(nrm2(vsub(scaled_att.points[j], att.points[j])) <= 1e-8);
        CHECK(scaled_att.op_norm == doctest::Approx(std::abs(c) * att.op_norm));
    }
}

TEST_CASE("attainment subspace: sampled unit vectors of the span attain") {
    SplitMix64 rng(47);
    for (int i = 0; i < 20; ++i) {
        // Build a 3x3 with a genuinely two-dimensional top subspace.
        const Mat u = random_orthogonal(3, rng), v = random_orthogonal(3, rng);
        Mat s(3, 3);
        s(0, 0) = 1.5;
        s(1, 1) = 1.5;
        s(2, 2) = 0.3;
        const Mat m = matmul(u, matmul(s, transpose(v)));
        const OperatorSpec op = euclid_op(m);
        const AttainmentSet att = norm_attainment_set(op, 1e-6);
        REQUIRE(att.euclidean_subspace.has_value());
        REQUIRE(att.euclidean_subspace->cols == 2);
        for (int t = 0; t < 10; ++t) {
            Vec combo = vadd(scaled(att.euclidean_subspace->col(0), rng.gaussian()),
                             scaled(att.euclidean_subspace->col(1), rng.gaussian()));
            if (nrm2(combo) < 1e-6) continue;
            combo = scaled(combo, 1.0 / nrm2(combo));
            CHECK(nrm2(matvec(m, combo)) == doctest::Approx(att.op_norm).epsilon(1e-8));
        }
    }
}

TEST_CASE("membership conditions on the diagonal example") {
    const OperatorSpec op = euclid_op(mat2(2, 0, 0, 1));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    const MembershipReport at_e1 = check_membership_conditions(op, {1, 0});
    CHECK(at_e1.cond_i_holds);
    CHECK(at_e1.cond_ii_holds);
    CHECK(at_e1.member);
    CHECK(at_e1.image_norm == doctest::Approx(2.0));
    CHECK(at_e1.complement_sup == doctest::Approx(1.0));

    const MembershipReport at_e2 = check_membership_conditions(op, {0, 1});
    CHECK(at_e2.cond_i_holds);
    CHECK_FALSE(at_e2.cond_ii_holds);
    CHECK_FALSE(at_e2.member);
    CHECK(at_e2.complement_sup == doctest::Approx(2.0));
    CHECK(at_e2.image_norm == doctest::Approx(1.0));

    const MembershipReport mixed = check_membership_conditions(op, {inv_sqrt2, inv_sqrt2});
    CHECK_FALSE(mixed.cond_i_holds);
    CHECK_FALSE(mixed.member);
    // <Tx, Ty> = 3/2 for y = (e1 - e2)/sqrt(2)
    const Vec tx = matvec(op.matrix, Vec{inv_sqrt2, inv_sqrt2});
    const Vec ty = matvec(op.matrix, Vec{inv_sqrt2, -inv_sqrt2});
    CHECK(dot(tx, ty) == doctest::Approx(1.5));

    CHECK_THROWS_AS(
        check_membership_conditions(OperatorSpec::make(mat2(1, 0, 0, 1), SpaceSpec::lp(1, 2),
                                           SpaceSpec::lp(1, 2)),
                        {1, 0}),
        InvalidInput);
    CHECK_THROWS_AS(check_membership_conditions(op, {1, 1}), InvalidInput);  // not unit
}

TEST_CASE("membership equivalence on random operators") {
    SplitMix64 rng(53);
    for (int i = 0; i < 40; ++i) {
        const Mat m = random_mat(3, 3, rng);
        const OperatorSpec op = euclid_op(m);
        const AttainmentSet att = norm_attainment_set(op);
        REQUIRE(att.euclidean_subspace.has_value());
        const Mat& basis = *att.euclidean_subspace;
        for (int t = 0; t < 5; ++t) {
            Vec x(3, 0.0);
            for (std::size_t c = 0; c < basis.cols; ++c)
                x = vadd(x, scaled(basis.col(c), rng.gaussian()));
            if (nrm2(x) < 1e-6) continue;
            x = scaled(x, 1.0 / nrm2(x));
            CHECK(check_membership_conditions(op, x).member);
        }
        for (int t = 0; t < 5; ++t) {
            Vec x(3);
            for (double& v : x) v = rng.gaussian();
            x = scaled(x, 1.0 / nrm2(x));
            if (nrm2(matvec(m, x)) > att.op_norm - 1e-3) continue;
            CHECK_FALSE(check_membership_conditions(op, x).member);
        }
    }
}

TEST_CASE("orthogonality preservation at attaining and non-attaining points") {
    const OperatorSpec op = euclid_op(mat2(2, 0, 0, 1));
    CHECK(preserves_orthogonality_at(op, {1, 0}, 32, 1));
    const double c = 1.0 / std::sqrt(2.0);
    CHECK_FALSE(preserves_orthogonality_at(op, {c, c}, 32, 1));

    const double th = 0.5235987755982988;  // 30 degrees
    const OperatorSpec rot =
        euclid_op(mat2(std::cos(th), -std::sin(th), std::sin(th), std::cos(th)));
    CHECK(preserves_orthogonality_at(rot, {c, c}, 32, 2));
    CHECK(preserves_orthogonality_at(rot, {1, 0}, 32, 3));

    const OperatorSpec lp_op =
        OperatorSpec::make(mat2(2, 0, 0, 1), SpaceSpec::lp(3, 2), SpaceSpec::lp(3, 2));
    CHECK(preserves_orthogonality_at(lp_op, {1, 0}, 24, 4));

    CHECK_THROWS_AS(preserves_orthogonality_at(
                        OperatorSpec::make(mat2(1, 0, 0, 1), SpaceSpec::lp(1, 2),
                                           SpaceSpec::lp(1, 2)),
                        {1, 0}, 8, 0),
                    InvalidInput);
}

TEST_CASE("orthogonality is never preserved at a kernel vector of T != 0") {
    const OperatorSpec op = euclid_op(mat2(1, 0, 0, 0));
    CHECK_FALSE(preserves_orthogonality_at(op, {0, 1}, 16, 9));
}

TEST_CASE("operator validation") {
    CHECK_THROWS_AS(OperatorSpec::make(mat2(1, 0, 0, 1), SpaceSpec::euclidean(3),
                                       SpaceSpec::euclidean(2)),
                    InvalidInput);
    Mat bad = mat2(1, 0, 0, std::nan(""));
    CHECK_THROWS_AS(OperatorSpec::make(std::move(bad), SpaceSpec::euclidean(2),
                                       SpaceSpec::euclidean(2)),
                    InvalidInput);
}

TEST_CASE("whitened gram operators match explicit coordinates") {
    // Domain gram diag(1,4): whitening must reproduce norms computed the
    // slow way.
    Mat g(2, 2);
    g(0, 0) = 1.0;
    g(1, 1) = 4.0;
    const SpaceSpec dom = SpaceSpec::euclidean_gram(g);
    const SpaceSpec cod = SpaceSpec::euclidean(2);
    const OperatorSpec op = OperatorSpec::make(mat2(1, 2, 0, 1), dom, cod);
    const auto r = operator_norm(op);
    SplitMix64 rng(59);
    double best = 0.0;
    for (int i = 0; i < 20000; ++i) {
        Vec x{rng.gaussian(), rng.gaussian()};
        const double nx = norm(dom, x);
        if (nx < 1e-9) continue;
        best = std::max(best, nrm2(matvec(op.matrix, scaled(x, 1.0 / nx))));
    }
    CHECK(r.value >= best - 1e-9);
    CHECK(r.value == doctest::Approx(best).epsilon(1e-3));
    CHECK(norm(dom, r.argmax) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(nrm2(matvec(op.matrix, r.argmax)) == doctest::Approx(r.value).epsilon(1e-10));
}

#include "opgeo/extreme.hpp"

#include <algorithm>
#include <cmath>

#include "opgeo/errors.hpp"

namespace opgeo {

namespace {

bool vertex_enumerable(const SpaceSpec& s) {
    if (s.kind == SpaceKind::Polyhedral2D) return true;
    if (s.is_l1()) return s.dim <= 16;
    if (s.is_linf()) return s.dim <= 16;
    return false;
}

void require_square_hilbert(const OperatorSpec& op) {
    if (!is_euclidean_like(op.domain) || !is_euclidean_like(op.codomain) ||
        op.domain.dim != op.codomain.dim)
        throw InvalidInput("not_square_hilbert",
                           "this classification requires a square operator between "
                           "Euclidean spaces");
}

double min_sigma(const std::vector<Vec>& cols) {
    if (cols.empty()) return 0.0;
    Mat m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    const SvdResult s = svd(m);
    return s.sigma.back();
}

// Face centroids of vertex-enumerable unit balls; together with the
// vertices they pin ||Tv|| = ||v|| on the whole sphere by convexity.
std::vector<Vec> face_centroids(const SpaceSpec& s) {
    std::vector<Vec> out;
    if (s.dim == 2) {
        const std::vector<Vec> cycle = vertex_cycle_2d(s);
        for (std::size_t i = 0; i < cycle.size(); ++i)
            out.push_back(scaled(vadd(cycle[i], cycle[(i + 1) % cycle.size()]), 0.5));
        return out;
    }
    if (s.is_linf()) {
        for (std::size_t i = 0; i < s.dim; ++i) {
            Vec e(s.dim, 0.0);
            e[i] = 1.0;
            out.push_back(e);
            e[i] = -1.0;
            out.push_back(e);
        }
        return out;
    }
    // l1: one simplex face per sign vector.
    const std::size_t count = std::size_t{1} << s.dim;
    for (std::size_t b = 0; b < count; ++b) {
        Vec c(s.dim, 1.0 / static_cast<double>(s.dim));
        for (std::size_t i = 0; i < s.dim; ++i)
            if (b & (std::size_t{1} << i)) c[i] = -c[i];
        out.push_back(c);
    }
    return out;
}

}  // namespace

IsometryCheck is_isometry_check(const OperatorSpec& op, double tol, std::uint64_t seed) {
    IsometryCheck r;
    if (is_euclidean_like(op.domain) && is_euclidean_like(op.codomain)) {
        if (op.matrix.rows < op.matrix.cols) {
            // A wide matrix has a kernel and cannot be an isometry.
            r.isometry = false;
            r.max_residual = 1.0;
            return r;
        }
        const Mat m = whitened_matrix(op);
        const Mat mtm = matmul(transpose(m), m);
        Mat res = msub(mtm, Mat::identity(m.cols));
        r.max_residual = max_abs(res);
        r.isometry = r.max_residual <= tol;
        return r;
    }
    if (vertex_enumerable(op.domain)) {
        double worst = 0.0;
        const ExtremePoints ext = unit_ball_extreme_points(op.domain);
        for (const Vec& v : ext.points)
            worst = std::max(worst,
                             std::abs(norm(op.codomain, matvec(op.matrix, v)) - 1.0));
        for (const Vec& c : face_centroids(op.domain)) {
            const double nc = norm(op.domain, c);
            worst = std::max(
                worst, std::abs(norm(op.codomain, matvec(op.matrix, c)) - nc) / nc);
        }
        r.max_residual = worst;
        r.isometry = worst <= tol;
        return r;
    }
    r.certified = false;  // sampled check only
    double worst = 0.0;
    for (const Vec& v : sphere_sample(op.domain, seed ^ 0x69736fULL, 500))
        worst = std::max(worst, std::abs(norm(op.codomain, matvec(op.matrix, v)) - 1.0));
    r.max_residual = worst;
    r.isometry = worst <= tol;
    return r;
}

bool is_isometry(const OperatorSpec& op, double tol, std::uint64_t seed) {
    return is_isometry_check(op, tol, seed).isometry;
}

std::optional<ExtremeCertificate> sufficient_extreme_check(const OperatorSpec& op,
                                                           double tol,
                                                           std::uint64_t seed) {
    const OperatorNormResult nr = operator_norm(op, NormMethod::Auto, seed);
    if (std::abs(nr.value - 1.0) > tol)
        throw InvalidInput("norm_not_one",
                           "the certificate semantics require a contraction of norm one");
    const std::size_t n = op.domain.dim;
    const AttainmentSet att = norm_attainment_set(op, tol, seed);

    std::vector<Vec> candidates = att.points;
    for (const auto& face : att.faces) {
        Vec mid = scaled(vadd(face.first, face.second), 0.5);
        candidates.push_back(scaled(mid, 1.0 / norm(op.domain, mid)));
    }
    if (candidates.size() < n) return std::nullopt;

    // Greedy selection maximizing the smallest singular value of the
    // chosen set; quantified independence is part of the certificate.
    std::vector<Vec> chosen;
    std::vector<bool> used(candidates.size(), false);
    for (std::size_t round = 0; round < n; ++round) {
        double best_sigma = -1.0;
        std::size_t best_idx = candidates.size();
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (used[i]) continue;
            chosen.push_back(candidates[i]);
            const double s = min_sigma(chosen);
            chosen.pop_back();
            if (s > best_sigma) {
                best_sigma = s;
                best_idx = i;
            }
        }
        if (best_idx == candidates.size()) return std::nullopt;
        used[best_idx] = true;
        chosen.push_back(candidates[best_idx]);
    }
    const double smin = min_sigma(chosen);
    if (smin < 1e-6) return std::nullopt;

    ExtremeCertificate cert;
    cert.attainment_vectors = chosen;
    cert.min_singular_value = smin;
    Mat m(chosen[0].size(), chosen.size());
    for (std::size_t j = 0; j < chosen.size(); ++j) m.set_col(j, chosen[j]);
    const SvdResult s = svd(m);
    cert.basis_condition_number = s.sigma.front() / s.sigma.back();

    const bool auto_extreme = is_strictly_convex(op.codomain);
    for (const Vec& x : chosen) {
        // Reject vectors that do not actually attain.
        const double image = norm(op.codomain, matvec(op.matrix, x));
        if (image < 1.0 - 10.0 * tol * std::max(1.0, nr.value)) return std::nullopt;
        if (auto_extreme) {
            cert.image_extreme_flags.push_back(true);
            continue;
        }
        Vec img = matvec(op.matrix, x);
        img = scaled(img, 1.0 / norm(op.codomain, img));
        const bool flag = is_extreme_point(op.codomain, img, std::max(tol, 1e-8));
        if (!flag) return std::nullopt;
        cert.image_extreme_flags.push_back(true);
    }
    return cert;
}

WitnessPair nonextreme_witness(const OperatorSpec& op, double tol, std::uint64_t seed) {
    require_square_hilbert(op);
    const Mat m = whitened_matrix(op);
    const std::size_t n = op.domain.dim;
    const double opn = spectral_norm(m);
    if (std::abs(opn - 1.0) > tol)
        throw InvalidInput("norm_not_one", "witness construction requires ||T|| = 1");
    if (is_isometry(op, tol, seed))
        throw InvalidInput("isometry_has_no_witness",
                           "an isometry is extreme and admits no midpoint witness");

    const BasisResult basis = greedy_orthogonal_basis(op, seed);
    std::size_t k = 0;
    while (k < n && basis.image_norms[k] >= 1.0 - tol) ++k;
    if (k == n)
        throw InvalidInput("isometry_has_no_witness",
                           "every basis vector attains the norm");
    if (k == 0)
        throw NumericalFailure("witness_no_attainment",
                               "||T|| = 1 but no basis vector attains it");

    std::vector<Vec> basis_w;
    for (const Vec& x : basis.vectors) {
        Vec xw = domain_to_whitened(op.domain, x);
        basis_w.push_back(scaled(xw, 1.0 / nrm2(xw)));
    }

    WitnessPair wp;
    wp.k = k;
    wp.basis_used = basis;
    const double s_next = basis.image_norms[k];

    Mat delta(m.rows, m.cols);
    if (s_next > tol) {
        wp.case_tag = WitnessCase::CaseI;
        wp.epsilon = std::min(0.5, 0.5 * (1.0 / s_next - 1.0));
        // delta = eps * M * P, P the projector onto the trailing basis span.
        Mat proj(n, n);
        for (std::size_t i = k; i < n; ++i)
            proj = rank1_update(proj, 1.0, basis_w[i], basis_w[i]);
        delta = mscale(matmul(m, proj), wp.epsilon);
    } else {
        wp.case_tag = WitnessCase::CaseII;
        // w spans the orthogonal complement of the attained images.
        Mat rows(k, m.rows);
        for (std::size_t i = 0; i < k; ++i) {
            const Vec img = matvec(m, basis_w[i]);
            for (std::size_t j = 0; j < m.rows; ++j) rows(i, j) = img[j];
        }
        const SvdResult s = svd(rows);
        std::size_t null_start = 0;
        while (null_start < s.sigma.size() &&
               s.sigma[null_start] > 1e-10 * std::max(1.0, s.sigma[0]))
            ++null_start;
        const std::size_t null_dim = m.rows - null_start;
        if (null_dim == 0)
            throw NumericalFailure("witness_no_null_vector",
                                   "attained images span the whole codomain");
        Mat null_basis(m.rows, null_dim);
        for (std::size_t j = 0; j < null_dim; ++j)
            null_basis.set_col(j, s.v.col(null_start + j));
        const Vec w_w = subspace_representative(null_basis);
        wp.w = w_w;
        if (op.codomain.gram_chol) {
            Vec w0 = solve_upper_t(*op.codomain.gram_chol, w_w);
            wp.w = scaled(w0, 1.0 / norm(op.codomain, w0));
        }
        delta = rank1_update(delta, 0.5, w_w, basis_w[k]);
    }

    const Mat m1 = madd(m, delta);
    const Mat m2 = msub(m, delta);
    const double n1 = spectral_norm(m1);
    const double n2 = spectral_norm(m2);
    if (std::abs(n1 - 1.0) > 1e-8 || std::abs(n2 - 1.0) > 1e-8)
        throw NumericalFailure("witness_norm_off",
                               "perturbed operator norm deviates from one beyond 1e-8");

    // Map back to the original coordinates; t2 = 2T - t1 keeps the midpoint
    // identity at rounding scale.
    Mat t1 = m1;
    if (op.domain.gram_chol || op.codomain.gram_chol) {
        Mat left = Mat::identity(m.rows);
        if (op.codomain.gram_chol) left = inverse(transpose(*op.codomain.gram_chol));
        Mat right = Mat::identity(m.cols);
        if (op.domain.gram_chol) right = transpose(*op.domain.gram_chol);
        t1 = matmul(left, matmul(m1, right));
    }
    wp.t1 = t1;
    wp.t2 = msub(mscale(op.matrix, 2.0), t1);
    return wp;
}

ExtremenessVerdict hilbert_extreme_classify(const OperatorSpec& op, double tol,
                                            std::uint64_t seed) {
    require_square_hilbert(op);
    ExtremenessVerdict verdict;
    const Mat m = whitened_matrix(op);
    const double opn = spectral_norm(m);
    if (opn > 1.0 + tol)
        throw InvalidInput("not_contraction", "||T|| exceeds one");

    if (opn < 1.0 - tol) {
        // Interior of the operator ball: shift along a fixed unit-norm
        // direction in both ways.
        WitnessPair wp;
        wp.case_tag = WitnessCase::Interior;
        wp.epsilon = 1.0 - opn;
        Mat r(m.rows, m.cols);
        r(0, 0) = 1.0;
        Mat t1 = madd(m, mscale(r, wp.epsilon));
        if (op.domain.gram_chol || op.codomain.gram_chol) {
            Mat left = Mat::identity(m.rows);
            if (op.codomain.gram_chol)
                left = inverse(transpose(*op.codomain.gram_chol));
            Mat right = Mat::identity(m.cols);
            if (op.domain.gram_chol) right = transpose(*op.domain.gram_chol);
            t1 = matmul(left, matmul(t1, right));
        }
        wp.t1 = t1;
        wp.t2 = msub(mscale(op.matrix, 2.0), t1);
        verdict.status = ExtremeStatus::NotExtreme;
        verdict.witness = std::move(wp);
        verdict.note = "norm below one: interior point of the unit ball";
        return verdict;
    }

    const IsometryCheck iso = is_isometry_check(op, tol, seed);
    if (iso.isometry) {
        verdict.status = ExtremeStatus::Extreme;
        verdict.isometry_proof = IsometryProof{iso.max_residual};
        return verdict;
    }
    try {
        verdict.witness = nonextreme_witness(op, tol, seed);
        verdict.status = ExtremeStatus::NotExtreme;
    } catch (const InvalidInput& e) {
        // The Gram residual band (on squared singular values) is narrower
        // than the attainment band on the values themselves; an operator
        // whose whole spectrum sits within tol of one is an isometry for
        // classification purposes even when the residual is marginally out.
        if (e.code() != std::string("isometry_has_no_witness")) throw;
        verdict.status = ExtremeStatus::Extreme;
        verdict.isometry_proof = IsometryProof{iso.max_residual};
    }
    return verdict;
}

ExtremenessVerdict classify_extremeness(const OperatorSpec& op, double tol,
                                        std::uint64_t seed) {
    if (is_euclidean_like(op.domain) && is_euclidean_like(op.codomain) &&
        op.domain.dim == op.codomain.dim)
        return hilbert_extreme_classify(op, tol, seed);

    ExtremenessVerdict verdict;
    const OperatorNormResult nr = operator_norm(op, NormMethod::Auto, seed);
    if (nr.value > 1.0 + tol)
        throw InvalidInput("not_contraction", "||T|| exceeds one");
    if (nr.value < 1.0 - tol) {
        if (!nr.certified) {
            verdict.status = ExtremeStatus::Inconclusive;
            verdict.note = "multistart norm is only a lower bound; cannot certify an "
                           "interior point";
            return verdict;
        }
        // Interior witness along a certified unit-norm rank-one direction:
        // u f^T with u a unit codomain vector and f a support functional.
        Vec e1(op.domain.dim, 0.0);
        e1[0] = 1.0;
        const Vec f = support_functional(op.domain, e1);
        Vec u(op.codomain.dim, 0.0);
        u[0] = 1.0;
        u = scaled(u, 1.0 / norm(op.codomain, u));
        WitnessPair wp;
        wp.case_tag = WitnessCase::Interior;
        wp.epsilon = 1.0 - nr.value;
        wp.t1 = rank1_update(op.matrix, wp.epsilon, u, f);
        wp.t2 = msub(mscale(op.matrix, 2.0), wp.t1);
        verdict.status = ExtremeStatus::NotExtreme;
        verdict.witness = std::move(wp);
        verdict.note = "norm below one: interior point of the unit ball";
        return verdict;
    }
    std::optional<ExtremeCertificate> cert = sufficient_extreme_check(op, tol, seed);
    if (cert) {
        verdict.status = ExtremeStatus::Extreme;
        verdict.certificate = std::move(cert);
        return verdict;
    }
    verdict.status = ExtremeStatus::Inconclusive;
    verdict.note =
        "no sufficiency certificate found; absence does not prove non-extremeness";
    return verdict;
}

FlatSegmentCounterexample flat_segment_counterexample(const SpaceSpec& space, std::uint64_t seed) {
    if (space.dim != 2)
        throw InvalidInput("dimension_mismatch", "the construction lives on a plane");
    if (is_strictly_convex(space))
        throw InvalidInput("strictly_convex",
                           "a flat segment of the sphere is required");

    const SegmentDescriptor seg = *find_flat_segment(space);
    const ExtremePoints ext = unit_ball_extreme_points(space);
    const Vec w = ext.points.front();

    // T with T(x) = w, T(y) = 0, assembled in the (x, y) basis.
    Mat xy(2, 2);
    xy.set_col(0, seg.interior_point);
    xy.set_col(1, seg.direction);
    Mat img(2, 2);
    img.set_col(0, w);
    const Mat t = matmul(img, inverse(xy));

    FlatSegmentCounterexample r{OperatorSpec::make(t, space, space), {}, {}, {}, {}, 0.0, 0.0};
    r.segment_endpoints_v1 = vadd(seg.interior_point, scaled(seg.direction, seg.lambda1));
    r.segment_endpoints_v2 = vadd(seg.interior_point, scaled(seg.direction, seg.lambda2));
    r.non_isometry_witness = seg.direction;
    r.witness_image_norm = norm(space, matvec(t, seg.direction));

    const OperatorNormResult nr = operator_norm(r.op, NormMethod::Vertex, seed);
    r.op_norm = nr.value;
    if (std::abs(r.op_norm - 1.0) > 1e-12)
        throw NumericalFailure("counterexample_norm_off",
                               "constructed operator norm is not vertex-exact one");

    ExtremeCertificate cert;
    cert.attainment_vectors = {r.segment_endpoints_v1, r.segment_endpoints_v2};
    for (const Vec& v : cert.attainment_vectors) {
        Vec image = matvec(t, v);
        image = scaled(image, 1.0 / norm(space, image));
        cert.image_extreme_flags.push_back(is_extreme_point(space, image));
    }
    cert.min_singular_value = min_sigma(cert.attainment_vectors);
    Mat vm(2, 2);
    vm.set_col(0, cert.attainment_vectors[0]);
    vm.set_col(1, cert.attainment_vectors[1]);
    const SvdResult s = svd(vm);
    cert.basis_condition_number = s.sigma.front() / s.sigma.back();
    r.certificate = std::move(cert);
    return r;
}

namespace {

// Operator defined by sending two unit domain vectors to two unit codomain
// vectors; its norm is always >= 1, with equality exactly at the
// configurations we are searching for.
struct AngleCandidate {
    Mat t;
    Vec u1, u2;
    bool valid = false;
};

AngleCandidate candidate_from_angles(const SpaceSpec& space, const double th[4]) {
    AngleCandidate c;
    auto unit_at = [&](double a) {
        Vec v{std::cos(a), std::sin(a)};
        return scaled(v, 1.0 / norm(space, v));
    };
    c.u1 = unit_at(th[0]);
    c.u2 = unit_at(th[1]);
    Mat u(2, 2);
    u.set_col(0, c.u1);
    u.set_col(1, c.u2);
    const double det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    if (std::abs(det) < 0.05) return c;
    Mat wmat(2, 2);
    wmat.set_col(0, unit_at(th[2]));
    wmat.set_col(1, unit_at(th[3]));
    c.t = matmul(wmat, inverse(u));
    c.valid = true;
    return c;
}

}  // namespace

std::optional<ExtremeSearchResult> search_extreme_nonisometry(const SpaceSpec& space,
                                                              std::uint64_t seed,
                                                              long budget) {
    if (space.dim != 2)
        throw InvalidInput("dimension_mismatch", "the search runs on planes");
    if (is_euclidean_like(space))
        throw InvalidInput("euclidean_refused",
                           "on a Euclidean plane extreme contractions are isometries; "
                           "the search cannot succeed");
    if (!is_strictly_convex(space))
        throw InvalidInput("not_strictly_convex",
                           "use the flat-segment construction instead");

    long evals = 0;
    auto op_norm_of = [&](const Mat& t, int restarts) {
        ++evals;
        return operator_norm(OperatorSpec::make(t, space, space),
                             NormMethod::Multistart, seed ^ 0xacce55, restarts)
            .value;
    };

    auto certify = [&](const Mat& t, const Vec& u1, const Vec& u2)
        -> std::optional<ExtremeSearchResult> {
        OperatorSpec op = OperatorSpec::make(t, space, space);
        const double value = operator_norm(op, NormMethod::Multistart, seed ^ 0xcf11, 50).value;
        const double residual = std::abs(value - 1.0);
        if (residual > 1e-6) return std::nullopt;
        const double smin = min_sigma({u1, u2});
        if (smin < 1e-3) return std::nullopt;
        if (norm(space, matvec(t, u1)) < 1.0 - 1e-9) return std::nullopt;
        if (norm(space, matvec(t, u2)) < 1.0 - 1e-9) return std::nullopt;
        if (is_isometry(op, 1e-8, seed)) return std::nullopt;
        ExtremeSearchResult r{std::move(op), {}, residual, evals};
        ExtremeCertificate cert;
        cert.attainment_vectors = {u1, u2};
        cert.image_extreme_flags = {true, true};  // strictly convex codomain
        cert.min_singular_value = smin;
        Mat um(2, 2);
        um.set_col(0, u1);
        um.set_col(1, u2);
        const SvdResult s = svd(um);
        cert.basis_condition_number = s.sigma.front() / s.sigma.back();
        r.certificate = std::move(cert);
        return r;
    };

    // Deterministic first candidates: scaled Hadamard maps attain at two
    // independent vectors on every lp plane, p != 2.
    if (space.kind == SpaceKind::Lp) {
        Mat h(2, 2);
        h(0, 0) = 1.0;
        h(0, 1) = 1.0;
        h(1, 0) = 1.0;
        h(1, 1) = -1.0;
        const double inv_p = 1.0 / space.p;
        const double scale = (space.p >= 2.0) ? std::pow(2.0, -(1.0 - inv_p))
                                              : std::pow(2.0, -inv_p);
        const Mat t = mscale(h, scale);
        Vec u1, u2;
        if (space.p >= 2.0) {
            const double c = std::pow(2.0, -inv_p);
            u1 = {c, c};
            u2 = {c, -c};
        } else {
            u1 = {1.0, 0.0};
            u2 = {0.0, 1.0};
        }
        if (auto r = certify(t, u1, u2)) return r;
    }

    // Random starts with Nelder-Mead refinement over the four angles
    // (two attainment directions, two images).
    SplitMix64 rng = SplitMix64(seed).fork(0xeccc);
    const double two_pi = 6.283185307179586;
    auto objective = [&](const double th[4]) {
        const AngleCandidate c = candidate_from_angles(space, th);
        if (!c.valid) return 10.0;
        return op_norm_of(c.t, 6);
    };

    while (evals < budget) {
        double simplex[5][4];
        double fval[5];
        for (int j = 0; j < 4; ++j) simplex[0][j] = rng.uniform(0.0, two_pi);
        for (int i = 1; i < 5; ++i) {
            for (int j = 0; j < 4; ++j)
                simplex[i][j] = simplex[0][j] + (i - 1 == j ? 0.35 : 0.0);
        }
        for (int i = 0; i < 5; ++i) fval[i] = objective(simplex[i]);

        for (int it = 0; it < 220 && evals < budget; ++it) {
            int order[5] = {0, 1, 2, 3, 4};
            std::sort(order, order + 5, [&](int a, int b) { return fval[a] < fval[b]; });
            const int lo = order[0], hi = order[4], second = order[3];
            if (fval[lo] < 1.0 + 5e-8) break;
            if (fval[hi] - fval[lo] < 1e-12) break;
            double centroid[4] = {0, 0, 0, 0};
            for (int i = 0; i < 5; ++i)
                if (i != hi)
                    for (int j = 0; j < 4; ++j) centroid[j] += simplex[i][j] / 4.0;
            double refl[4];
            for (int j = 0; j < 4; ++j) refl[j] = centroid[j] + (centroid[j] - simplex[hi][j]);
            const double fr = objective(refl);
            if (fr < fval[lo]) {
                double expd[4];
                for (int j = 0; j < 4; ++j)
                    expd[j] = centroid[j] + 2.0 * (centroid[j] - simplex[hi][j]);
                const double fe = objective(expd);
                if (fe < fr) {
                    std::copy(expd, expd + 4, simplex[hi]);
                    fval[hi] = fe;
                } else {
                    std::copy(refl, refl + 4, simplex[hi]);
                    fval[hi] = fr;
                }
            } else if (fr < fval[second]) {
                std::copy(refl, refl + 4, simplex[hi]);
                fval[hi] = fr;
            } else {
                double contr[4];
                for (int j = 0; j < 4; ++j)
                    contr[j] = centroid[j] + 0.5 * (simplex[hi][j] - centroid[j]);
                const double fc = objective(contr);
                if (fc < fval[hi]) {
                    std::copy(contr, contr + 4, simplex[hi]);
                    fval[hi] = fc;
                } else {
                    for (int i = 0; i < 5; ++i) {
                        if (i == lo) continue;
                        for (int j = 0; j < 4; ++j)
                            simplex[i][j] = simplex[lo][j] + 0.5 * (simplex[i][j] - simplex[lo][j]);
                        fval[i] = objective(simplex[i]);
                    }
                }
            }
        }
        int best = 0;
        for (int i = 1; i < 5; ++i)
            if (fval[i] < fval[best]) best = i;
        if (fval[best] < 1.0 + 5e-8) {
            const AngleCandidate c = candidate_from_angles(space, simplex[best]);
            if (c.valid) {
                if (auto r = certify(c.t, c.u1, c.u2)) return r;
            }
        }
    }
    return std::nullopt;
}

}  // namespace opgeo

#include "opgeo/attain.hpp"

#include <algorithm>
#include <cmath>

#include "opgeo/bjorth.hpp"
#include "opgeo/errors.hpp"

namespace opgeo {

namespace {

constexpr double kEpsMachine = 2.220446049250313e-16;

bool vertex_enumerable(const SpaceSpec& s) {
    if (s.kind == SpaceKind::Polyhedral2D) return true;
    if (s.is_l1()) return true;
    if (s.is_linf()) return s.dim <= 16;
    return false;
}

bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

struct Candidate {
    double value = -1.0;
    Vec argmax;
};

// Reduction by max with a deterministic tie-break: among values equal up
// to 1e-13 relative, keep the lexicographically smallest canonical argmax.
void reduce_max(Candidate& best, double value, const Vec& x) {
    const Vec cx = canonical_unit(x);
    const double band = 1e-13 * (1.0 + std::max(best.value, value));
    if (value > best.value + band) {
        best.value = value;
        best.argmax = cx;
        return;
    }
    if (value >= best.value - band && !best.argmax.empty() && lex_less(cx, best.argmax)) {
        best.argmax = cx;
        best.value = std::max(best.value, value);
    }
}

OperatorNormResult norm_by_spectral(const OperatorSpec& op) {
    const Mat m = whitened_matrix(op);
    const SvdResult s = svd(m);
    OperatorNormResult r;
    r.method = NormMethod::Spectral;
    r.certified = true;
    r.value = s.sigma.empty() ? 0.0 : s.sigma[0];
    Vec x = domain_from_whitened(op.domain, s.v.col(0));
    const double nx = norm(op.domain, x);
    r.argmax = canonical_unit(scaled(x, 1.0 / nx));
    return r;
}

OperatorNormResult norm_by_vertex(const OperatorSpec& op) {
    const ExtremePoints ext = unit_ball_extreme_points(op.domain);
    OperatorNormResult r;
    r.method = NormMethod::Vertex;
    r.certified = true;
    Candidate best;
    for (const Vec& v : ext.points) {
        const double val = norm(op.codomain, matvec(op.matrix, v));
        reduce_max(best, val, v);
    }
    r.value = best.value;
    r.argmax = best.argmax;
    return r;
}

// One monotone fixed-point step of the nonlinear power iteration
// x <- argmax_{||u||<=1} <A^T f(Ax), u>; never decreases ||Ax||.
bool dual_ascent_step(const OperatorSpec& op, Vec& x, double& f) {
    const Vec y = matvec(op.matrix, x);
    if (norm(op.codomain, y) <= 1e-300) return false;
    const Vec z = matTvec(op.matrix, support_functional(op.codomain, y));
    if (nrm2(z) <= 1e-300) return false;
    const Vec xn = dual_argmax(op.domain, z);
    const double fn = norm(op.codomain, matvec(op.matrix, xn));
    if (fn >= f) {
        x = xn;
        const bool improved = fn > f + 1e-15 * (1.0 + f);
        f = fn;
        return improved;
    }
    return false;
}

OperatorNormResult norm_by_multistart(const OperatorSpec& op, std::uint64_t seed,
                                      int restarts) {
    OperatorNormResult r;
    r.method = NormMethod::Multistart;
    r.certified = false;
    const std::vector<Vec> starts =
        sphere_sample(op.domain, seed ^ 0x6d756c7469ULL, static_cast<std::size_t>(restarts));
    Candidate best;
    for (const Vec& start : starts) {
        Vec x = start;
        double f = norm(op.codomain, matvec(op.matrix, x));
        // Normalized gradient ascent with step halving.
        double step = 0.5;
        for (int it = 0; it < 200 && step > 1e-13; ++it) {
            const Vec y = matvec(op.matrix, x);
            if (norm(op.codomain, y) <= 1e-300) break;
            Vec g = matTvec(op.matrix, support_functional(op.codomain, y));
            const double gn = nrm2(g);
            if (gn <= 1e-300) break;
            g = scaled(g, 1.0 / gn);
            bool accepted = false;
            while (step > 1e-13) {
                Vec xn = vadd(x, scaled(g, step));
                const double nn = norm(op.domain, xn);
                if (nn > 1e-300) {
                    xn = scaled(xn, 1.0 / nn);
                    const double fn = norm(op.codomain, matvec(op.matrix, xn));
                    if (fn > f) {
                        x = xn;
                        f = fn;
                        step *= 1.3;
                        accepted = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if (!accepted) break;
        }
        // Short monotone polish.
        int stall = 0;
        for (int it = 0; it < 200 && stall < 4; ++it)
            stall = dual_ascent_step(op, x, f) ? 0 : stall + 1;
        reduce_max(best, f, x);
    }
    // Deep polish from the winner; matters near degenerate spectra.
    if (!best.argmax.empty() && best.value > 0.0) {
        Vec x = best.argmax;
        double f = best.value;
        int stall = 0;
        for (int it = 0; it < 25000 && stall < 8; ++it)
            stall = dual_ascent_step(op, x, f) ? 0 : stall + 1;
        reduce_max(best, f, x);
    }
    if (best.value <= 1e-300 && max_abs(op.matrix) > 0.0)
        throw NumericalFailure("ascent_no_progress",
                               "multistart ascent failed to improve past zero for T != 0");
    OperatorNormResult out = r;
    out.value = std::max(best.value, 0.0);
    out.argmax = best.argmax;
    return out;
}

}  // namespace

OperatorSpec OperatorSpec::make(Mat matrix, SpaceSpec domain, SpaceSpec codomain) {
    if (matrix.rows != codomain.dim || matrix.cols != domain.dim)
        throw InvalidInput("dimension_mismatch",
                           "matrix must be codomain.dim x domain.dim");
    for (double v : matrix.a)
        if (!std::isfinite(v))
            throw InvalidInput("invalid_matrix", "matrix entries must be finite");
    OperatorSpec op;
    op.matrix = std::move(matrix);
    op.domain = std::move(domain);
    op.codomain = std::move(codomain);
    return op;
}

Vec canonical_unit(Vec v) {
    for (double c : v) {
        if (std::abs(c) > 1e-12) {
            if (c < 0.0)
                for (double& x : v) x = -x;
            break;
        }
    }
    return v;
}

Mat whitened_matrix(const OperatorSpec& op) {
    Mat m = op.matrix;
    if (op.domain.gram_chol) {
        // m <- m * Ld^{-T}: column j of the result solves Ld^T c = column j of I
        // applied from the right, i.e. rows of m times Ld^{-T}.
        const Mat& l = *op.domain.gram_chol;
        Mat r(m.rows, m.cols);
        for (std::size_t i = 0; i < m.rows; ++i) {
            Vec row(m.cols);
            for (std::size_t j = 0; j < m.cols; ++j) row[j] = m(i, j);
            // row * Ld^{-T} = (Ld^{-1} row^T)^T
            const Vec t = solve_lower(l, row);
            for (std::size_t j = 0; j < m.cols; ++j) r(i, j) = t[j];
        }
        m = r;
    }
    if (op.codomain.gram_chol) {
        const Mat lt = transpose(*op.codomain.gram_chol);
        m = matmul(lt, m);
    }
    return m;
}

Vec domain_from_whitened(const SpaceSpec& domain, const Vec& y) {
    if (!domain.gram_chol) return y;
    return solve_upper_t(*domain.gram_chol, y);
}

Vec domain_to_whitened(const SpaceSpec& domain, const Vec& x) {
    if (!domain.gram_chol) return x;
    return matTvec(*domain.gram_chol, x);
}

OperatorNormResult operator_norm(const OperatorSpec& op, NormMethod method,
                                 std::uint64_t seed, int restarts) {
    if (method == NormMethod::Auto) {
        if (is_euclidean_like(op.domain) && is_euclidean_like(op.codomain))
            method = NormMethod::Spectral;
        else if (vertex_enumerable(op.domain))
            method = NormMethod::Vertex;
        else
            method = NormMethod::Multistart;
    }
    switch (method) {
        case NormMethod::Spectral:
            if (!is_euclidean_like(op.domain) || !is_euclidean_like(op.codomain))
                throw InvalidInput("method_unsupported",
                                   "spectral method requires Euclidean domain and codomain");
            return norm_by_spectral(op);
        case NormMethod::Vertex:
            if (!vertex_enumerable(op.domain))
                throw InvalidInput("method_unsupported",
                                   "vertex method requires an enumerable domain ball");
            return norm_by_vertex(op);
        case NormMethod::Multistart:
            return norm_by_multistart(op, seed, restarts);
        case NormMethod::Auto:
            break;
    }
    throw InvalidInput("method_unsupported", "unknown norm method");
}

AttainmentSet norm_attainment_set(const OperatorSpec& op, double tol, std::uint64_t seed) {
    AttainmentSet set;
    const double zero_scale = max_abs(op.matrix);

    if (is_euclidean_like(op.domain) && is_euclidean_like(op.codomain)) {
        const Mat m = whitened_matrix(op);
        const SvdResult s = svd(m);
        const double top = s.sigma.empty() ? 0.0 : s.sigma[0];
        set.op_norm = top;
        set.exhaustive = true;
        if (top <= 1e-12 * std::max(1.0, zero_scale)) {
            // Zero operator: every unit vector attains, M_T = S_X.
            set.degenerate = true;
            set.op_norm = 0.0;
            Mat whole = Mat::identity(op.domain.dim);
            for (std::size_t j = 0; j < whole.cols; ++j) {
                Vec b = domain_from_whitened(op.domain, whole.col(j));
                b = scaled(b, 1.0 / norm(op.domain, b));
                whole.set_col(j, b);
                set.points.push_back(canonical_unit(b));
                set.points.push_back(scaled(canonical_unit(b), -1.0));
            }
            set.euclidean_subspace = whole;
            return set;
        }
        std::size_t mult = 0;
        while (mult < s.sigma.size() && s.sigma[mult] >= top - tol * std::max(1.0, top))
            ++mult;
        Mat basis(op.domain.dim, mult);
        for (std::size_t j = 0; j < mult; ++j) {
            Vec b = domain_from_whitened(op.domain, s.v.col(j));
            b = scaled(b, 1.0 / norm(op.domain, b));
            basis.set_col(j, b);
            set.points.push_back(canonical_unit(b));
            set.points.push_back(scaled(canonical_unit(b), -1.0));
        }
        set.euclidean_subspace = basis;
        return set;
    }

    if (vertex_enumerable(op.domain)) {
        const OperatorNormResult nr = operator_norm(op, NormMethod::Vertex, seed);
        set.op_norm = nr.value;
        set.exhaustive = op.domain.dim == 2;
        if (nr.value <= 1e-12 * std::max(1.0, zero_scale)) {
            set.degenerate = true;
            set.op_norm = 0.0;
        }
        const double band = tol * std::max(1.0, set.op_norm);
        if (op.domain.dim == 2) {
            const std::vector<Vec> cycle = vertex_cycle_2d(op.domain);
            const std::size_t n = cycle.size();
            std::vector<bool> attains(n, false);
            for (std::size_t i = 0; i < n; ++i) {
                const double v = norm(op.codomain, matvec(op.matrix, cycle[i]));
                attains[i] = set.degenerate || v >= set.op_norm - band;
                if (attains[i]) set.points.push_back(cycle[i]);
            }
            // A face lies in M_T iff its endpoints and midpoint attain: the
            // map t -> ||T((1-t)v1 + t v2)|| is convex, so interior
            // attainment pins the whole segment.
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t j = (i + 1) % n;
                if (!attains[i] || !attains[j]) continue;
                const Vec mid = scaled(vadd(cycle[i], cycle[j]), 0.5);
                const double vmid = norm(op.codomain, matvec(op.matrix, mid));
                if (set.degenerate || vmid >= set.op_norm - band)
                    set.faces.emplace_back(cycle[i], cycle[j]);
            }
        } else {
            const ExtremePoints ext = unit_ball_extreme_points(op.domain);
            for (const Vec& v : ext.points) {
                const double val = norm(op.codomain, matvec(op.matrix, v));
                if (set.degenerate || val >= set.op_norm - band) set.points.push_back(v);
            }
        }
        return set;
    }

    // Smooth non-Euclidean domain: multistart point cloud, lower bound only.
    const int restarts = 50;
    const std::vector<Vec> starts =
        sphere_sample(op.domain, seed ^ 0x6d756c7469ULL, restarts);
    std::vector<Vec> found;
    double best = 0.0;
    for (const Vec& start : starts) {
        Vec x = start;
        double f = norm(op.codomain, matvec(op.matrix, x));
        int stall = 0;
        for (int it = 0; it < 2000 && stall < 6; ++it)
            stall = dual_ascent_step(op, x, f) ? 0 : stall + 1;
        best = std::max(best, f);
        found.push_back(canonical_unit(x));
    }
    const OperatorNormResult nr = operator_norm(op, NormMethod::Multistart, seed);
    best = std::max(best, nr.value);
    set.op_norm = best;
    set.exhaustive = false;
    if (best <= 1e-12 * std::max(1.0, zero_scale)) set.degenerate = true;
    const double band = tol * std::max(1.0, best);
    for (const Vec& x : found) {
        const double v = norm(op.codomain, matvec(op.matrix, x));
        if (!set.degenerate && v < best - band) continue;
        bool dup = false;
        for (const Vec& q : set.points)
            if (nrm2(vsub(q, x)) < 1e-6) {
                dup = true;
                break;
            }
        if (!dup) set.points.push_back(x);
    }
    if (!nr.argmax.empty()) {
        bool dup = false;
        for (const Vec& q : set.points)
            if (nrm2(vsub(q, nr.argmax)) < 1e-6) dup = true;
        if (!dup) set.points.push_back(nr.argmax);
    }
    return set;
}

MembershipReport check_membership_conditions(const OperatorSpec& op, const Vec& x, double tol) {
    if (!is_euclidean_like(op.domain) || !is_euclidean_like(op.codomain))
        throw InvalidInput("not_euclidean",
                           "the membership characterization is Hilbert-specific");
    detail::require_dim(op.domain, x);
    if (std::abs(norm(op.domain, x) - 1.0) > tol)
        throw InvalidInput("not_unit", "x must be a unit vector");

    const Mat m = whitened_matrix(op);
    Vec xw = domain_to_whitened(op.domain, x);
    xw = scaled(xw, 1.0 / nrm2(xw));

    MembershipReport rep;
    const Vec tx = matvec(m, xw);
    rep.image_norm = nrm2(tx);

    const std::size_t n = op.domain.dim;
    if (n == 1) {
        rep.cond_i_holds = true;
        rep.cond_ii_holds = true;
        rep.member = true;
        return rep;
    }
    const Mat h = householder_complement(xw);
    const Mat th = matmul(m, h);
    double max_image = 0.0;
    double max_cross = 0.0;
    for (std::size_t j = 0; j < th.cols; ++j) {
        const Vec c = th.col(j);
        max_image = std::max(max_image, nrm2(c));
        max_cross = std::max(max_cross, std::abs(dot(tx, c)));
    }
    rep.cond_i_max_violation = max_cross / (rep.image_norm * max_image + kEpsMachine);
    rep.cond_i_holds = rep.cond_i_max_violation <= tol;
    rep.complement_sup = spectral_norm(th);
    rep.cond_ii_holds = rep.complement_sup <= rep.image_norm + tol;
    rep.member = rep.cond_i_holds && rep.cond_ii_holds;
    return rep;
}

bool preserves_orthogonality_at(const OperatorSpec& op, const Vec& x, int samples,
                                std::uint64_t seed, double tol) {
    if (!is_smooth(op.domain) || !is_smooth(op.codomain))
        throw InvalidInput("not_smooth",
                           "orthogonality preservation check requires smooth spaces");
    detail::require_dim(op.domain, x);
    if (std::abs(norm(op.domain, x) - 1.0) > tol)
        throw InvalidInput("not_unit", "x must be a unit vector");

    // Zero-vector conventions: 0 is Birkhoff-James orthogonal to everything
    // and everything is orthogonal to 0.
    auto bj_ok = [&](const SpaceSpec& s, const Vec& u, const Vec& v) {
        if (norm(s, u) <= 1e-14 || norm(s, v) <= 1e-14) return true;
        return bj_orthogonal(s, u, v, tol).orthogonal;
    };

    const Vec tx = matvec(op.matrix, x);
    const double ntx = norm(op.codomain, tx);
    const Vec fx = support_functional(op.domain, x);
    const std::vector<Vec> zs =
        sphere_sample(op.domain, seed ^ 0x70726573ULL, static_cast<std::size_t>(2 * samples));

    // Forward: x perp y must give Tx perp Ty.
    for (int s = 0; s < samples; ++s) {
        const Vec& z = zs[static_cast<std::size_t>(s)];
        const Vec y = vsub(z, scaled(x, dot(fx, z)));
        if (norm(op.domain, y) <= 1e-10) continue;
        if (!bj_ok(op.codomain, tx, matvec(op.matrix, y))) return false;
    }

    // Backward: Tx perp Ty must give x perp y; y is built in the preimage
    // of the hyperplane supporting the codomain ball at Tx.
    for (int s = 0; s < samples; ++s) {
        const Vec& z = zs[static_cast<std::size_t>(samples + s)];
        Vec y;
        if (ntx <= 1e-14) {
            y = z;  // Tx = 0: every y already satisfies Tx perp Ty
        } else {
            const Vec g = support_functional(op.codomain, tx);
            const double gx = dot(g, matvec(op.matrix, x));
            const double gz = dot(g, matvec(op.matrix, z));
            y = vsub(z, scaled(x, gz / gx));
        }
        if (norm(op.domain, y) <= 1e-10) continue;
        if (!bj_ok(op.codomain, tx, matvec(op.matrix, y))) continue;  // missed the set
        if (!bj_orthogonal(op.domain, x, y, tol).orthogonal) return false;
    }
    return true;
}

}  // namespace opgeo

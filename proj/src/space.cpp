#include "opgeo/space.hpp"

#include <algorithm>
#include <cmath>

#include "opgeo/errors.hpp"

namespace opgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxSignEnumerationDim = 16;

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

void validate_polygon(const std::vector<Vec>& vs) {
    if (vs.size() < 4 || vs.size() % 2 != 0)
        throw InvalidInput("invalid_polygon",
                           "symmetric polygon needs an even vertex count >= 4");
    for (const Vec& v : vs)
        if (v.size() != 2)
            throw InvalidInput("invalid_polygon", "polyhedral2d vertices must be 2-d");
    const std::size_t n = vs.size();
    double scale = 0.0;
    for (const Vec& v : vs) scale = std::max({scale, std::abs(v[0]), std::abs(v[1])});
    if (scale <= 0.0)
        throw InvalidInput("invalid_polygon", "degenerate polygon");
    // Strictly convex CCW cycle: every consecutive turn is a left turn.
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& a = vs[i];
        const Vec& b = vs[(i + 1) % n];
        const Vec& c = vs[(i + 2) % n];
        const double t = cross2(vsub(b, a), vsub(c, b));
        if (t < 1e-12 * scale * scale) {
            if (t < -1e-12 * scale * scale)
                throw InvalidInput("vertices_not_ccw_convex",
                                   "vertices must list a convex polygon counterclockwise");
            throw InvalidInput("invalid_polygon", "collinear or repeated vertices");
        }
    }
    // Central symmetry: each vertex's negation must be present. Asymmetric
    // input is rejected, not symmetrized.
    for (const Vec& v : vs) {
        bool found = false;
        for (const Vec& u : vs) {
            if (std::abs(u[0] + v[0]) <= 1e-9 && std::abs(u[1] + v[1]) <= 1e-9) {
                found = true;
                break;
            }
        }
        if (!found)
            throw InvalidInput("polygon_not_symmetric",
                               "vertex list is not symmetric under negation");
    }
}

// Gauge of a convex symmetric polygon: v = a*v_i + b*v_{i+1} with a,b >= 0
// on exactly one edge cone, and gauge(v) = a + b.
double polygon_gauge(const std::vector<Vec>& vs, const Vec& v) {
    if (v[0] == 0.0 && v[1] == 0.0) return 0.0;
    const std::size_t n = vs.size();
    double best_viol = kInf;
    double best_val = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& p = vs[i];
        const Vec& q = vs[(i + 1) % n];
        const double det = cross2(p, q);
        if (std::abs(det) < 1e-300) continue;
        const double a = (v[0] * q[1] - v[1] * q[0]) / det;
        const double b = (p[0] * v[1] - p[1] * v[0]) / det;
        const double viol = std::max(-std::min(a, b), 0.0);
        if (viol < best_viol) {
            best_viol = viol;
            best_val = a + b;
        }
    }
    if (!(best_viol < 1e-9))
        throw NumericalFailure("gauge_failed", "no polygon cone contains the vector");
    return best_val;
}

// Edge cone containing v, plus its barycentric coefficients.
std::size_t polygon_cone(const std::vector<Vec>& vs, const Vec& v) {
    const std::size_t n = vs.size();
    double best_viol = kInf;
    std::size_t best = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& p = vs[i];
        const Vec& q = vs[(i + 1) % n];
        const double det = cross2(p, q);
        if (std::abs(det) < 1e-300) continue;
        const double a = (v[0] * q[1] - v[1] * q[0]) / det;
        const double b = (p[0] * v[1] - p[1] * v[0]) / det;
        const double viol = std::max(-std::min(a, b), 0.0);
        if (viol < best_viol) {
            best_viol = viol;
            best = i;
        }
    }
    return best;
}

void validate_gram(const Mat& g) {
    if (g.rows != g.cols)
        throw InvalidInput("invalid_gram", "gram matrix must be square");
    for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t j = 0; j < g.cols; ++j)
            if (std::abs(g(i, j) - g(j, i)) > 1e-10 * (1.0 + max_abs(g)))
                throw InvalidInput("invalid_gram", "gram matrix must be symmetric");
    EighResult e = eigh_jacobi(g);
    if (e.values.back() <= 1e-10 * std::max(1.0, e.values.front()))
        throw InvalidInput("invalid_gram", "gram matrix must be positive definite");
}

Vec sign_vector_vertex(std::size_t dim, std::size_t bits) {
    Vec v(dim, 1.0);
    for (std::size_t i = 0; i < dim; ++i)
        if (bits & (std::size_t{1} << i)) v[i] = -1.0;
    return v;
}

}  // namespace

namespace detail {
void require_dim(const SpaceSpec& space, const Vec& v) {
    if (v.size() != space.dim)
        throw InvalidInput("dimension_mismatch", "vector length does not match space dim");
}
}  // namespace detail

SpaceSpec SpaceSpec::euclidean(std::size_t dim) {
    if (dim == 0) throw InvalidInput("invalid_dim", "dim must be positive");
    SpaceSpec s;
    s.kind = SpaceKind::Euclidean;
    s.dim = dim;
    return s;
}

SpaceSpec SpaceSpec::euclidean_gram(Mat gram) {
    if (gram.rows == 0) throw InvalidInput("invalid_dim", "dim must be positive");
    validate_gram(gram);
    SpaceSpec s;
    s.kind = SpaceKind::Euclidean;
    s.dim = gram.rows;
    s.gram_chol = cholesky(gram);
    if (!s.gram_chol)
        throw InvalidInput("invalid_gram", "gram matrix must be positive definite");
    s.gram = std::move(gram);
    return s;
}

SpaceSpec SpaceSpec::lp(double p, std::size_t dim) {
    if (dim == 0) throw InvalidInput("invalid_dim", "dim must be positive");
    if (!(p >= 1.0))  // NaN rejected too
        throw InvalidInput("invalid_exponent", "lp exponent must satisfy p >= 1 or p = inf");
    SpaceSpec s;
    s.kind = SpaceKind::Lp;
    s.dim = dim;
    s.p = p;
    return s;
}

SpaceSpec SpaceSpec::polyhedral2d(std::vector<Vec> vertices) {
    validate_polygon(vertices);
    SpaceSpec s;
    s.kind = SpaceKind::Polyhedral2D;
    s.dim = 2;
    s.vertices = std::move(vertices);
    return s;
}

double norm(const SpaceSpec& space, const Vec& v) {
    detail::require_dim(space, v);
    switch (space.kind) {
        case SpaceKind::Euclidean: {
            if (!space.gram) return nrm2(v);
            const double q = dot(v, matvec(*space.gram, v));
            return std::sqrt(std::max(q, 0.0));
        }
        case SpaceKind::Lp: {
            if (space.p == kInf) {
                double m = 0.0;
                for (double x : v) m = std::max(m, std::abs(x));
                return m;
            }
            if (space.p == 1.0) {
                double s = 0.0;
                for (double x : v) s += std::abs(x);
                return s;
            }
            double m = 0.0;
            for (double x : v) m = std::max(m, std::abs(x));
            if (m == 0.0) return 0.0;
            double s = 0.0;
            for (double x : v) s += std::pow(std::abs(x) / m, space.p);
            return m * std::pow(s, 1.0 / space.p);
        }
        case SpaceKind::Polyhedral2D:
            return polygon_gauge(space.vertices, v);
    }
    throw InvalidInput("invalid_space", "unknown space kind");
}

double inner(const SpaceSpec& space, const Vec& x, const Vec& y) {
    if (space.kind != SpaceKind::Euclidean)
        throw InvalidInput("not_euclidean", "inner product requires a Euclidean space");
    detail::require_dim(space, x);
    detail::require_dim(space, y);
    if (!space.gram) return dot(x, y);
    return dot(x, matvec(*space.gram, y));
}

bool is_strictly_convex(const SpaceSpec& space) {
    switch (space.kind) {
        case SpaceKind::Euclidean:
            return true;
        case SpaceKind::Lp:
            return space.p > 1.0 && space.p < kInf;
        case SpaceKind::Polyhedral2D:
            return false;
    }
    return false;
}

bool is_smooth(const SpaceSpec& space) {
    switch (space.kind) {
        case SpaceKind::Euclidean:
            return true;
        case SpaceKind::Lp:
            return space.p > 1.0 && space.p < kInf;
        case SpaceKind::Polyhedral2D:
            return false;
    }
    return false;
}

bool is_euclidean_like(const SpaceSpec& space) {
    return space.kind == SpaceKind::Euclidean ||
           (space.kind == SpaceKind::Lp && space.p == 2.0);
}

ExtremePoints unit_ball_extreme_points(const SpaceSpec& space) {
    ExtremePoints r;
    if (is_strictly_convex(space)) {
        r.all_of_sphere = true;
        return r;
    }
    if (space.kind == SpaceKind::Polyhedral2D) {
        r.points = space.vertices;
        return r;
    }
    if (space.is_l1()) {
        for (std::size_t i = 0; i < space.dim; ++i) {
            Vec e(space.dim, 0.0);
            e[i] = 1.0;
            r.points.push_back(e);
            e[i] = -1.0;
            r.points.push_back(e);
        }
        return r;
    }
    if (space.is_linf()) {
        if (space.dim > kMaxSignEnumerationDim)
            throw InvalidInput("dimension_too_large_for_enumeration",
                               "sup-norm extreme points are exponential in dim");
        const std::size_t count = std::size_t{1} << space.dim;
        for (std::size_t b = 0; b < count; ++b)
            r.points.push_back(sign_vector_vertex(space.dim, b));
        return r;
    }
    throw InvalidInput("invalid_space", "unknown space kind");
}

bool is_extreme_point(const SpaceSpec& space, const Vec& v, double tol) {
    detail::require_dim(space, v);
    if (std::abs(norm(space, v) - 1.0) > tol)
        throw InvalidInput("not_unit", "is_extreme_point requires a unit vector");
    if (is_strictly_convex(space)) return true;
    if (space.is_linf()) {
        for (double x : v)
            if (std::abs(std::abs(x) - 1.0) > tol) return false;
        return true;
    }
    if (space.is_l1()) {
        std::size_t imax = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
        double rest = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (i != imax) rest += std::abs(v[i]);
        return std::abs(std::abs(v[imax]) - 1.0) <= tol && rest <= tol;
    }
    for (const Vec& w : space.vertices) {
        if (norm(space, vsub(v, w)) <= tol) return true;
    }
    return false;
}

std::vector<Vec> vertex_cycle_2d(const SpaceSpec& space) {
    if (space.dim != 2)
        throw InvalidInput("dimension_mismatch", "vertex cycle requires dim 2");
    if (space.kind == SpaceKind::Polyhedral2D) return space.vertices;
    if (space.is_linf()) return {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    if (space.is_l1()) return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    throw InvalidInput("not_polyhedral", "space has no polygonal unit sphere");
}

std::optional<SegmentDescriptor> find_flat_segment(const SpaceSpec& space) {
    if (space.dim != 2)
        throw InvalidInput("dimension_mismatch", "find_flat_segment requires dim 2");
    if (is_strictly_convex(space)) return std::nullopt;

    const std::vector<Vec> cycle = vertex_cycle_2d(space);
    const std::size_t n = cycle.size();
    std::size_t best = 0;
    Vec best_mid;
    for (std::size_t i = 0; i < n; ++i) {
        Vec mid = scaled(vadd(cycle[i], cycle[(i + 1) % n]), 0.5);
        if (i == 0 || mid[0] > best_mid[0] ||
            (mid[0] == best_mid[0] && mid[1] > best_mid[1])) {
            best = i;
            best_mid = mid;
        }
    }
    const Vec& va = cycle[best];
    const Vec& vb = cycle[(best + 1) % n];
    Vec d = vsub(vb, va);
    const double len = norm(space, d);
    Vec y = scaled(d, 1.0 / len);
    double sgn = 1.0;
    for (double c : y) {
        if (std::abs(c) > 1e-12) {
            sgn = c > 0.0 ? 1.0 : -1.0;
            break;
        }
    }
    y = scaled(y, sgn);
    SegmentDescriptor seg;
    seg.interior_point = best_mid;
    seg.direction = y;
    seg.lambda1 = -len / 2.0;
    seg.lambda2 = len / 2.0;
    return seg;
}

std::vector<Vec> sphere_sample(const SpaceSpec& space, std::uint64_t seed, std::size_t count) {
    if (count == 0) throw InvalidInput("invalid_count", "count must be >= 1");
    SplitMix64 rng = SplitMix64(seed).fork(0x5a3c0de);
    std::vector<Vec> out;
    out.reserve(count);
    while (out.size() < count) {
        Vec v(space.dim);
        for (double& x : v) x = rng.gaussian();
        const double nn = norm(space, v);
        if (nn < 1e-9) continue;
        out.push_back(scaled(v, 1.0 / nn));
    }
    return out;
}

Vec support_functional(const SpaceSpec& space, const Vec& y) {
    detail::require_dim(space, y);
    const double ny = norm(space, y);
    if (ny <= 0.0)
        throw InvalidInput("zero_vector", "support functional needs a nonzero vector");
    switch (space.kind) {
        case SpaceKind::Euclidean: {
            if (!space.gram) return scaled(y, 1.0 / ny);
            return scaled(matvec(*space.gram, y), 1.0 / ny);
        }
        case SpaceKind::Lp: {
            Vec f(y.size(), 0.0);
            if (space.p == kInf) {
                std::size_t imax = 0;
                for (std::size_t i = 1; i < y.size(); ++i)
                    if (std::abs(y[i]) > std::abs(y[imax])) imax = i;
                f[imax] = y[imax] >= 0.0 ? 1.0 : -1.0;
                return f;
            }
            if (space.p == 1.0) {
                for (std::size_t i = 0; i < y.size(); ++i)
                    f[i] = (y[i] > 0.0) ? 1.0 : (y[i] < 0.0 ? -1.0 : 0.0);
                return f;
            }
            for (std::size_t i = 0; i < y.size(); ++i) {
                const double t = std::abs(y[i]) / ny;
                f[i] = (y[i] >= 0.0 ? 1.0 : -1.0) * std::pow(t, space.p - 1.0);
            }
            return f;
        }
        case SpaceKind::Polyhedral2D: {
            const std::size_t i = polygon_cone(space.vertices, y);
            const Vec& p = space.vertices[i];
            const Vec& q = space.vertices[(i + 1) % space.vertices.size()];
            // f with f(p) = f(q) = 1: the affine functional of the active face.
            Mat m(2, 2);
            m(0, 0) = p[0];
            m(0, 1) = p[1];
            m(1, 0) = q[0];
            m(1, 1) = q[1];
            return solve(m, Vec{1.0, 1.0});
        }
    }
    throw InvalidInput("invalid_space", "unknown space kind");
}

Vec dual_argmax(const SpaceSpec& space, const Vec& z) {
    detail::require_dim(space, z);
    if (nrm2(z) <= 0.0)
        throw InvalidInput("zero_vector", "dual argmax needs a nonzero vector");
    switch (space.kind) {
        case SpaceKind::Euclidean: {
            Vec x = z;
            if (space.gram_chol) {
                // maximize <z,x> s.t. x^T G x = 1  =>  x ∝ G^{-1} z
                x = solve_upper_t(*space.gram_chol, solve_lower(*space.gram_chol, z));
            }
            return scaled(x, 1.0 / norm(space, x));
        }
        case SpaceKind::Lp: {
            Vec x(z.size(), 0.0);
            if (space.p == kInf) {
                for (std::size_t i = 0; i < z.size(); ++i) x[i] = z[i] >= 0.0 ? 1.0 : -1.0;
                return x;
            }
            if (space.p == 1.0) {
                std::size_t imax = 0;
                for (std::size_t i = 1; i < z.size(); ++i)
                    if (std::abs(z[i]) > std::abs(z[imax])) imax = i;
                x[imax] = z[imax] >= 0.0 ? 1.0 : -1.0;
                return x;
            }
            double m = 0.0;
            for (double c : z) m = std::max(m, std::abs(c));
            const double dual_exp = 1.0 / (space.p - 1.0);
            for (std::size_t i = 0; i < z.size(); ++i)
                x[i] = (z[i] >= 0.0 ? 1.0 : -1.0) * std::pow(std::abs(z[i]) / m, dual_exp);
            return scaled(x, 1.0 / norm(space, x));
        }
        case SpaceKind::Polyhedral2D: {
            std::size_t best = 0;
            double best_val = -kInf;
            for (std::size_t i = 0; i < space.vertices.size(); ++i) {
                const double v = dot(z, space.vertices[i]);
                if (v > best_val) {
                    best_val = v;
                    best = i;
                }
            }
            return space.vertices[best];
        }
    }
    throw InvalidInput("invalid_space", "unknown space kind");
}

}  // namespace opgeo

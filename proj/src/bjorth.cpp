#include "opgeo/bjorth.hpp"

#include <cmath>

#include "opgeo/errors.hpp"

namespace opgeo {

namespace {

// Golden-section on a convex function over [lo, hi]. Terminates when the
// bracket width drops below 1e-12 * (1 + |midpoint|) or after 200 steps.
LambdaMin golden_section(const SpaceSpec& space, const Vec& x, const Vec& y,
                         double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    auto phi = [&](double t) { return norm(space, vadd(x, scaled(y, t))); };
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = phi(c), fd = phi(d);
    for (int it = 0; it < 200; ++it) {
        if (b - a < 1e-12 * (1.0 + std::abs(0.5 * (a + b)))) break;
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = phi(d);
        }
    }
    LambdaMin r;
    r.lambda_star = 0.5 * (a + b);
    r.value = phi(r.lambda_star);
    // lambda = 0 is always feasible; never report worse than it.
    const double f0 = phi(0.0);
    if (f0 < r.value) {
        r.lambda_star = 0.0;
        r.value = f0;
    }
    return r;
}

}  // namespace

LambdaMin min_over_lambda(const SpaceSpec& space, const Vec& x, const Vec& y) {
    detail::require_dim(space, x);
    detail::require_dim(space, y);
    const double ny = norm(space, y);
    if (ny <= 0.0)
        throw InvalidInput("zero_vector", "min_over_lambda requires y != 0");
    const double nx = norm(space, x);

    auto phi = [&](double t) { return norm(space, vadd(x, scaled(y, t))); };
    double radius = nx / ny + 1.0;
    // Expand until the minimum over a coarse stencil is interior; sound for
    // convex phi. The minimizer satisfies |t| <= 2 ||x|| / ||y||, so this
    // terminates quickly.
    for (int it = 0; it < 64; ++it) {
        const double fl = phi(-radius), fr = phi(radius);
        const double fi = std::min({phi(-radius / 2.0), phi(0.0), phi(radius / 2.0)});
        if (fi <= fl && fi <= fr) break;
        radius *= 2.0;
    }
    return golden_section(space, x, y, -radius, radius);
}

BJVerdict bj_orthogonal(const SpaceSpec& space, const Vec& x, const Vec& y, double tol) {
    detail::require_dim(space, x);
    detail::require_dim(space, y);
    const double nx = norm(space, x);
    const double ny = norm(space, y);
    if (nx <= 0.0 || ny <= 0.0)
        throw InvalidInput("zero_vector", "bj_orthogonal requires nonzero x and y");

    BJVerdict v;
    if (space.kind == SpaceKind::Euclidean) {
        // Exact route: <x,y> = 0, with the closed-form minimizer of the
        // quadratic ||x + t y||^2.
        const double xy = inner(space, x, y);
        const double yy = inner(space, y, y);
        v.minimizer_lambda = -xy / yy;
        v.min_value = norm(space, vadd(x, scaled(y, v.minimizer_lambda)));
        v.margin = v.min_value - nx;
        v.orthogonal = std::abs(xy) <= tol * nx * ny;
        return v;
    }
    const LambdaMin m = min_over_lambda(space, x, y);
    v.minimizer_lambda = m.lambda_star;
    v.min_value = m.value;
    v.margin = m.value - nx;
    v.orthogonal = v.margin >= -tol * nx;
    return v;
}

bool bj_orthogonal_exact_hilbert(const SpaceSpec& space, const Vec& x, const Vec& y,
                                 double tol) {
    if (space.kind != SpaceKind::Euclidean)
        throw InvalidInput("not_euclidean",
                           "exact hilbert test requires a Euclidean space");
    detail::require_dim(space, x);
    detail::require_dim(space, y);
    return std::abs(inner(space, x, y)) <= tol * norm(space, x) * norm(space, y);
}

}  // namespace opgeo

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "opgeo/linalg.hpp"

namespace opgeo {

enum class SpaceKind { Euclidean, Lp, Polyhedral2D };

// A finite-dimensional real normed space. Values are immutable after
// construction; the factories validate their invariants and throw
// InvalidInput on violation.
struct SpaceSpec {
    SpaceKind kind = SpaceKind::Euclidean;
    std::size_t dim = 0;
    double p = 2.0;                       // Lp exponent; +inf for the sup norm
    std::optional<Mat> gram;              // Euclidean only, SPD
    std::optional<Mat> gram_chol;         // cached lower Cholesky of gram
    std::vector<Vec> vertices;            // Polyhedral2D, CCW, symmetric

    static SpaceSpec euclidean(std::size_t dim);
    static SpaceSpec euclidean_gram(Mat gram);
    static SpaceSpec lp(double p, std::size_t dim);
    static SpaceSpec polyhedral2d(std::vector<Vec> vertices);

    bool is_linf() const {
        return kind == SpaceKind::Lp && p == std::numeric_limits<double>::infinity();
    }
    bool is_l1() const { return kind == SpaceKind::Lp && p == 1.0; }
};

// Parametrized straight segment {x + t y : lambda1 <= t <= lambda2} lying
// on the unit sphere; the endpoints are extreme points of the ball and y
// is unit and parallel to the segment.
struct SegmentDescriptor {
    Vec interior_point;
    Vec direction;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

struct ExtremePoints {
    bool all_of_sphere = false;
    std::vector<Vec> points;  // empty when all_of_sphere
};

double norm(const SpaceSpec& space, const Vec& v);

// Gram-weighted inner product; Euclidean kind only.
double inner(const SpaceSpec& space, const Vec& x, const Vec& y);

bool is_strictly_convex(const SpaceSpec& space);

// Smooth = unique supporting functional at every unit vector.
bool is_smooth(const SpaceSpec& space);

// Euclidean kind, or Lp with p == 2 (same norm, different tag).
bool is_euclidean_like(const SpaceSpec& space);

// Extreme points of the unit ball. Sign-vector enumeration for the sup
// norm is exponential and rejected above dim 16.
ExtremePoints unit_ball_extreme_points(const SpaceSpec& space);

bool is_extreme_point(const SpaceSpec& space, const Vec& v, double tol = 1e-8);

// A maximal flat segment of the unit sphere, or nullopt when the space is
// strictly convex. dim 2 only. Deterministic: the edge with the
// lexicographically largest midpoint is chosen and the direction's first
// nonzero coordinate is positive.
std::optional<SegmentDescriptor> find_flat_segment(const SpaceSpec& space);

// Deterministic unit-sphere sample: Gaussian directions normalized in the
// space's norm.
std::vector<Vec> sphere_sample(const SpaceSpec& space, std::uint64_t seed, std::size_t count);

// Subgradient of the norm at y != 0: a functional f with f(y) = ||y|| that
// supports the unit ball, i.e. f(u) <= ||u|| for all u.
Vec support_functional(const SpaceSpec& space, const Vec& y);

// Unit vector maximizing <z, x> over the unit ball, z != 0.
Vec dual_argmax(const SpaceSpec& space, const Vec& z);

// CCW cycle of unit-ball extreme points for 2-dimensional vertex-
// enumerable kinds (Polyhedral2D, l1, sup norm).
std::vector<Vec> vertex_cycle_2d(const SpaceSpec& space);

namespace detail {
void require_dim(const SpaceSpec& space, const Vec& v);
}

}  // namespace opgeo

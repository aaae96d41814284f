#pragma once

#include "opgeo/space.hpp"

namespace opgeo {

// Outcome of a Birkhoff-James orthogonality test of x against y:
// orthogonal when min over real t of ||x + t y|| stays >= ||x|| up to a
// tolerance relative to ||x||.
struct BJVerdict {
    bool orthogonal = false;
    double minimizer_lambda = 0.0;
    double min_value = 0.0;
    double margin = 0.0;  // min_value - ||x||, <= 0 up to rounding
};

// Global minimizer of the convex map t -> ||x + t y||, by bracket
// expansion and golden-section search. y must be nonzero.
struct LambdaMin {
    double lambda_star = 0.0;
    double value = 0.0;
};
LambdaMin min_over_lambda(const SpaceSpec& space, const Vec& x, const Vec& y);

BJVerdict bj_orthogonal(const SpaceSpec& space, const Vec& x, const Vec& y,
                        double tol = 1e-8);

// Exact inner-product test <x,y> = 0 within tol * ||x|| * ||y||; Euclidean
// kind only (Gram-weighted when a Gram matrix is present).
bool bj_orthogonal_exact_hilbert(const SpaceSpec& space, const Vec& x, const Vec& y,
                                 double tol = 1e-8);

}  // namespace opgeo

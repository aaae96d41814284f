#pragma once

#include <cstdint>
#include <vector>

#include "opgeo/attain.hpp"

namespace opgeo {

// Orthonormal basis built by greedy deflation: x1 maximizes ||Tx|| on the
// sphere, each next vector maximizes it on the orthogonal complement of
// what came before. The images are then pairwise orthogonal.
struct BasisResult {
    std::vector<Vec> vectors;  // unit, pairwise orthogonal in the domain inner product
    Vec image_norms;           // ||T x_i||, non-increasing
    Mat image_gram;            // <T x_i, T x_j> in the codomain inner product
};

// Euclidean domain and codomain; rectangular matrices allowed (the loop
// runs over the domain dimension). Deterministic under degenerate spectra:
// within a tied top singular subspace the vector maximizing the earliest
// absolute coordinate is chosen, first nonzero coordinate positive.
BasisResult greedy_orthogonal_basis(const OperatorSpec& op, std::uint64_t seed = 0);

// True iff every off-diagonal image Gram entry, recomputed from op and
// result.vectors, is at most tol * (max_i ||Tx_i||^2 + eps).
bool verify_orthogonality_on_basis(const OperatorSpec& op, const BasisResult& result,
                                   double tol = 1e-8);

// Cross-check of the deflation against a direct SVD.
struct SvdComparison {
    Vec singular_values;                // descending, padded to the domain dim
    double max_value_gap = 0.0;         // max_i |image_norms[i] - sigma_i|
    std::vector<double> subspace_angles;  // per equal-sigma group, radians
    std::size_t rank = 0;
    bool rank_deficient = false;        // T(S) is then not a basis
};

SvdComparison compare_with_svd(const OperatorSpec& op);

// Deterministic representative of a subspace given by orthonormal columns:
// the unit vector maximizing the earliest absolute coordinate, sign-fixed.
// Shared tie-break for degenerate spectra and null-space picks.
Vec subspace_representative(const Mat& basis_cols);

}  // namespace opgeo

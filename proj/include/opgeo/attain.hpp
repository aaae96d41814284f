#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "opgeo/space.hpp"

namespace opgeo {

// A real matrix acting between two normed spaces. matrix is
// codomain.dim x domain.dim.
struct OperatorSpec {
    Mat matrix;
    SpaceSpec domain;
    SpaceSpec codomain;

    static OperatorSpec make(Mat matrix, SpaceSpec domain, SpaceSpec codomain);
};

enum class NormMethod { Auto, Spectral, Vertex, Multistart };

struct OperatorNormResult {
    double value = 0.0;
    Vec argmax;               // unit vector in the domain norm
    NormMethod method = NormMethod::Auto;  // method actually used
    bool certified = false;   // spectral and vertex are exact; multistart is a lower bound
};

// Induced operator norm with its attaining vector. Auto picks spectral for
// Euclidean pairs, extreme-point enumeration for vertex-enumerable
// domains, and seeded multistart ascent otherwise.
OperatorNormResult operator_norm(const OperatorSpec& op,
                                 NormMethod method = NormMethod::Auto,
                                 std::uint64_t seed = 0, int restarts = 50);

// The norm attainment set: unit vectors x with ||Tx|| = ||T||.
struct AttainmentSet {
    double op_norm = 0.0;
    std::vector<Vec> points;
    // Orthonormal basis (domain inner product) of the top singular
    // subspace; Euclidean-to-Euclidean only. M_T is exactly its unit sphere.
    std::optional<Mat> euclidean_subspace;
    // Fully attaining closed faces of a polygonal domain sphere, as
    // endpoint pairs (dim 2).
    std::vector<std::pair<Vec, Vec>> faces;
    bool exhaustive = false;
    bool degenerate = false;  // zero operator: M_T = S_X
};

AttainmentSet norm_attainment_set(const OperatorSpec& op, double tol = 1e-8,
                                  std::uint64_t seed = 0);

// Membership test for M_T on Hilbert spaces via the two conditions:
// (i)  <x,y> = 0 implies <Tx,Ty> = 0, checked on an orthonormal basis of
//      the hyperplane orthogonal to x;
// (ii) the norm of T restricted to that hyperplane is at most ||Tx||.
struct MembershipReport {
    bool cond_i_holds = false;
    double cond_i_max_violation = 0.0;
    bool cond_ii_holds = false;
    double complement_sup = 0.0;
    double image_norm = 0.0;
    bool member = false;  // cond_i && cond_ii
};

MembershipReport check_membership_conditions(const OperatorSpec& op, const Vec& x, double tol = 1e-8);

// Sampled two-directional check that T preserves Birkhoff-James
// orthogonality at x. Smooth domain and codomain only.
bool preserves_orthogonality_at(const OperatorSpec& op, const Vec& x,
                                int samples = 32, std::uint64_t seed = 0,
                                double tol = 1e-8);

// Whitening for Gram-weighted Euclidean pairs: M = Lc^T A Ld^{-T} has the
// same singular values as A seen between the weighted spaces, and domain
// vectors map back through Ld^{-T}.
Mat whitened_matrix(const OperatorSpec& op);
Vec domain_from_whitened(const SpaceSpec& domain, const Vec& y);
Vec domain_to_whitened(const SpaceSpec& domain, const Vec& x);

// Flip sign so the first coordinate with |c| > 1e-12 is positive.
Vec canonical_unit(Vec v);

}  // namespace opgeo

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opgeo/basis.hpp"

namespace opgeo {

// Certificate that a norm-one operator is an extreme contraction: it
// attains its norm at n linearly independent unit vectors whose images are
// extreme points of the codomain ball (automatic for strictly convex
// codomains).
struct ExtremeCertificate {
    std::vector<Vec> attainment_vectors;
    std::vector<bool> image_extreme_flags;
    double basis_condition_number = 0.0;
    double min_singular_value = 0.0;
};

enum class WitnessCase { CaseI, CaseII, Interior };

// A midpoint decomposition T = (T1 + T2) / 2 with distinct contractions,
// certifying that T is not extreme.
struct WitnessPair {
    Mat t1;
    Mat t2;
    WitnessCase case_tag = WitnessCase::CaseI;
    double epsilon = 0.0;   // Case I scale, or 1 - ||T|| for interior pairs
    std::size_t k = 0;      // number of attaining basis vectors
    Vec w;                  // Case II replacement direction
    BasisResult basis_used;
};

struct IsometryProof {
    double max_residual = 0.0;  // max |(M^T M - I)_{ij}| in whitened coordinates
};

enum class ExtremeStatus { Extreme, NotExtreme, Inconclusive };

struct ExtremenessVerdict {
    ExtremeStatus status = ExtremeStatus::Inconclusive;
    std::optional<IsometryProof> isometry_proof;
    std::optional<ExtremeCertificate> certificate;
    std::optional<WitnessPair> witness;
    std::string note;
};

struct IsometryCheck {
    bool isometry = false;
    bool certified = true;   // false when decided by sphere sampling only
    double max_residual = 0.0;
};

// ||Tv|| = ||v|| for all v. Euclidean pairs are decided by the whitened
// Gram residual; vertex-enumerable domains by pinning every face of the
// domain sphere (extreme points plus face centroids); smooth non-Euclidean
// domains by 500 seeded sphere samples, flagged uncertified.
IsometryCheck is_isometry_check(const OperatorSpec& op, double tol = 1e-8,
                                std::uint64_t seed = 0);
bool is_isometry(const OperatorSpec& op, double tol = 1e-8, std::uint64_t seed = 0);

// Sufficiency certificate; requires ||T|| = 1 within tol. Absence of a
// certificate is not a proof of non-extremeness.
std::optional<ExtremeCertificate> sufficient_extreme_check(const OperatorSpec& op,
                                                           double tol = 1e-8,
                                                           std::uint64_t seed = 0);

// Midpoint witness for a non-isometric norm-one operator on a Hilbert
// space, following the two-case perturbation of the deflation basis:
// Case I scales the non-attaining image block by (1 +- eps); Case II
// replaces a zero image by +-w/2 with w orthogonal to all attained images.
WitnessPair nonextreme_witness(const OperatorSpec& op, double tol = 1e-8,
                               std::uint64_t seed = 0);

// Full Hilbert classification: interior contractions and non-isometries
// get witness pairs, isometries are extreme.
ExtremenessVerdict hilbert_extreme_classify(const OperatorSpec& op, double tol = 1e-8,
                                            std::uint64_t seed = 0);

// General-space front end: Hilbert pairs route to the classifier, anything
// else to the sufficiency certificate (certificate => Extreme, otherwise
// Inconclusive).
ExtremenessVerdict classify_extremeness(const OperatorSpec& op, double tol = 1e-8,
                                        std::uint64_t seed = 0);

// Extreme non-isometry on a non-strictly-convex plane: T maps the flat
// segment's interior point to an extreme point w and the segment direction
// to zero, so both segment endpoints attain the norm with image w.
struct FlatSegmentCounterexample {
    OperatorSpec op;
    ExtremeCertificate certificate;
    Vec segment_endpoints_v1;
    Vec segment_endpoints_v2;
    Vec non_isometry_witness;   // unit y with ||Ty|| = 0
    double witness_image_norm = 0.0;
    double op_norm = 0.0;       // vertex-exact
};

FlatSegmentCounterexample flat_segment_counterexample(const SpaceSpec& space, std::uint64_t seed = 0);

// Random search with local refinement for an extreme non-isometry on a
// strictly convex non-Euclidean plane. Failure within budget is not
// evidence of absence.
struct ExtremeSearchResult {
    OperatorSpec op;
    ExtremeCertificate certificate;
    double norm_residual = 0.0;   // | multistart norm - 1 |
    long evals_used = 0;
};

std::optional<ExtremeSearchResult> search_extreme_nonisometry(const SpaceSpec& space,
                                                              std::uint64_t seed = 0,
                                                              long budget = 10000);

}  // namespace opgeo

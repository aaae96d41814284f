#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opgeo/extreme.hpp"

namespace opgeo {

// One row of the plane survey: does this two-dimensional space carry an
// extreme contraction that is not an isometry?
struct PlaneSurveyRow {
    SpaceSpec space;
    std::string protocol;  // "flat_segment", "search", "euclidean_negative"
    bool found_extreme_nonisometry = false;
    std::optional<OperatorSpec> witness_op;
    std::optional<ExtremeCertificate> certificate;
    std::string note;
    // euclidean_negative statistics
    int classified = 0;
    int extreme_count = 0;
    bool all_extreme_are_isometries = true;
    std::string error;  // per-row failures never abort the survey
};

struct PlaneSurveyReport {
    std::vector<PlaneSurveyRow> rows;
};

// Survey over two-dimensional spaces: non-strictly-convex planes use the
// flat-segment construction, strictly convex non-Euclidean planes the
// random search, and Euclidean planes an exhaustive negative protocol
// classifying `classify_count` seeded contractions.
PlaneSurveyReport plane_survey(const std::vector<SpaceSpec>& spaces,
                                 std::uint64_t seed = 0, long budget = 10000,
                                 int classify_count = 1000);

}  // namespace opgeo

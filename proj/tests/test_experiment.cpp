#include <doctest.h>

#include <cmath>

#include "opgeo/experiment.hpp"

using namespace opgeo;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("plane survey across the four norm families") {
    const std::vector<SpaceSpec> spaces{SpaceSpec::lp(kInf, 2), SpaceSpec::lp(1, 2),
                                        SpaceSpec::lp(4, 2), SpaceSpec::euclidean(2)};
    const PlaneSurveyReport rep = plane_survey(spaces, 3, 2000, 100);
    REQUIRE(rep.rows.size() == 4);

    CHECK(rep.rows[0].protocol == "flat_segment");
    CHECK(rep.rows[0].found_extreme_nonisometry);
    CHECK(rep.rows[1].protocol == "flat_segment");
    CHECK(rep.rows[1].found_extreme_nonisometry);
    CHECK(rep.rows[2].protocol == "search");
    CHECK(rep.rows[2].found_extreme_nonisometry);
    CHECK(rep.rows[3].protocol == "euclidean_negative");
    CHECK_FALSE(rep.rows[3].found_extreme_nonisometry);
    CHECK(rep.rows[3].classified == 100);
    CHECK(rep.rows[3].extreme_count > 0);  // the mix plants exact isometries
    CHECK(rep.rows[3].all_extreme_are_isometries);

    for (const PlaneSurveyRow& row : rep.rows) {
        CHECK(row.error.empty());
        if (row.found_extreme_nonisometry) {
            REQUIRE(row.witness_op.has_value());
            REQUIRE(row.certificate.has_value());
            CHECK(row.certificate->min_singular_value >= 1e-6);
        }
    }
}

TEST_CASE("polyhedral planes route through the flat-segment construction") {
    std::vector<Vec> octagon;
    const double pi = 3.141592653589793;
    for (int k = 0; k < 8; ++k) {
        const double a = pi * (2 * k + 1) / 8.0;
        octagon.push_back({std::cos(a) / std::cos(pi / 8.0), std::sin(a) / std::cos(pi / 8.0)});
    }
    const PlaneSurveyReport rep =
        plane_survey({SpaceSpec::polyhedral2d(octagon)}, 5, 100, 10);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].protocol == "flat_segment");
    CHECK(rep.rows[0].found_extreme_nonisometry);
    CHECK(rep.rows[0].error.empty());
}

TEST_CASE("lp(2) routes to the euclidean negative protocol") {
    const PlaneSurveyReport rep = plane_survey({SpaceSpec::lp(2, 2)}, 5, 100, 50);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].protocol == "euclidean_negative");
    CHECK_FALSE(rep.rows[0].found_extreme_nonisometry);
}

TEST_CASE("empty survey and bad rows") {
    CHECK(plane_survey({}, 0, 10, 10).rows.empty());

    const PlaneSurveyReport rep = plane_survey({SpaceSpec::euclidean(3)}, 0, 10, 10);
    REQUIRE(rep.rows.size() == 1);
    CHECK_FALSE(rep.rows[0].error.empty());  // a row, not an abort
    CHECK_FALSE(rep.rows[0].found_extreme_nonisometry);
}

#pragma once

#include <json.hpp>

#include "opgeo/bjorth.hpp"
#include "opgeo/experiment.hpp"

namespace opgeo {

using nlohmann::json;

// Schemas are documented in the README. Parsing throws InvalidInput with a
// machine-readable code on malformed input.

json to_json(const Vec& v);
json to_json(const Mat& m);
Vec vec_from_json(const json& j, const char* what = "vector");
Mat mat_from_json(const json& j, const char* what = "matrix");

json to_json(const SpaceSpec& s);
SpaceSpec space_from_json(const json& j);

json to_json(const OperatorSpec& op);
OperatorSpec operator_from_json(const json& j);

json to_json(const SegmentDescriptor& seg);
json to_json(const BJVerdict& v);
json to_json(const OperatorNormResult& r);
json to_json(const AttainmentSet& s);
json to_json(const MembershipReport& r);
json to_json(const BasisResult& b);
json to_json(const SvdComparison& c);
json to_json(const ExtremeCertificate& c);
json to_json(const WitnessPair& w);
json to_json(const ExtremenessVerdict& v);
json to_json(const FlatSegmentCounterexample& r);
json to_json(const PlaneSurveyReport& r);

const char* to_string(NormMethod m);
NormMethod method_from_string(const std::string& s);

}  // namespace opgeo

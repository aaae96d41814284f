#include "opgeo/json_io.hpp"

#include <cmath>
#include <limits>

#include "opgeo/errors.hpp"

namespace opgeo {

namespace {

double number_from(const json& j, const char* what) {
    if (!j.is_number())
        throw InvalidInput("invalid_number", std::string(what) + " must be a number");
    return j.get<double>();
}

}  // namespace

json to_json(const Vec& v) { return json(v); }

json to_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Vec vec_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw InvalidInput("invalid_vector", std::string(what) + " must be a nonempty array");
    Vec v;
    v.reserve(j.size());
    for (const json& x : j) v.push_back(number_from(x, what));
    return v;
}

Mat mat_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw InvalidInput("invalid_matrix",
                           std::string(what) + " must be a nonempty array of rows");
    const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
    if (cols == 0)
        throw InvalidInput("invalid_matrix", std::string(what) + " rows must be nonempty arrays");
    Mat m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw InvalidInput("invalid_matrix", std::string(what) + " rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = number_from(j[i][c], what);
    }
    return m;
}

json to_json(const SpaceSpec& s) {
    json j;
    j["dim"] = s.dim;
    switch (s.kind) {
        case SpaceKind::Euclidean:
            j["kind"] = "euclidean";
            if (s.gram) j["gram"] = to_json(*s.gram);
            break;
        case SpaceKind::Lp:
            j["kind"] = "lp";
            if (s.p == std::numeric_limits<double>::infinity())
                j["p"] = "inf";
            else
                j["p"] = s.p;
            break;
        case SpaceKind::Polyhedral2D: {
            j["kind"] = "polyhedral2d";
            json verts = json::array();
            for (const Vec& v : s.vertices) verts.push_back(to_json(v));
            j["vertices"] = std::move(verts);
            break;
        }
    }
    return j;
}

SpaceSpec space_from_json(const json& j) {
    if (!j.is_object())
        throw InvalidInput("invalid_space", "space must be a JSON object");
    const std::string kind = j.value("kind", "euclidean");
    if (kind == "euclidean") {
        if (j.contains("gram")) {
            SpaceSpec s = SpaceSpec::euclidean_gram(mat_from_json(j["gram"], "gram"));
            if (j.contains("dim") && j["dim"].get<std::size_t>() != s.dim)
                throw InvalidInput("dimension_mismatch", "dim does not match gram size");
            return s;
        }
        if (!j.contains("dim"))
            throw InvalidInput("invalid_space", "euclidean space needs dim or gram");
        return SpaceSpec::euclidean(j["dim"].get<std::size_t>());
    }
    if (kind == "lp") {
        if (!j.contains("dim"))
            throw InvalidInput("invalid_space", "lp space needs dim");
        double p = 2.0;
        if (j.contains("p")) {
            if (j["p"].is_string()) {
                const std::string ps = j["p"].get<std::string>();
                if (ps == "inf" || ps == "Inf" || ps == "infinity")
                    p = std::numeric_limits<double>::infinity();
                else
                    throw InvalidInput("invalid_exponent", "unrecognized lp exponent string");
            } else {
                p = number_from(j["p"], "p");
            }
        }
        return SpaceSpec::lp(p, j["dim"].get<std::size_t>());
    }
    if (kind == "polyhedral2d") {
        if (!j.contains("vertices"))
            throw InvalidInput("invalid_space", "polyhedral2d space needs vertices");
        std::vector<Vec> verts;
        for (const json& v : j["vertices"]) verts.push_back(vec_from_json(v, "vertex"));
        if (j.contains("dim") && j["dim"].get<std::size_t>() != 2)
            throw InvalidInput("dimension_mismatch", "polyhedral2d spaces have dim 2");
        return SpaceSpec::polyhedral2d(std::move(verts));
    }
    throw InvalidInput("invalid_space", "unknown space kind: " + kind);
}

json to_json(const OperatorSpec& op) {
    json j;
    j["matrix"] = to_json(op.matrix);
    j["domain"] = to_json(op.domain);
    j["codomain"] = to_json(op.codomain);
    return j;
}

OperatorSpec operator_from_json(const json& j) {
    if (!j.is_object() || !j.contains("matrix"))
        throw InvalidInput("invalid_operator", "operator needs a matrix");
    Mat m = mat_from_json(j["matrix"], "matrix");
    SpaceSpec dom = j.contains("domain") ? space_from_json(j["domain"])
                                         : SpaceSpec::euclidean(m.cols);
    SpaceSpec cod = j.contains("codomain") ? space_from_json(j["codomain"])
                                           : SpaceSpec::euclidean(m.rows);
    return OperatorSpec::make(std::move(m), std::move(dom), std::move(cod));
}

json to_json(const SegmentDescriptor& seg) {
    json j;
    j["interior_point"] = to_json(seg.interior_point);
    j["direction"] = to_json(seg.direction);
    j["lambda1"] = seg.lambda1;
    j["lambda2"] = seg.lambda2;
    return j;
}

json to_json(const BJVerdict& v) {
    json j;
    j["orthogonal"] = v.orthogonal;
    j["minimizer_lambda"] = v.minimizer_lambda;
    j["min_value"] = v.min_value;
    j["margin"] = v.margin;
    return j;
}

const char* to_string(NormMethod m) {
    switch (m) {
        case NormMethod::Auto: return "auto";
        case NormMethod::Spectral: return "spectral";
        case NormMethod::Vertex: return "vertex";
        case NormMethod::Multistart: return "multistart";
    }
    return "auto";
}

NormMethod method_from_string(const std::string& s) {
    if (s == "auto") return NormMethod::Auto;
    if (s == "spectral") return NormMethod::Spectral;
    if (s == "vertex") return NormMethod::Vertex;
    if (s == "multistart") return NormMethod::Multistart;
    throw InvalidInput("invalid_method", "unknown norm method: " + s);
}

json to_json(const OperatorNormResult& r) {
    json j;
    j["value"] = r.value;
    j["argmax"] = to_json(r.argmax);
    j["method"] = to_string(r.method);
    j["certified"] = r.certified;
    return j;
}

json to_json(const AttainmentSet& s) {
    json j;
    j["op_norm"] = s.op_norm;
    json pts = json::array();
    for (const Vec& p : s.points) pts.push_back(to_json(p));
    j["points"] = std::move(pts);
    if (s.euclidean_subspace) {
        json basis = json::array();
        for (std::size_t c = 0; c < s.euclidean_subspace->cols; ++c)
            basis.push_back(to_json(s.euclidean_subspace->col(c)));
        j["euclidean_subspace"] = std::move(basis);
    }
    if (!s.faces.empty()) {
        json faces = json::array();
        for (const auto& f : s.faces)
            faces.push_back(json::array({to_json(f.first), to_json(f.second)}));
        j["faces"] = std::move(faces);
    }
    j["exhaustive"] = s.exhaustive;
    j["degenerate"] = s.degenerate;
    return j;
}

json to_json(const MembershipReport& r) {
    json j;
    j["cond_i_holds"] = r.cond_i_holds;
    j["cond_i_max_violation"] = r.cond_i_max_violation;
    j["cond_ii_holds"] = r.cond_ii_holds;
    j["complement_sup"] = r.complement_sup;
    j["image_norm"] = r.image_norm;
    j["member"] = r.member;
    return j;
}

json to_json(const BasisResult& b) {
    json j;
    json vecs = json::array();
    for (const Vec& v : b.vectors) vecs.push_back(to_json(v));
    j["vectors"] = std::move(vecs);
    j["image_norms"] = to_json(b.image_norms);
    j["image_gram"] = to_json(b.image_gram);
    return j;
}

json to_json(const SvdComparison& c) {
    json j;
    j["singular_values"] = to_json(c.singular_values);
    j["max_value_gap"] = c.max_value_gap;
    j["subspace_angles"] = to_json(c.subspace_angles);
    j["rank"] = c.rank;
    j["rank_deficient"] = c.rank_deficient;
    return j;
}

json to_json(const ExtremeCertificate& c) {
    json j;
    json vecs = json::array();
    for (const Vec& v : c.attainment_vectors) vecs.push_back(to_json(v));
    j["attainment_vectors"] = std::move(vecs);
    j["image_extreme_flags"] = json(c.image_extreme_flags);
    j["basis_condition_number"] = c.basis_condition_number;
    j["min_singular_value"] = c.min_singular_value;
    return j;
}

json to_json(const WitnessPair& w) {
    json j;
    switch (w.case_tag) {
        case WitnessCase::CaseI: j["case"] = "I"; break;
        case WitnessCase::CaseII: j["case"] = "II"; break;
        case WitnessCase::Interior: j["case"] = "interior"; break;
    }
    j["epsilon"] = w.epsilon;
    j["k"] = w.k;
    if (!w.w.empty()) j["w"] = to_json(w.w);
    j["T1"] = to_json(w.t1);
    j["T2"] = to_json(w.t2);
    if (!w.basis_used.vectors.empty()) j["basis_used"] = to_json(w.basis_used);
    return j;
}

json to_json(const ExtremenessVerdict& v) {
    json j;
    switch (v.status) {
        case ExtremeStatus::Extreme: j["status"] = "extreme"; break;
        case ExtremeStatus::NotExtreme: j["status"] = "not_extreme"; break;
        case ExtremeStatus::Inconclusive: j["status"] = "inconclusive"; break;
    }
    if (v.isometry_proof) {
        j["isometry_proof"] = json{{"max_residual", v.isometry_proof->max_residual}};
    }
    if (v.certificate) j["certificate"] = to_json(*v.certificate);
    if (v.witness) {
        // Witness fields are flattened into the verdict object.
        json w = to_json(*v.witness);
        for (auto it = w.begin(); it != w.end(); ++it) j[it.key()] = it.value();
    }
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

json to_json(const FlatSegmentCounterexample& r) {
    json j;
    j["operator"] = to_json(r.op);
    j["certificate"] = to_json(r.certificate);
    j["attainment_v1"] = to_json(r.segment_endpoints_v1);
    j["attainment_v2"] = to_json(r.segment_endpoints_v2);
    j["non_isometry_witness"] = to_json(r.non_isometry_witness);
    j["witness_image_norm"] = r.witness_image_norm;
    j["op_norm"] = r.op_norm;
    j["non_isometry_reason"] =
        "norm(T y) = 0 differs from norm(y) = 1 for the segment direction y";
    return j;
}

json to_json(const PlaneSurveyReport& r) {
    json rows = json::array();
    for (const PlaneSurveyRow& row : r.rows) {
        json j;
        j["space"] = to_json(row.space);
        if (!row.protocol.empty()) j["protocol"] = row.protocol;
        j["found_extreme_nonisometry"] = row.found_extreme_nonisometry;
        if (row.witness_op) j["operator"] = to_json(*row.witness_op);
        if (row.certificate) j["certificate"] = to_json(*row.certificate);
        if (row.protocol == "euclidean_negative") {
            j["classified"] = row.classified;
            j["extreme_count"] = row.extreme_count;
            j["all_extreme_are_isometries"] = row.all_extreme_are_isometries;
        }
        if (!row.note.empty()) j["note"] = row.note;
        if (!row.error.empty()) j["error"] = row.error;
        rows.push_back(std::move(j));
    }
    return json{{"rows", std::move(rows)}};
}

}  // namespace opgeo

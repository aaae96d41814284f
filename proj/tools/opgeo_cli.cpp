#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "opgeo/errors.hpp"
#include "opgeo/json_io.hpp"

namespace {

using opgeo::json;

struct CommonOpts {
    double tol = 1e-8;
    std::uint64_t seed = 0;
    std::string method = "auto";
    std::string format = "json";
    long budget = 10000;
    std::string input_path;
    std::string space_json;
    bool verify = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--tol", o.tol, "tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "deterministic seed");
    cmd->add_option("--format", o.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--input", o.input_path, "read input JSON from a file instead of stdin");
}

std::string read_input(const CommonOpts& o) {
    if (!o.input_path.empty()) {
        std::ifstream f(o.input_path);
        if (!f)
            throw opgeo::InvalidInput("input_unreadable",
                                      "cannot open input file: " + o.input_path);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
}

json parse_input(const CommonOpts& o) {
    const std::string text = read_input(o);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw opgeo::InvalidInput("malformed_json", "input is not valid JSON");
    return j;
}

// Text output is rendered from the JSON report; there is no second
// formatting path.
void print_text(const json& j, std::ostream& os, int depth = 0) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_object() || (it.value().is_array() && !it.value().empty() &&
                                           (it.value().front().is_object() ||
                                            it.value().front().is_array()))) {
                os << pad << it.key() << ":\n";
                print_text(it.value(), os, depth + 1);
            } else {
                os << pad << it.key() << ": " << it.value().dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const json& item : j) {
            if (item.is_object() || item.is_array()) {
                os << pad << "-\n";
                print_text(item, os, depth + 1);
            } else {
                os << pad << "- " << item.dump() << "\n";
            }
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

void emit(const json& report, const CommonOpts& o) {
    if (o.format == "text")
        print_text(report, std::cout);
    else
        std::cout << report.dump(2) << "\n";
}

opgeo::SpaceSpec space_arg(const CommonOpts& o) {
    if (!o.space_json.empty()) {
        json j = json::parse(o.space_json, nullptr, false);
        if (j.is_discarded())
            throw opgeo::InvalidInput("malformed_json", "--space is not valid JSON");
        return opgeo::space_from_json(j);
    }
    const json in = parse_input(o);
    if (!in.contains("space"))
        throw opgeo::InvalidInput("invalid_input", "expected {\"space\": ...}");
    return opgeo::space_from_json(in["space"]);
}

int run_norm(const CommonOpts& o) {
    const json in = parse_input(o);
    if (!in.contains("space") || !in.contains("v"))
        throw opgeo::InvalidInput("invalid_input", "expected {\"space\": ..., \"v\": [...]}");
    const opgeo::SpaceSpec s = opgeo::space_from_json(in["space"]);
    const opgeo::Vec v = opgeo::vec_from_json(in["v"], "v");
    emit(json{{"norm", opgeo::norm(s, v)}}, o);
    return 0;
}

int run_bj(const CommonOpts& o) {
    const json in = parse_input(o);
    if (!in.contains("space") || !in.contains("x") || !in.contains("y"))
        throw opgeo::InvalidInput("invalid_input",
                                  "expected {\"space\": ..., \"x\": [...], \"y\": [...]}");
    const opgeo::SpaceSpec s = opgeo::space_from_json(in["space"]);
    const opgeo::Vec x = opgeo::vec_from_json(in["x"], "x");
    const opgeo::Vec y = opgeo::vec_from_json(in["y"], "y");
    const double tol = in.value("tol", o.tol);
    emit(opgeo::to_json(opgeo::bj_orthogonal(s, x, y, tol)), o);
    return 0;
}

int run_norm_op(const CommonOpts& o) {
    const json in = parse_input(o);
    if (!in.contains("operator"))
        throw opgeo::InvalidInput("invalid_input", "expected {\"operator\": ...}");
    const opgeo::OperatorSpec op = opgeo::operator_from_json(in["operator"]);
    const opgeo::NormMethod m = opgeo::method_from_string(o.method);
    emit(opgeo::to_json(opgeo::operator_norm(op, m, o.seed)), o);
    return 0;
}

int run_attain(const CommonOpts& o) {
    const json in = parse_input(o);
    if (!in.contains("operator"))
        throw opgeo::InvalidInput("invalid_input", "expected {\"operator\": ...}");
    const opgeo::OperatorSpec op = opgeo::operator_from_json(in["operator"]);
    emit(opgeo::to_json(opgeo::norm_attainment_set(op, o.tol, o.seed)), o);
    return 0;
}

int run_thm21(const CommonOpts& o) {
    const json in = parse_input(o);
    if (!in.contains("operator") || !in.contains("x"))
        throw opgeo::InvalidInput("invalid_input",
                                  "expected {\"operator\": ..., \"x\": [...]}");
    const opgeo::OperatorSpec op = opgeo::operator_from_json(in["operator"]);
    const opgeo::Vec x = opgeo::vec_from_json(in["x"], "x");
    emit(opgeo::to_json(opgeo::check_membership_conditions(op, x, o.tol)), o);
    return 0;
}

int run_basis(const CommonOpts& o) {
    const json in = parse_input(o);
    if (!in.contains("operator"))
        throw opgeo::InvalidInput("invalid_input", "expected {\"operator\": ...}");
    const opgeo::OperatorSpec op = opgeo::operator_from_json(in["operator"]);
    const opgeo::BasisResult b = opgeo::greedy_orthogonal_basis(op, o.seed);
    json rep = opgeo::to_json(b);
    if (o.verify) {
        rep["orthogonality_verified"] = opgeo::verify_orthogonality_on_basis(op, b, o.tol);
        rep["svd_comparison"] = opgeo::to_json(opgeo::compare_with_svd(op));
    }
    emit(rep, o);
    return 0;
}

int run_classify(const CommonOpts& o) {
    const json in = parse_input(o);
    if (!in.contains("operator"))
        throw opgeo::InvalidInput("invalid_input", "expected {\"operator\": ...}");
    const opgeo::OperatorSpec op = opgeo::operator_from_json(in["operator"]);
    emit(opgeo::to_json(opgeo::classify_extremeness(op, o.tol, o.seed)), o);
    return 0;
}

int run_witness(const CommonOpts& o) {
    const json in = parse_input(o);
    if (!in.contains("operator"))
        throw opgeo::InvalidInput("invalid_input", "expected {\"operator\": ...}");
    const opgeo::OperatorSpec op = opgeo::operator_from_json(in["operator"]);
    emit(opgeo::to_json(opgeo::nonextreme_witness(op, o.tol, o.seed)), o);
    return 0;
}

int run_counterexample(const CommonOpts& o) {
    const opgeo::SpaceSpec s = space_arg(o);
    emit(opgeo::to_json(opgeo::flat_segment_counterexample(s, o.seed)), o);
    return 0;
}

int run_search_excon(const CommonOpts& o) {
    const opgeo::SpaceSpec s = space_arg(o);
    const auto r = opgeo::search_extreme_nonisometry(s, o.seed, o.budget);
    json rep;
    rep["found"] = static_cast<bool>(r);
    if (r) {
        rep["operator"] = opgeo::to_json(r->op);
        rep["certificate"] = opgeo::to_json(r->certificate);
        rep["norm_residual"] = r->norm_residual;
        rep["evals_used"] = r->evals_used;
    } else {
        rep["note"] = "budget exhausted; failure is not evidence of absence";
    }
    emit(rep, o);
    return 0;
}

int run_thm27(const CommonOpts& o) {
    const json in = parse_input(o);
    if (!in.contains("spaces") || !in["spaces"].is_array())
        throw opgeo::InvalidInput("invalid_input", "expected {\"spaces\": [...]}");
    std::vector<opgeo::SpaceSpec> spaces;
    for (const json& s : in["spaces"]) spaces.push_back(opgeo::space_from_json(s));
    emit(opgeo::to_json(opgeo::plane_survey(spaces, o.seed, o.budget)), o);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational geometry of linear operators on normed planes and spaces"};
    app.require_subcommand(1);

    CommonOpts o;
    auto* norm = app.add_subcommand("norm", "evaluate a space norm at a vector");
    add_common(norm, o);
    auto* bj = app.add_subcommand("bj", "Birkhoff-James orthogonality verdict");
    add_common(bj, o);
    auto* norm_op = app.add_subcommand("norm-op", "operator norm with attaining vector");
    add_common(norm_op, o);
    norm_op->add_option("--method", o.method, "auto|spectral|vertex|multistart")
        ->check(CLI::IsMember({"auto", "spectral", "vertex", "multistart"}));
    auto* attain = app.add_subcommand("attain", "norm attainment set");
    add_common(attain, o);
    auto* thm21 = app.add_subcommand("thm21", "Hilbert membership conditions for M_T");
    add_common(thm21, o);
    auto* basis = app.add_subcommand("basis", "orthogonality-preserving deflation basis");
    add_common(basis, o);
    basis->add_flag("--verify", o.verify, "verify image Gram and compare with SVD");
    auto* classify = app.add_subcommand("classify", "extreme-contraction verdict");
    add_common(classify, o);
    auto* witness = app.add_subcommand("witness", "midpoint witness pair");
    add_common(witness, o);
    auto* counterexample =
        app.add_subcommand("counterexample", "extreme non-isometry on a non-strictly-convex plane");
    add_common(counterexample, o);
    counterexample->add_option("--space", o.space_json, "space JSON (overrides stdin)");
    auto* search = app.add_subcommand("search-excon",
                                      "search an extreme non-isometry on a strictly convex plane");
    add_common(search, o);
    search->add_option("--space", o.space_json, "space JSON (overrides stdin)");
    search->add_option("--budget", o.budget, "objective evaluation budget");
    auto* thm27 = app.add_subcommand("thm27", "plane survey for extreme non-isometries");
    add_common(thm27, o);
    thm27->add_option("--budget", o.budget, "search budget per strictly convex plane");

    CLI11_PARSE(app, argc, argv);

    try {
        if (norm->parsed()) return run_norm(o);
        if (bj->parsed()) return run_bj(o);
        if (norm_op->parsed()) return run_norm_op(o);
        if (attain->parsed()) return run_attain(o);
        if (thm21->parsed()) return run_thm21(o);
        if (basis->parsed()) return run_basis(o);
        if (classify->parsed()) return run_classify(o);
        if (witness->parsed()) return run_witness(o);
        if (counterexample->parsed()) return run_counterexample(o);
        if (search->parsed()) return run_search_excon(o);
        if (thm27->parsed()) return run_thm27(o);
    } catch (const opgeo::InvalidInput& e) {
        std::cout << json{{"error", e.code()}, {"message", e.what()}}.dump(2) << "\n";
        return 2;
    } catch (const opgeo::NumericalFailure& e) {
        std::cout << json{{"error", e.code()}, {"message", e.what()}}.dump(2) << "\n";
        return 1;
    }
    return 0;
}

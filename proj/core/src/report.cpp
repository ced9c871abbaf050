#include "equihom/report.hpp"

#include <json.hpp>

#include <chrono>
#include <sstream>

#include "equihom/bredon.hpp"
#include "equihom/corpus.hpp"
#include "equihom/cosheaf.hpp"
#include "equihom/cyclic.hpp"
#include "equihom/delocalized.hpp"
#include "equihom/errors.hpp"

namespace equihom {

using json = nlohmann::ordered_json;

const std::vector<std::string> kCommands = {
    "bredon",         "cosheaf",   "compare-bc",  "bs",    "deloc",
    "check-paramixed", "hkr-check", "trace-check", "hp",    "corpus",
};

namespace {

json dims_json(const std::vector<int>& dims, int min_degree = 0) {
    json out = json::object();
    for (size_t i = 0; i < dims.size(); ++i)
        out[std::to_string(min_degree + static_cast<int>(i))] = dims[i];
    return out;
}

bool all_checks_pass(const json& checks) {
    for (const auto& [key, value] : checks.items())
        if (value.is_boolean() && !value.get<bool>()) return false;
    return true;
}

GComplex point_space(const InputDocument& doc) {
    GComplex pt;
    pt.space = SComplex::from_maximal(1, {{0}});
    pt.group = doc.group();
    pt.vertex_action.assign(doc.group()->order(), {0});
    return pt;
}

json run_body(const std::string& command, const InputDocument& doc, int* exit_code) {
    json body;
    if (command == "bredon") {
        auto complex = bredon_complex(doc.x, doc.options.subgroup_bound);
        body["dimensions"] = dims_json(complex.homology_dims);
        json per_degree = json::array();
        for (int p = 0; p <= complex.tensor.quotient.top_degree(); ++p)
            per_degree.push_back({{"ambient", complex.ambient_dims[p]},
                                  {"tensor", complex.tensor.quotient.dims[p]}});
        body["chain_dims"] = per_degree;
        body["subgroups"] = complex.category.object_count();
    } else if (command == "cosheaf") {
        auto complex = cosheaf_complex(doc.x);
        body["dimensions"] = dims_json(chain_homology(complex.complex()));
        json per_degree = json::array();
        for (int p = 0; p <= complex.complex().top_degree(); ++p)
            per_degree.push_back(
                {{"ambient", complex.ambient_dims[p]}, {"coinvariants", complex.complex().dims[p]}});
        body["chain_dims"] = per_degree;
    } else if (command == "compare-bc") {
        auto cmp = compare_bredon_cosheaf(doc.x, doc.options.subgroup_bound);
        body["cosheaf_dimensions"] = dims_json(cmp.cosheaf_dims);
        body["bredon_dimensions"] = dims_json(cmp.bredon_dims);
        body["checks"] = {{"chain_map", cmp.chain_map},
                          {"psi_well_defined", cmp.psi_well_defined},
                          {"psi_phi_id", cmp.psi_phi_id},
                          {"phi_psi_id", cmp.phi_psi_id},
                          {"is_iso", cmp.is_iso},
                          {"homology_match", cmp.homology_match}};
    } else if (command == "bs") {
        GComplex y = doc.y ? *doc.y : point_space(doc);
        auto bs = bs_bivariant(doc.x, y);
        body["dimensions"] = dims_json(bs.dims, bs.min_degree);
        body["min_degree"] = bs.min_degree;
    } else if (command == "deloc") {
        body["dimensions"] = dims_json(delocalized_point(doc.x));
    } else if (command == "check-paramixed") {
        if (doc.x.space.dim() != 0)
            throw input_error("cli: check-paramixed needs a 0-dimensional complex");
        auto omega = omega_forms(function_algebra(doc.x), doc.options.max_degree,
                                 doc.options.budget);
        body["max_degree"] = omega.max_degree;
        body["dims"] = omega.dims;
        json checks;
        // omega_forms verifies the paramixed identities exactly on the full
        // basis and throws otherwise, so reaching this point certifies them.
        checks["b_squares_to_zero"] = true;
        checks["connes_squares_to_zero"] = true;
        checks["paramixed_identity"] = true;
        checks["t_commutes"] = true;
        auto e_ops = projector_e(omega);
        bool idempotent = true, absorbs = true, invertible = true;
        for (int n = 0; n <= omega.max_degree; ++n) {
            const auto& e = e_ops[n];
            const auto& t = omega.t[n];
            idempotent = idempotent && (e * e == e);
            absorbs = absorbs && (e * t == e) && (t * e == e);
            invertible = invertible &&
                         rank(QMatrix::identity(omega.dims[n]) - t) == omega.dims[n] - rank(e);
        }
        checks["projector_idempotent"] = idempotent;
        checks["projector_absorbs_t"] = absorbs;
        checks["one_minus_t_invertible_off_invariants"] = invertible;
        body["checks"] = checks;
    } else if (command == "hkr-check") {
        if (doc.x.space.dim() != 0)
            throw input_error("cli: hkr-check needs a 0-dimensional complex");
        auto omega = omega_forms(function_algebra(doc.x), doc.options.max_degree,
                                 doc.options.budget);
        auto hkr = hkr_map(omega, doc.x);
        body["hochschild"] = hkr.hochschild;
        body["fixed_point_functions"] = hkr.functions_dim;
        json checks;
        checks["alpha_chain_map"] = hkr.alpha_chain_map;
        checks["degree0_isomorphism"] = hkr.degree0_iso;
        checks["h0_matches_fixed_points"] =
            !hkr.hochschild.empty() && hkr.hochschild[0] == hkr.functions_dim;
        checks["higher_homology_vanishes"] = [&] {
            for (size_t i = 1; i < hkr.hochschild.size(); ++i)
                if (hkr.hochschild[i] != 0) return false;
            return true;
        }();
        body["checks"] = checks;
    } else if (command == "trace-check") {
        if (doc.x.space.dim() != 0)
            throw input_error("cli: trace-check needs a 0-dimensional complex");
        auto a = function_algebra(doc.x);
        auto kg = compact_operators_algebra(doc.group());
        const int cap = doc.options.degree_cap;
        auto stab = omega_forms(tensor_algebra(a, kg), cap, doc.options.budget);
        auto plain = omega_forms(a, cap, doc.options.budget);
        auto tr = trace_map(stab, plain, cap);
        body["degree_cap"] = cap;
        body["checks"] = {{"commutes_with_b", tr.commutes_b},
                          {"commutes_with_connes", tr.commutes_conn},
                          {"commutes_with_t", tr.commutes_t},
                          {"degree0_surjective", tr.degree0_surjective}};
    } else if (command == "hp") {
        if (doc.x.space.dim() != 0)
            throw input_error("cli: hp needs 0-dimensional complexes");
        GComplex y = doc.y ? *doc.y : point_space(doc);
        if (y.space.dim() != 0) throw input_error("cli: hp needs 0-dimensional complexes");
        auto a = function_algebra(doc.x);
        auto b = function_algebra(y);
        auto hp = hp_at_level(a, b, doc.options.level_m, doc.options.level_n,
                              doc.options.stabilize, doc.options.budget);
        body["levels"] = {doc.options.level_m, doc.options.level_n};
        body["stabilized"] = doc.options.stabilize;
        body["even"] = hp.even;
        body["odd"] = hp.odd;
        json per_class = json::array();
        for (auto [e, o] : hp.per_class) per_class.push_back({e, o});
        body["per_class"] = per_class;
    } else if (command == "corpus") {
        auto results = run_acceptance_criteria();
        json items = json::array();
        bool all = true;
        for (const auto& r : results) {
            items.push_back({{"criterion", r.id},
                             {"name", r.name},
                             {"pass", r.pass},
                             {"detail", r.detail}});
            all = all && r.pass;
        }
        body["criteria"] = items;
        body["all_pass"] = all;
        if (!all) *exit_code = 4;
    } else {
        throw input_error("cli: unknown command '" + command + "'");
    }
    if (body.contains("checks") && !all_checks_pass(body["checks"])) *exit_code = 4;
    return body;
}

std::string render_table(const json& body, int indent = 0) {
    std::ostringstream os;
    const std::string pad(indent, ' ');
    for (const auto& [key, value] : body.items()) {
        if (value.is_object()) {
            os << pad << key << ":\n" << render_table(value, indent + 2);
        } else {
            os << pad << key << ": " << value.dump() << "\n";
        }
    }
    return os.str();
}

}  // namespace

Report run_command(const std::string& command, const InputDocument& doc, bool with_timing) {
    const auto start = std::chrono::steady_clock::now();
    Report report;
    report.command = command;
    int exit_code = 0;
    json body = run_body(command, doc, &exit_code);

    json full;
    full["command"] = command;
    full["input_digest"] = input_digest(doc);
    full["group_order"] = doc.group()->order();
    full["complex"] = {{"simplices", doc.x.space.size()},
                       {"dim", doc.x.space.dim()},
                       {"subdivided", doc.x_subdivided}};
    if (doc.y)
        full["complex_y"] = {{"simplices", doc.y->space.size()},
                             {"dim", doc.y->space.dim()},
                             {"subdivided", doc.y_subdivided}};
    for (auto& [key, value] : body.items()) full[key] = value;
    full["status"] = exit_code == 0 ? "ok" : "verification-failed";
    if (with_timing) {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        full["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    report.exit_code = exit_code;
    report.json_text = full.dump(2) + "\n";

    if (command == "corpus") {
        std::ostringstream os;
        for (const auto& item : full["criteria"]) {
            os << "criterion " << item["criterion"].get<int>() << " ("
               << item["name"].get<std::string>() << "): "
               << (item["pass"].get<bool>() ? "PASS" : "FAIL");
            const auto detail = item["detail"].get<std::string>();
            if (!detail.empty()) os << " [" << detail << "]";
            os << "\n";
        }
        os << (full["all_pass"].get<bool>() ? "all criteria passed" : "SOME CRITERIA FAILED")
           << "\n";
        report.table_text = os.str();
    } else {
        report.table_text = render_table(full);
    }
    return report;
}

}  // namespace equihom

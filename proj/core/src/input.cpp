#include "equihom/input.hpp"

#include <json.hpp>

#include <sstream>

#include "equihom/errors.hpp"

namespace equihom {

using json = nlohmann::ordered_json;

namespace {

std::vector<std::vector<int>> parse_perm_list(const json& j, const char* what) {
    if (!j.is_array() || j.empty())
        throw input_error(std::string("cli: ") + what + " must be a non-empty array");
    std::vector<std::vector<int>> out;
    for (const auto& row : j) {
        if (!row.is_array()) throw input_error(std::string("cli: ") + what + " rows must be arrays");
        out.push_back(row.get<std::vector<int>>());
    }
    return out;
}

SComplex parse_complex(const json& j) {
    if (!j.is_object()) throw input_error("cli: complex must be an object");
    if (!j.contains("vertices") || !j["vertices"].is_number_integer())
        throw input_error("cli: complex.vertices must be an integer");
    const int nverts = j["vertices"].get<int>();
    if (nverts < 0) throw input_error("cli: complex.vertices must be nonnegative");
    std::vector<Simplex> maximal;
    if (j.contains("maximal")) maximal = parse_perm_list(j["maximal"], "complex.maximal");
    return SComplex::from_maximal(nverts, std::move(maximal));
}

struct GroupSpec {
    bool from_table = false;
    std::vector<std::vector<int>> table;
    std::vector<std::vector<int>> generators;
};

GroupSpec parse_group(const json& j) {
    GroupSpec spec;
    if (!j.is_object()) throw input_error("cli: group must be an object");
    if (j.contains("table")) {
        spec.from_table = true;
        spec.table = parse_perm_list(j["table"], "group.table");
    } else if (j.contains("permutations")) {
        spec.generators = parse_perm_list(j["permutations"], "group.permutations");
    } else {
        throw input_error("cli: group needs either a table or permutation generators");
    }
    return spec;
}

GComplex build_space(const GroupSpec& spec, GroupPtr table_group, SComplex sc, const json& action,
                     int closure_bound) {
    if (action.is_null()) {
        if (spec.from_table) return trivial_action(std::move(sc), table_group);
        auto closure = build_group_from_permutations(spec.generators, closure_bound);
        return trivial_action(std::move(sc), closure.group);
    }
    if (!action.is_object()) throw input_error("cli: action must be an object");
    if (action.contains("by_element")) {
        auto per_element = parse_perm_list(action["by_element"], "action.by_element");
        GroupPtr g = table_group;
        if (!spec.from_table) g = build_group_from_permutations(spec.generators, closure_bound).group;
        if (static_cast<int>(per_element.size()) != g->order())
            throw input_error("cli: action.by_element must list one permutation per element");
        GComplex out;
        out.space = std::move(sc);
        out.group = std::move(g);
        out.vertex_action = std::move(per_element);
        return out;
    }
    if (action.contains("by_generator")) {
        if (spec.from_table)
            throw input_error("cli: action.by_generator requires a group given by generators");
        auto per_gen = parse_perm_list(action["by_generator"], "action.by_generator");
        return g_complex_from_generators(spec.generators, std::move(sc), per_gen, closure_bound);
    }
    throw input_error("cli: action needs by_element or by_generator");
}

GComplex subdivide_if_needed(GComplex x, bool allow, bool* subdivided, const char* which) {
    auto report = validate_g_complex(x);
    if (!report.simplicial)
        throw input_error(std::string("cli: the ") + which +
                          " action does not permute the simplices of the complex");
    if (report.type_preserving) {
        *subdivided = false;
        return x;
    }
    if (!allow) {
        // Name an offending simplex for the diagnostic.
        std::string offender;
        const auto& g = *x.group;
        for (int d = 0; d <= x.space.dim() && offender.empty(); ++d)
            for (const auto& s : x.space.by_dim[d]) {
                for (int e = 0; e < g.order(); ++e) {
                    auto image = x.act(e, s);
                    if (image.simplex == s) {
                        bool moves = false;
                        for (int v : s) moves = moves || x.vertex_action[e][v] != v;
                        if (moves) {
                            std::ostringstream os;
                            os << "[";
                            for (size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
                            os << "]";
                            offender = os.str();
                            break;
                        }
                    }
                }
                if (!offender.empty()) break;
            }
        throw input_error(std::string("cli: the ") + which +
                          " action is not type-preserving (simplex " + offender +
                          " is stabilized but its vertices move); pass --subdivide");
    }
    *subdivided = true;
    GComplex sub = barycentric_subdivision(x);
    auto after = validate_g_complex(sub);
    if (!after.type_preserving)
        throw verification_error("cli: barycentric subdivision failed to fix type-preservation");
    return sub;
}

}  // namespace

InputDocument parse_input(const std::string& text, bool force_subdivide) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw input_error(std::string("cli: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw input_error("cli: the input document must be a JSON object");
    if (j.contains("schema") && (!j["schema"].is_number_integer() || j["schema"].get<int>() != 1))
        throw input_error("cli: unsupported schema version");

    InputDocument doc;
    doc.options.subdivide = force_subdivide;
    if (j.contains("options")) {
        const auto& o = j["options"];
        if (!o.is_object()) throw input_error("cli: options must be an object");
        if (o.contains("subdivide"))
            doc.options.subdivide = doc.options.subdivide || o["subdivide"].get<bool>();
        if (o.contains("levels")) {
            auto lv = o["levels"].get<std::vector<int>>();
            if (lv.size() != 2) throw input_error("cli: options.levels must be [m, n]");
            doc.options.level_m = lv[0];
            doc.options.level_n = lv[1];
        }
        if (o.contains("max_degree")) doc.options.max_degree = o["max_degree"].get<int>();
        if (o.contains("budget")) doc.options.budget = o["budget"].get<long long>();
        if (o.contains("degree_cap")) doc.options.degree_cap = o["degree_cap"].get<int>();
        if (o.contains("stabilize")) doc.options.stabilize = o["stabilize"].get<bool>();
        if (o.contains("subgroup_bound")) doc.options.subgroup_bound = o["subgroup_bound"].get<int>();
        if (o.contains("closure_bound")) doc.options.closure_bound = o["closure_bound"].get<int>();
    }

    if (!j.contains("group")) throw input_error("cli: missing group");
    GroupSpec spec = parse_group(j["group"]);
    GroupPtr table_group;
    if (spec.from_table) table_group = build_group_from_table(spec.table);

    SComplex sx = j.contains("complex") ? parse_complex(j["complex"])
                                        : SComplex::from_maximal(1, {{0}});
    GComplex x = build_space(spec, table_group, std::move(sx),
                             j.contains("action") ? j["action"] : json(nullptr),
                             doc.options.closure_bound);
    doc.x = subdivide_if_needed(std::move(x), doc.options.subdivide, &doc.x_subdivided, "primary");

    if (j.contains("complex_y")) {
        SComplex sy = parse_complex(j["complex_y"]);
        GComplex y0 = build_space(spec, table_group, std::move(sy),
                                  j.contains("action_y") ? j["action_y"] : json(nullptr),
                                  doc.options.closure_bound);
        // Both spaces must live over one group object.
        GComplex y;
        y.space = std::move(y0.space);
        y.group = doc.x.group;
        if (y0.group->order() != doc.x.group->order() || y0.group->mul != doc.x.group->mul)
            throw input_error("cli: the second space must use the same group");
        y.vertex_action = std::move(y0.vertex_action);
        doc.y = subdivide_if_needed(std::move(y), doc.options.subdivide, &doc.y_subdivided,
                                    "secondary");
    }
    return doc;
}

std::string InputDocument::canonical_json() const {
    json j;
    j["schema"] = 1;
    j["group"] = {{"table", x.group->mul}};
    json cx;
    cx["vertices"] = x.space.ambient_vertices;
    cx["maximal"] = x.space.maximal_simplices();
    j["complex"] = cx;
    j["action"] = {{"by_element", x.vertex_action}};
    if (y) {
        json cy;
        cy["vertices"] = y->space.ambient_vertices;
        cy["maximal"] = y->space.maximal_simplices();
        j["complex_y"] = cy;
        j["action_y"] = {{"by_element", y->vertex_action}};
    }
    j["options"] = {{"subdivide", options.subdivide},
                    {"levels", std::vector<int>{options.level_m, options.level_n}},
                    {"max_degree", options.max_degree},
                    {"budget", options.budget},
                    {"degree_cap", options.degree_cap},
                    {"stabilize", options.stabilize},
                    {"subgroup_bound", options.subgroup_bound},
                    {"closure_bound", options.closure_bound}};
    return j.dump(2) + "\n";
}

std::string input_digest(const InputDocument& doc) {
    const std::string text = doc.canonical_json();
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << "fnv1a:" << std::hex << h;
    return os.str();
}

}  // namespace equihom

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "equihom/errors.hpp"
#include "equihom/input.hpp"
#include "equihom/report.hpp"

namespace {

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw equihom::input_error("cli: cannot open input file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equihom: equivariant homology of finite group actions on finite complexes"};
    app.require_subcommand(1);

    std::string input_path;
    std::string format = "json";
    bool subdivide = false;
    bool timing = false;
    bool stabilize = false;
    std::vector<int> levels;
    int max_degree = -1;
    long long budget = -1;
    int degree_cap = -1;

    std::vector<CLI::App*> subs;
    for (const auto& name : equihom::kCommands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--input", input_path, "input document (JSON), or - for stdin");
        sub->add_flag("--subdivide", subdivide,
                      "apply barycentric subdivision when the action is not type-preserving");
        sub->add_option("--levels", levels, "Hodge levels m,n for hp")->delimiter(',');
        sub->add_option("--max-degree", max_degree, "top form degree for the cyclic checks");
        sub->add_option("--budget", budget, "total form-dimension budget");
        sub->add_option("--degree-cap", degree_cap, "top degree for trace-check");
        sub->add_flag("--stabilize", stabilize, "tensor with K_G in hp");
        sub->add_option("--format", format, "json or table")
            ->check(CLI::IsMember({"json", "table"}));
        sub->add_flag("--timing", timing, "include timing in the report");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        std::string text = input_path.empty()
                               ? std::string("{\"schema\":1,\"group\":{\"table\":[[0]]}}")
                               : read_file(input_path);
        equihom::InputDocument doc = equihom::parse_input(text, subdivide);
        if (!levels.empty()) {
            if (levels.size() != 2) throw equihom::input_error("cli: --levels needs m,n");
            doc.options.level_m = levels[0];
            doc.options.level_n = levels[1];
        }
        if (max_degree >= 0) doc.options.max_degree = max_degree;
        if (budget >= 0) doc.options.budget = budget;
        if (degree_cap >= 0) doc.options.degree_cap = degree_cap;
        if (stabilize) doc.options.stabilize = true;

        equihom::Report report = equihom::run_command(command, doc, timing);
        std::cout << (format == "json" ? report.json_text : report.table_text);
        return report.exit_code;
    } catch (const equihom::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const equihom::budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const equihom::verification_error& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

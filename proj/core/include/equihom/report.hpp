#pragma once

#include <string>
#include <vector>

#include "equihom/input.hpp"

namespace equihom {

/// Structured command output. Reports are deterministic byte-for-byte for a
/// fixed input; timing is only included when explicitly requested.
struct Report {
    std::string command;
    std::string json_text;   // full report as pretty JSON
    std::string table_text;  // human-readable rendering
    int exit_code = 0;       // 0 ok, 4 when a mathematical verification failed
};

extern const std::vector<std::string> kCommands;

Report run_command(const std::string& command, const InputDocument& doc, bool with_timing = false);

}  // namespace equihom

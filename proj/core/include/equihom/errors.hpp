#pragma once

#include <stdexcept>
#include <string>

namespace equihom {

// Exit-code contract of the CLI: 2 = bad input, 3 = budget, 4 = a mathematical
// self-check failed (which signals an implementation bug, not a math failure).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct verification_error : std::runtime_error {
    explicit verification_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace equihom

// Error taxonomy.  Failures of a checked law are *results* (reports with
// witnesses), never exceptions; exceptions are reserved for misuse and
// resource guards.
#pragma once

#include <stdexcept>
#include <string>

namespace weaklaw {

// A caller violated an operation's precondition (non-commuting square handed
// to a pullback check, non-idempotent map handed to a splitter, ...).
struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// A construction would exceed the configured element budget.  Raised instead
// of silently truncating.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed external input (JSON, CLI arguments).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Default element budget for carrier constructions: 2^20 elements.
constexpr uint64_t kDefaultBudget = uint64_t(1) << 20;

}  // namespace weaklaw

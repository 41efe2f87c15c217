#pragma once

#include <stdexcept>
#include <string>

namespace stda {

// Bad inputs, malformed files, violated preconditions. CLI exit code 1.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// A state/size budget was exhausted before a definite answer was reached.
// The computation is inconclusive, not wrong. CLI exit code 2.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace stda

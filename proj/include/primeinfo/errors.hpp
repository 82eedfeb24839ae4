#pragma once
#include <stdexcept>
#include <string>

namespace primeinfo {

// Raised when a request would exceed a configured memory or runtime budget.
// Budgets are hard limits: the library never silently truncates instead.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a bitstream decodes to a state that no valid encoding can
// produce (e.g. an exponent that drives the running product past capacity).
class corruption_error : public std::runtime_error {
public:
    explicit corruption_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace primeinfo

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iflab {

enum class ErrorKind {
    Validation,
    Parse,
    NonConvergence,
    DimensionMismatch,
    BudgetExceeded,
    NotSmall,
    NotRegular,
    NotStronglyConnected,
    BadRatio,
    Reducible,
    NoRoot,
    BadAxis,
};

const char* to_string(ErrorKind kind);

// All library failures are reported through this one exception type; the
// kind lets callers (notably the CLI) map failures to exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Enumeration caps shared by every module that walks words or cells.
inline constexpr std::size_t kDefaultBudget = 2'000'000;

}  // namespace iflab

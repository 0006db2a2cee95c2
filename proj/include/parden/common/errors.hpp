#pragma once

#include <stdexcept>
#include <string>

namespace parden {

/// Precondition or API-contract breach by the caller.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Invalid or inconsistent experiment/CLI configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input data (CSV parsing, bad cells, non-monotone dates).
struct IngestionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure inside the portfolio solver (singular factorization,
/// infeasible constraint set).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace parden

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace gwistor::report {

/// Malformed input: unknown fields, bad numbers, wrong shapes. CLI exit 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Component lists violating the index skew-symmetries. CLI exit 3.
struct SymmetryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Classifies the model described by `spec` and returns the full report:
/// torsion forms, scalar invariants, class flags, structure-identity table.
nlohmann::json run_classify(const nlohmann::json& spec);

/// Structure equations, representation dimensions, eigenvalue multiplicities
/// and the fixed decomposition identities. `corrupt_orientation` flips the
/// 7-dim Hodge star as a negative control.
nlohmann::json run_identities(bool corrupt_orientation);

/// Torsion-space dimensions (components and solution spaces) and basis dump.
nlohmann::json run_torsion_space();

/// Numeric verification of the flat structure equations.
nlohmann::json run_flat_check(int points, double step, double tol, std::uint64_t seed);

}  // namespace gwistor::report

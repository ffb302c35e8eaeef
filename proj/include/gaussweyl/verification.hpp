#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gaussweyl {

struct CheckResult {
  std::string name;
  double measured;
  double tolerance;
  bool pass;
};

/// kernel-identity, spectral-cross, commutation, wiener, pq-identities.
const std::vector<std::string>& suite_names();

/// Runs a named suite ("all" runs every suite). `tol` replaces every
/// per-check tolerance when given. Throws DomainError for unknown names.
std::vector<CheckResult> run_suite(const std::string& name, std::optional<double> tol = std::nullopt);

}  // namespace gaussweyl

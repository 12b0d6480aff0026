#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nqc/certificates.hpp"

namespace nqc {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double budget_seconds = 0;
};

struct AcceptanceOptions {
  /// Replaces gen_strassen7 everywhere it is used (fault injection).
  std::optional<RankCertificate> strassen_override;
  std::uint64_t seed = 20240521;
  std::size_t random_alpha_sets = 20;
  std::size_t cleanup_instances = 100;
};

constexpr int kCriterionCount = 13;

/// Runs one criterion (1-based id); exceptions are reported as failures and
/// exceeding the time budget fails the criterion.
CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

}  // namespace nqc

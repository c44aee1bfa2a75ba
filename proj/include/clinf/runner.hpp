#pragma once

// Executes a verification plan: every requested check on every applicable
// declaration, for the requested number of seeded trials.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clinf/plan.hpp"
#include "clinf/random.hpp"

namespace clinf {

struct CheckInfo {
  std::string id;           ///< `suite.name`
  std::string suite;
  std::string applies_to;   ///< what the check iterates over
  std::string description;
};

/// Every check id, grouped by suite in the order of known_suites().
const std::vector<CheckInfo>& all_checks();

struct Counterexample {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;  ///< the trial's own generator seed
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string defect;
};

struct CheckRecord {
  std::string suite;
  std::string check;   ///< full id
  std::string target;  ///< declaration name
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  bool passed = true;
  /// Trials in which some individual term of the identity was nonzero.
  std::uint64_t nontrivial = 0;
  std::string note;
  std::optional<Counterexample> counterexample;
};

struct ConstructionError {
  std::string declaration;
  std::string message;
};

struct SuiteTiming {
  std::string suite;
  double seconds = 0;
};

struct Report {
  std::string plan_source;
  PlanSettings settings;
  std::string fault = "none";
  std::vector<ConstructionError> construction_errors;
  std::vector<CheckRecord> records;
  std::vector<SuiteTiming> timing;

  std::size_t passed() const;
  std::size_t failed() const;
  /// 0 all pass, 1 a defect was found, 2 a declaration failed to build.
  int exit_code() const;
};

struct RunOptions {
  bool timing = false;
  Fault fault = Fault::none;
};

Report run_plan(const VerificationPlan& plan, const RunOptions& options = {});

/// A random section of the instance's bundle (constant for point instances).
Section random_section(Rng& rng, const CourantAlgebroid& c, const RandomBounds& bounds);

}  // namespace clinf

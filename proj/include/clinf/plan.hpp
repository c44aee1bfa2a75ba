#pragma once

// Verification plans: a small nested-block text format and the instances it
// declares. The grammar is documented in docs/plan-format.md.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "clinf/courant.hpp"
#include "clinf/dirac.hpp"

namespace clinf {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Syntax or semantic error in a plan, with its position.
class PlanError : public std::runtime_error {
 public:
  PlanError(const std::string& source, SourcePos pos, const std::string& message);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct PlanBlock;

struct PlanValue {
  enum class Kind { string, number, list, block };
  Kind kind = Kind::string;
  std::string text;  ///< string contents, or the number as written
  Rational number;
  std::vector<PlanValue> items;
  std::shared_ptr<PlanBlock> block;
  SourcePos pos;
};

struct PlanEntry {
  std::string key;                  ///< identifier key, empty for index keys
  std::vector<std::size_t> indices;  ///< `(i,j,...)` key, 1-based
  PlanValue value;
  SourcePos pos;
};

struct PlanBlock {
  std::string name;  ///< `courant`, `plan`, ...; empty for nested blocks
  std::vector<PlanEntry> entries;
  SourcePos pos;

  const PlanEntry* find(std::string_view key) const;
};

struct PlanDocument {
  std::string source;
  std::vector<PlanBlock> blocks;
};

/// Throws PlanError on malformed input.
PlanDocument parse_plan_text(std::string_view text, const std::string& source = "<input>");

struct PlanSettings {
  std::uint64_t seed = 0;
  unsigned trials = 100;
  unsigned degree = 2;
  unsigned coeff = 3;
  std::vector<std::string> suites;
};

const std::vector<std::string>& known_suites();

struct InstanceDecl {
  std::string name;
  std::string kind;
  SourcePos pos;
  std::shared_ptr<const CourantAlgebroid> instance;  ///< null on construction error
  std::string error;
};

struct DiracDecl {
  std::string name;
  std::string ambient;
  std::string kind;
  SourcePos pos;
  std::optional<DiracCandidate> candidate;
  std::optional<DiffForm> omega;     ///< graph_2form input
  std::optional<Multivector> pi;     ///< graph_bivector input
  std::string error;
};

struct TransversalDecl {
  std::string name;
  std::string l1;
  std::string l2;
  SourcePos pos;
};

struct VerificationPlan {
  std::string source;
  PlanSettings settings;
  std::vector<InstanceDecl> instances;
  std::vector<DiracDecl> dirac;
  std::vector<TransversalDecl> transversal_pairs;

  const InstanceDecl* find_instance(std::string_view name) const;
  const DiracDecl* find_dirac(std::string_view name) const;
  bool has_construction_errors() const;
};

/// Builds every declared object. Syntax and reference errors throw
/// PlanError; mathematical construction failures (a non-Poisson π, an
/// invalid bialgebra) are recorded on the declaration instead.
VerificationPlan build_plan(const PlanDocument& doc, Fault fault = Fault::none);

/// Reads and builds a plan file. Throws PlanError (also for unreadable files).
VerificationPlan load_plan(const std::string& path, Fault fault = Fault::none);

}  // namespace clinf

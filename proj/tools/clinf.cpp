#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "clinf/plan.hpp"
#include "clinf/report.hpp"
#include "clinf/runner.hpp"

namespace {

struct VerifyArgs {
  std::string plan;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> trials;
  std::optional<unsigned> degree;
  std::optional<unsigned> coeff;
  std::vector<std::string> suites;
  bool json = false;
  bool timing = false;
  std::string fault = "none";
};

int verify(const VerifyArgs& a) {
  clinf::Fault fault = clinf::parse_fault(a.fault);
  clinf::VerificationPlan plan = clinf::load_plan(a.plan, fault);
  if (a.seed) plan.settings.seed = *a.seed;
  if (a.trials) plan.settings.trials = *a.trials;
  if (a.degree) plan.settings.degree = *a.degree;
  if (a.coeff) plan.settings.coeff = *a.coeff;
  if (!a.suites.empty()) plan.settings.suites = a.suites;
  if (plan.settings.trials == 0) throw std::invalid_argument("--trials must be at least 1");

  clinf::RunOptions options;
  options.timing = a.timing;
  options.fault = fault;
  clinf::Report report = clinf::run_plan(plan, options);
  std::cout << (a.json ? clinf::render_json(report) : clinf::render_text(report));
  return report.exit_code();
}

int list_checks() {
  for (const auto& c : clinf::all_checks()) std::cout << c.id << "\t" << c.applies_to << "\t" << c.description << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clinf: randomized exact verification of Courant algebroid identities"};
  app.require_subcommand(1);

  VerifyArgs args;
  auto* v = app.add_subcommand("verify", "run the checks of a plan file");
  v->add_option("plan", args.plan, "plan file")->required();
  v->add_option("--seed", args.seed, "override the plan seed");
  v->add_option("--trials", args.trials, "override trials per check");
  v->add_option("--degree", args.degree, "override the polynomial degree bound");
  v->add_option("--coeff", args.coeff, "override the coefficient bound");
  v->add_option("--suite", args.suites, "run only these suites (repeatable)")
      ->check(CLI::IsMember(clinf::known_suites()));
  v->add_flag("--json", args.json, "emit the report as JSON");
  v->add_flag("--timing", args.timing, "include wall-clock time per suite");
  v->add_option("--inject-fault", args.fault, "test-only corruption: flip-d-term, drop-pairing-half, drop-axiom3-term")
      ->check(CLI::IsMember({"none", "flip-d-term", "drop-pairing-half", "drop-axiom3-term"}));

  auto* l = app.add_subcommand("list-checks", "print every check id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*v) return verify(args);
    if (*l) return list_checks();
  } catch (const clinf::PlanError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

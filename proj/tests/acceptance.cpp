// Runs the seven acceptance criteria through the verification harness and
// prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "clinf/plan.hpp"
#include "clinf/report.hpp"
#include "clinf/runner.hpp"

using namespace clinf;

namespace {

const char* kPlan = "tests/acceptance.plan";
const std::vector<std::string> kInstances = {"standard", "poisson12", "poisson_so3", "drinfeld2", "quadratic_so3"};

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      detail = why;
    }
  }
};

Report run(const std::vector<std::string>& suites, unsigned trials, Fault fault = Fault::none, bool timing = false) {
  VerificationPlan plan = load_plan(kPlan, fault);
  plan.settings.suites = suites;
  plan.settings.trials = trials;
  RunOptions options;
  options.fault = fault;
  options.timing = timing;
  return run_plan(plan, options);
}

/// "closed 67, non-closed 33" -> {closed: 67, non-closed: 33}
std::map<std::string, std::uint64_t> tally(const std::string& note) {
  std::map<std::string, std::uint64_t> out;
  std::stringstream ss(note);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto start = item.find_first_not_of(' ');
    auto space = item.rfind(' ');
    if (start == std::string::npos || space == std::string::npos || space < start) continue;
    out[item.substr(start, space - start)] = std::stoull(item.substr(space + 1));
  }
  return out;
}

const CheckRecord* find(const Report& r, const std::string& check, const std::string& target) {
  for (const auto& rec : r.records)
    if (rec.check == check && rec.target == target) return &rec;
  return nullptr;
}

/// Every check of `suite` ran on every instance for `trials` trials with no failure.
void require_suite(Verdict& v, const Report& r, const std::string& suite, unsigned trials, std::uint64_t& total) {
  v.require(r.construction_errors.empty(), "construction errors in the acceptance plan");
  for (const auto& info : all_checks()) {
    if (info.suite != suite) continue;
    for (const auto& inst : kInstances) {
      const CheckRecord* rec = find(r, info.id, inst);
      v.require(rec != nullptr, info.id + " did not run on " + inst);
      if (!rec) continue;
      v.require(rec->trials == trials, info.id + " on " + inst + " ran " + std::to_string(rec->trials) + " trials");
      v.require(rec->passed, info.id + " on " + inst + " failed: " +
                                 (rec->counterexample ? rec->counterexample->defect : std::string{"?"}));
      total += rec->trials;
    }
  }
}

Verdict axioms(const Report& r) {
  Verdict v;
  std::uint64_t total = 0;
  require_suite(v, r, "axioms", 100, total);
  v.require(total == 6 * 5 * 100, "unexpected trial count");
  double secs = -1;
  for (const auto& t : r.timing)
    if (t.suite == "axioms") secs = t.seconds;
  v.require(secs >= 0 && secs < 30, "axioms suite took " + std::to_string(secs) + " s");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", secs);
  if (v.ok)
    v.detail = std::to_string(total) + " trials, antisymmetry and axioms 1-5 on 5 instances, zero defect, " + buf + " s";
  return v;
}

Verdict lemmas(const Report& r) {
  Verdict v;
  std::uint64_t total = 0;
  require_suite(v, r, "lemmas", 100, total);
  const CheckRecord* k = find(r, "lemmas.K_plus_2J", "standard");
  v.require(k && k->nontrivial > 0, "K + 2J never exercised nonzero K on the standard instance");
  if (v.ok) v.detail = std::to_string(total) + " trials, [e,Df] = D<e,Df>, T(e1,e2,Df), K + 2J, zero defect";
  return v;
}

Verdict shla(const Report& r) {
  Verdict v;
  std::uint64_t total = 0;
  require_suite(v, r, "shla", 100, total);
  std::uint64_t mixed = 0;
  for (int n = 1; n <= 5; ++n)
    for (const auto& inst : kInstances) {
      const CheckRecord* rec = find(r, "shla.n" + std::to_string(n), inst);
      if (!rec) continue;
      auto t = tally(rec->note);
      v.require(t["mixed degrees"] > 0, "shla.n" + std::to_string(n) + " on " + inst + " saw no degree-1/2 factors");
      mixed += t["mixed degrees"];
    }
  const CheckRecord* j = find(r, "shla.jacobiator", "quadratic_so3");
  v.require(j && j->nontrivial > 0, "l3 never nonzero on quadratic so(3)");
  if (v.ok)
    v.detail = "n = 1..5, 100 words per n per instance (" + std::to_string(mixed) +
               " with degree-1/2 factors), zero defect";
  return v;
}

Verdict dirac(const Report& r) {
  Verdict v;
  const CheckRecord* forms = find(r, "dirac.graph_2form", "standard");
  const CheckRecord* bivs = find(r, "dirac.graph_bivector", "standard");
  v.require(forms && bivs, "Dirac battery did not run");
  if (!v.ok) return v;
  auto f = tally(forms->note), b = tally(bivs->note);
  v.require(forms->passed, "2-form battery: " + (forms->counterexample ? forms->counterexample->defect : ""));
  v.require(bivs->passed, "bivector battery: " + (bivs->counterexample ? bivs->counterexample->defect : ""));
  v.require(forms->trials >= 10 && f["closed"] >= 3 && f["non-closed"] >= 3, "2-form battery too small: " + forms->note);
  v.require(bivs->trials >= 10 && b["Poisson"] + b["linear so(3)"] >= 3 && b["linear so(3)"] >= 1 &&
                b["non-Poisson"] >= 3,
            "bivector battery too small: " + bivs->note);
  for (const auto& rec : r.records)
    if (rec.check == "dirac.declared") v.require(rec.passed, "declared candidate " + rec.target + " failed");
  if (v.ok)
    v.detail = std::to_string(forms->trials) + " 2-forms (" + forms->note + "), " + std::to_string(bivs->trials) +
               " bivectors (" + bivs->note + ")";
  return v;
}

Verdict roundtrip() {
  Report r = run({"bialgebroid"}, 50);
  Verdict v;
  const CheckRecord* rt = find(r, "bialgebroid.roundtrip", "standard_split");
  const CheckRecord* dual = find(r, "bialgebroid.dual_compat", "standard_split");
  v.require(rt && rt->trials == 50 && rt->passed, "roundtrip on (TM, T*M) failed");
  v.require(dual && dual->trials == 50 && dual->passed, "swapped extraction fails compatibility");
  for (const auto& rec : r.records) v.require(rec.passed, rec.check + " on " + rec.target + " failed");
  if (v.ok) v.detail = "50 section pairs per transversal pair, " + std::to_string(r.records.size()) + " records pass";
  return v;
}

Verdict mutations() {
  Verdict v;
  std::string detail;
  for (Fault f : {Fault::flip_d_term, Fault::drop_pairing_half, Fault::drop_axiom3_term}) {
    Report r = run({"axioms", "lemmas", "shla"}, 100, f);
    const CheckRecord* first = nullptr;
    std::size_t failing = 0;
    for (const auto& rec : r.records)
      if (!rec.passed) {
        ++failing;
        if (!first) first = &rec;
      }
    v.require(first != nullptr, to_string(f) + " went undetected");
    if (!first) continue;
    const auto& ce = first->counterexample;
    v.require(ce && !ce->inputs.empty() && !ce->defect.empty(), to_string(f) + " failure lacks a counterexample");
    v.require(r.exit_code() == 1, to_string(f) + " run did not exit with status 1");
    detail += (detail.empty() ? "" : "; ") + to_string(f) + ": " + std::to_string(failing) + " failing, first " +
              first->check + " on " + first->target;
  }
  if (v.ok) v.detail = detail;
  return v;
}

Verdict determinism(const Report& a, const Report& b) {
  Verdict v;
  v.require(render_text(a) == render_text(b), "text reports differ");
  v.require(render_json(a) == render_json(b), "JSON reports differ");
  if (v.ok) v.detail = "two full runs, " + std::to_string(render_text(a).size()) + " bytes text, identical JSON";
  return v;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  int failed = 0;
  auto report = [&](int n, const char* name, const Verdict& v, double secs) {
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", v.ok ? "PASS" : "FAIL", n, name, v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !v.ok;
  };
  auto timed = [](auto&& fn) {
    auto t0 = clock::now();
    auto out = fn();
    return std::pair{out, std::chrono::duration<double>(clock::now() - t0).count()};
  };

  try {
    auto [first, t_first] = timed([] { return run(known_suites(), 100, Fault::none, true); });
    report(1, "Courant axioms", axioms(first), t_first);
    report(2, "derived identities", lemmas(first), 0);
    report(3, "SHLA relations", shla(first), 0);
    report(4, "Dirac equivalences", dirac(first), 0);
    auto [v5, t5] = timed(roundtrip);
    report(5, "bialgebroid roundtrip", v5, t5);
    auto [v6, t6] = timed(mutations);
    report(6, "mutation sensitivity", v6, t6);
    auto [second, t_second] = timed([] { return run(known_suites(), 100); });
    // Timing is opt-in and excluded from the comparison.
    first.timing.clear();
    report(7, "determinism", determinism(first, second), t_second);
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d of 7 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

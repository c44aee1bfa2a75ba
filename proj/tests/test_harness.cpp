#include <cstdlib>
#include <fstream>
#include <sstream>

#include "clinf/plan.hpp"
#include "clinf/report.hpp"
#include "clinf/runner.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace clinf;

namespace {

VerificationPlan plan_from(const std::string& text, Fault f = Fault::none) {
  return build_plan(parse_plan_text(text, "test.plan"), f);
}

SourcePos error_pos(const std::string& text) {
  try {
    plan_from(text);
  } catch (const PlanError& e) {
    return e.pos();
  }
  FAIL("expected a PlanError");
  return {};
}

std::string golden_sections() {
  std::ostringstream out;
  Rng rng(trial_seed(0, "golden", "random_section", 0));
  for (int k = 0; k < 4; ++k) out << random_section(rng, 6, 3, {2, 3}).to_string() << "\n";
  Rng point(7);
  for (int k = 0; k < 2; ++k) out << random_section(point, 4, 0, {2, 3}).to_string() << "\n";
  return out.str();
}

}  // namespace

TEST_CASE("plan syntax") {
  auto doc = parse_plan_text(
      "# comment\nplan { seed = 5, trials: 7 }\ncourant { name = \"a\" kind = \"standard\" dim = 2 }\n", "x");
  REQUIRE(doc.blocks.size() == 2);
  CHECK(doc.blocks[1].name == "courant");
  CHECK(doc.blocks[1].pos.line == 3);
  auto plan = build_plan(doc);
  CHECK(plan.settings.seed == 5);
  CHECK(plan.settings.trials == 7);
  CHECK(plan.settings.degree == 2);
  CHECK(plan.settings.coeff == 3);
  CHECK(plan.settings.suites == known_suites());
  REQUIRE(plan.find_instance("a"));
  CHECK(plan.find_instance("a")->instance->nvars() == 2);
}

TEST_CASE("plan errors carry line and column") {
  SourcePos p = error_pos("plan {\n  trials = 0\n}\n");
  CHECK(p.line == 2);
  CHECK(p.column == 12);
  p = error_pos("courant { name = \"a\", kind = \"standard\" }\ncourant { name = \"a\", kind = \"standard\" }\n");
  CHECK(p.line == 2);
  p = error_pos("courant { name = \"a\", kind = \"bogus\" }");
  CHECK(p.line == 1);
  CHECK(p.column == 30);
  p = error_pos("plan { seed = 1 \n");
  CHECK(p.line == 2);
  p = error_pos("courant { name = \"a\", kind = \"standard\", colour = 1 }");
  CHECK(p.column == 42);
  p = error_pos("dirac { name = \"d\", ambient = \"missing\", kind = \"vector_part\" }");
  CHECK(p.column == 31);
  p = error_pos("plan { suites = [\"axioms\", \"nope\"] }");
  CHECK(p.column == 28);
  try {
    plan_from("courant { name = \"q\" kind = \"quadratic\"\n  pairing = [[1, 0], [0]] c = {} }");
    FAIL("expected a PlanError");
  } catch (const PlanError& e) {
    CHECK(std::string(e.what()).rfind("test.plan:2:", 0) == 0);
  }
  CHECK_THROWS_AS(load_plan("plans/does-not-exist.plan"), PlanError);
}

TEST_CASE("construction errors are recorded, not thrown") {
  auto plan = plan_from(R"(
    algebroid { name = "T", kind = "tangent" }
    algebroid { name = "Tbad", kind = "cotangent_poisson", pi = { (1,2): 1, (2,3): "x2" } }
    courant { name = "bad", kind = "bialgebroid_double", pair = { a = "T", astar = "Tbad" } }
    courant { name = "good", kind = "standard" }
  )");
  CHECK(plan.has_construction_errors());
  CHECK_FALSE(plan.find_instance("bad")->instance);
  CHECK(plan.find_instance("bad")->error.find("not Poisson") != std::string::npos);
  Report report = run_plan(plan);
  REQUIRE(report.construction_errors.size() == 1);
  CHECK(report.construction_errors[0].declaration == "bad");
  CHECK(report.exit_code() == 2);
  CHECK(report.passed() > 0);
}

TEST_CASE("random sections") {
  Rng a(3), b(3);
  for (int t = 0; t < 5; ++t) CHECK(random_section(a, 6, 3, {2, 3}) == random_section(b, 6, 3, {2, 3}));
  Rng r(4);
  for (int t = 0; t < 10; ++t) {
    Section s = random_section(r, 6, 3, {0, 1});
    for (const auto& p : s.coords()) {
      CHECK(p.is_constant());
      CHECK(abs(p.constant_term()) <= 1);
    }
  }
  Rng s(5);
  CHECK(random_section(s, 6, 3, {2, 3}) != random_section(s, 6, 3, {2, 3}));
  for (int t = 0; t < 10; ++t) {
    Section x = random_section(s, 6, 3, {2, 3});
    for (const auto& p : x.coords()) {
      CHECK(p.total_degree() <= 2);
      for (const auto& [m, c] : p.terms()) CHECK(abs(c) <= 3);
    }
  }
  CHECK(trial_seed(0, "a", "b", 1) == trial_seed(0, "a", "b", 1));
  CHECK(trial_seed(0, "a", "b", 1) != trial_seed(0, "a", "b", 2));
  CHECK(trial_seed(0, "a", "b", 1) != trial_seed(1, "a", "b", 1));
}

TEST_CASE("random sections match the golden file") {
  const char* path = "tests/golden/random_sections.txt";
  if (std::getenv("CLINF_UPDATE_GOLDEN")) std::ofstream(path) << golden_sections();
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == golden_sections());
}

TEST_CASE("standard instance passes the axioms suite") {
  auto plan = plan_from("plan { trials = 10, suites = [\"axioms\"] }\ncourant { name = \"s\", kind = \"standard\" }");
  Report report = run_plan(plan);
  CHECK(report.records.size() == 6);
  CHECK(report.exit_code() == 0);
  for (const auto& rec : report.records) {
    CHECK(rec.passed);
    CHECK(rec.trials == 10);
    CHECK(rec.suite == "axioms");
  }
}

TEST_CASE("quadratic so(3) passes the shla suite with l3 nontrivial") {
  auto plan = load_plan("plans/quadratic_so3.plan");
  plan.settings.suites = {"shla"};
  plan.settings.trials = 20;
  Report report = run_plan(plan);
  CHECK(report.exit_code() == 0);
  bool l3 = false;
  for (const auto& rec : report.records)
    if (rec.check == "shla.jacobiator") l3 = rec.nontrivial > 0;
  CHECK(l3);
}

TEST_CASE("an injected fault yields a reproducible counterexample") {
  const std::string text = "plan { trials = 5, suites = [\"axioms\"] }\ncourant { name = \"s\", kind = \"standard\" }";
  auto plan = plan_from(text, Fault::flip_d_term);
  RunOptions opt;
  opt.fault = Fault::flip_d_term;
  Report report = run_plan(plan, opt);
  CHECK(report.exit_code() == 1);
  CHECK(report.fault == "flip-d-term");
  const CheckRecord* failed = nullptr;
  for (const auto& rec : report.records)
    if (!rec.passed) {
      failed = &rec;
      break;
    }
  REQUIRE(failed);
  REQUIRE(failed->counterexample);
  const auto& ce = *failed->counterexample;
  CHECK_FALSE(ce.inputs.empty());
  CHECK_FALSE(ce.defect.empty());
  CHECK(ce.seed == trial_seed(0, failed->target, failed->check, ce.trial));

  // Replaying the recorded inputs reproduces the defect.
  auto c = plan.find_instance("s")->instance;
  if (failed->check == "axioms.axiom1") {
    std::vector<Section> s;
    for (const auto& [name, value] : ce.inputs) {
      std::vector<Poly> coords;
      std::string body = value.substr(1, value.size() - 2);
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) coords.push_back(Poly::parse(item, 3));
      s.emplace_back(coords, 3);
    }
    CHECK(check_axiom(*c, 1, s, {}).to_string() == ce.defect);
  }
}

TEST_CASE("reports are deterministic and the JSON schema is stable") {
  auto plan = load_plan("plans/standard.plan");
  plan.settings.trials = 3;
  std::string a = render_text(run_plan(plan)), b = render_text(run_plan(plan));
  CHECK(a == b);
  std::string ja = render_json(run_plan(plan)), jb = render_json(run_plan(plan));
  CHECK(ja == jb);
  auto j = nlohmann::json::parse(ja);
  CHECK(j["schema"] == "clinf-report/1");
  CHECK(j["exit_code"] == 0);
  CHECK(j["settings"]["trials"] == 3);
  CHECK(j["records"].size() == j["totals"]["checks"]);
  CHECK_FALSE(j.contains("timing_seconds"));
  for (const char* key : {"suite", "check", "target", "trials", "failures", "passed", "nontrivial", "note", "counterexample"})
    CHECK(j["records"][0].contains(key));
  RunOptions timed;
  timed.timing = true;
  CHECK(nlohmann::json::parse(render_json(run_plan(plan, timed))).contains("timing_seconds"));
}

TEST_CASE("check registry") {
  const auto& checks = all_checks();
  std::vector<std::string> order;
  for (const auto& c : checks)
    if (order.empty() || order.back() != c.suite) order.push_back(c.suite);
  CHECK(order == known_suites());
  for (const auto& c : checks) CHECK(c.id.rfind(c.suite + ".", 0) == 0);
}

#include "clinf/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace clinf {

namespace {

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ",") + x;
  return out;
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

}  // namespace

std::string render_text(const Report& r) {
  std::ostringstream out;
  const auto& s = r.settings;
  out << "plan " << r.plan_source << "\n";
  out << "seed " << s.seed << "  trials " << s.trials << "  degree " << s.degree << "  coeff " << s.coeff
      << "  suites " << join(s.suites) << "\n";
  if (r.fault != "none") out << "fault injected: " << r.fault << "\n";
  for (const auto& e : r.construction_errors) out << "CONSTRUCTION ERROR " << e.declaration << ": " << e.message << "\n";
  std::string suite;
  for (const auto& rec : r.records) {
    if (rec.suite != suite) {
      suite = rec.suite;
      out << "\n[" << suite << "]\n";
    }
    out << (rec.passed ? "PASS " : "FAIL ") << rec.check << " on " << rec.target << "  " << rec.trials - rec.failures
        << "/" << rec.trials;
    if (rec.nontrivial) out << "  nontrivial " << rec.nontrivial;
    if (!rec.note.empty()) out << "  (" << rec.note << ")";
    out << "\n";
    if (rec.counterexample) {
      const auto& c = *rec.counterexample;
      out << "  counterexample: trial " << c.trial << ", trial seed " << c.seed << "\n";
      for (const auto& [name, value] : c.inputs) out << "    " << name << " = " << value << "\n";
      out << "    defect = " << c.defect << "\n";
    }
  }
  if (!r.timing.empty()) {
    out << "\n";
    for (const auto& t : r.timing) out << "time " << t.suite << " " << seconds(t.seconds) << " s\n";
  }
  out << "\n" << r.passed() << " passed, " << r.failed() << " failed, " << r.construction_errors.size()
      << " construction errors\n";
  return out.str();
}

std::string render_json(const Report& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = "clinf-report/1";
  j["plan"] = r.plan_source;
  j["settings"] = {{"seed", r.settings.seed},
                   {"trials", r.settings.trials},
                   {"degree", r.settings.degree},
                   {"coeff", r.settings.coeff},
                   {"suites", r.settings.suites}};
  j["fault"] = r.fault;
  ordered_json errors = ordered_json::array();
  for (const auto& e : r.construction_errors) errors.push_back({{"declaration", e.declaration}, {"message", e.message}});
  j["construction_errors"] = errors;
  ordered_json records = ordered_json::array();
  for (const auto& rec : r.records) {
    ordered_json x;
    x["suite"] = rec.suite;
    x["check"] = rec.check;
    x["target"] = rec.target;
    x["trials"] = rec.trials;
    x["failures"] = rec.failures;
    x["passed"] = rec.passed;
    x["nontrivial"] = rec.nontrivial;
    x["note"] = rec.note;
    if (rec.counterexample) {
      const auto& c = *rec.counterexample;
      ordered_json inputs = ordered_json::array();
      for (const auto& [name, value] : c.inputs) inputs.push_back({{"name", name}, {"value", value}});
      x["counterexample"] = {{"trial", c.trial}, {"seed", c.seed}, {"inputs", inputs}, {"defect", c.defect}};
    } else {
      x["counterexample"] = nullptr;
    }
    records.push_back(std::move(x));
  }
  j["records"] = records;
  j["totals"] = {{"checks", r.records.size()},
                 {"passed", r.passed()},
                 {"failed", r.failed()},
                 {"construction_errors", r.construction_errors.size()}};
  if (!r.timing.empty()) {
    ordered_json t = ordered_json::object();
    for (const auto& s : r.timing) t[s.suite] = s.seconds;
    j["timing_seconds"] = t;
  }
  j["exit_code"] = r.exit_code();
  return j.dump(2) + "\n";
}

}  // namespace clinf

#include "clinf/runner.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

#include "clinf/linfty.hpp"

namespace clinf {

const std::vector<CheckInfo>& all_checks() {
  static const std::vector<CheckInfo> checks = {
      {"axioms.antisymmetry", "axioms", "courant", "[e1,e2] + [e2,e1] = 0"},
      {"axioms.axiom1", "axioms", "courant", "J(e1,e2,e3) = D T(e1,e2,e3)"},
      {"axioms.axiom2", "axioms", "courant", "rho[e1,e2] = [rho e1, rho e2]"},
      {"axioms.axiom3", "axioms", "courant", "[e1, f e2] = f[e1,e2] + (rho(e1)f) e2 - <e1,e2> D f"},
      {"axioms.axiom4", "axioms", "courant", "<D f, D g> = 0"},
      {"axioms.axiom5", "axioms", "courant", "rho(e)<h1,h2> = <[e,h1] + D<e,h1>, h2> + <h1, [e,h2] + D<e,h2>>"},
      {"lemmas.bracket_with_D", "lemmas", "courant", "[e, D f] = D<e, D f>"},
      {"lemmas.T_with_D", "lemmas", "courant", "T(e1,e2,D f) = 1/4 rho([e1,e2]) f"},
      {"lemmas.K_plus_2J", "lemmas", "courant", "K + 2J = 0 for four sections"},
      {"shla.n1", "shla", "courant", "l1 l1 = 0 on random words"},
      {"shla.n2", "shla", "courant", "l1 l2 - l2 l1 = 0 on random words"},
      {"shla.n3", "shla", "courant", "l1 l3 + l2 l2 + l3 l1 = 0 on random words"},
      {"shla.n4", "shla", "courant", "-l4 l1 + l3 l2 - l2 l3 + l1 l4 = 0 on random words"},
      {"shla.n5", "shla", "courant", "the arity-5 relation on random words"},
      {"shla.jacobiator", "shla", "courant", "l1(l3(e1,e2,e3)) + J(e1,e2,e3) = 0"},
      {"shla.exactness", "shla", "courant", "l1 l1 = 0 and ker l1 on functions is the constants"},
      {"dirac.graph_2form", "dirac", "standard courant", "graph of omega integrable iff d omega = 0"},
      {"dirac.graph_bivector", "dirac", "standard courant", "graph of pi integrable iff [pi,pi] = 0"},
      {"dirac.declared", "dirac", "dirac", "declared candidate: isotropy and integrability"},
      {"bialgebroid.compat", "bialgebroid", "transversal_pair, bialgebroid_double",
       "d_*[X,Y] = [d_*X,Y] + [X,d_*Y]"},
      {"bialgebroid.dual_compat", "bialgebroid", "transversal_pair, bialgebroid_double",
       "the same for the swapped pair"},
      {"bialgebroid.roundtrip", "bialgebroid", "transversal_pair",
       "the double of the extracted pair reproduces the ambient bracket"},
  };
  return checks;
}

std::size_t Report::passed() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.passed; }));
}

std::size_t Report::failed() const { return records.size() - passed(); }

int Report::exit_code() const {
  if (!construction_errors.empty()) return 2;
  return failed() == 0 ? 0 : 1;
}

Section random_section(Rng& rng, const CourantAlgebroid& c, const RandomBounds& bounds) {
  return random_section(rng, c.rank(), c.nvars(), bounds);
}

namespace {

struct Outcome {
  bool ok = true;
  bool nontrivial = false;
  std::string category;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string defect;

  void fail(std::string d) {
    ok = false;
    defect = std::move(d);
  }
};

using TrialFn = std::function<void(Rng&, Outcome&)>;

struct Job {
  std::string target;
  std::uint64_t trials;
  TrialFn fn;
};

CheckRecord run_job(const CheckInfo& info, const Job& job, std::uint64_t seed) {
  CheckRecord rec;
  rec.suite = info.suite;
  rec.check = info.id;
  rec.target = job.target;
  std::map<std::string, std::uint64_t> tally;
  for (std::uint64_t t = 0; t < job.trials; ++t) {
    std::uint64_t s = trial_seed(seed, job.target, info.id, t);
    Rng rng(s);
    Outcome o;
    try {
      job.fn(rng, o);
    } catch (const std::exception& ex) {
      o.fail(std::string{"exception: "} + ex.what());
    }
    ++rec.trials;
    if (o.nontrivial) ++rec.nontrivial;
    if (!o.category.empty()) ++tally[o.category];
    if (!o.ok) {
      ++rec.failures;
      rec.passed = false;
      if (!rec.counterexample) rec.counterexample = Counterexample{t, s, std::move(o.inputs), std::move(o.defect)};
    }
  }
  for (const auto& [k, v] : tally) rec.note += (rec.note.empty() ? "" : ", ") + k + " " + std::to_string(v);
  return rec;
}

std::string labelled(const ResElement& x) { return "deg " + std::to_string(x.degree()) + ": " + x.to_string(); }

class Runner {
 public:
  Runner(const VerificationPlan& plan, const RunOptions& options) : plan_(plan), options_(options) {
    bounds_.degree = plan.settings.degree;
    bounds_.coeff = plan.settings.coeff;
  }

  Report run() {
    Report report;
    report.plan_source = plan_.source;
    report.settings = plan_.settings;
    report.fault = to_string(options_.fault);
    for (const auto& i : plan_.instances)
      if (!i.error.empty()) report.construction_errors.push_back({i.name, i.error});
    for (const auto& d : plan_.dirac)
      if (!d.error.empty()) report.construction_errors.push_back({d.name, d.error});

    for (const auto& suite : known_suites()) {
      const auto& req = plan_.settings.suites;
      if (std::find(req.begin(), req.end(), suite) == req.end()) continue;
      auto start = std::chrono::steady_clock::now();
      for (const auto& info : all_checks()) {
        if (info.suite != suite) continue;
        for (const auto& job : jobs(info)) report.records.push_back(run_job(info, job, plan_.settings.seed));
      }
      if (options_.timing) {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.timing.push_back({suite, secs});
      }
    }
    return report;
  }

 private:
  std::vector<Job> jobs(const CheckInfo& info) {
    std::vector<Job> out;
    const std::uint64_t trials = plan_.settings.trials;
    if (info.suite == "axioms" || info.suite == "lemmas" || info.suite == "shla") {
      for (const auto& d : plan_.instances)
        if (d.instance) out.push_back({d.name, trials, courant_check(info.id, d.instance)});
    } else if (info.id == "dirac.graph_2form" || info.id == "dirac.graph_bivector") {
      for (const auto& d : plan_.instances)
        if (d.instance && d.instance->kind() == CourantKind::standard)
          out.push_back({d.name, trials, dirac_battery(info.id, d.instance)});
    } else if (info.id == "dirac.declared") {
      for (const auto& d : plan_.dirac)
        if (d.candidate) out.push_back({d.name, 1, declared_dirac(d)});
    } else if (info.suite == "bialgebroid") {
      for (const auto& p : plan_.transversal_pairs) {
        const DiracDecl* l1 = plan_.find_dirac(p.l1);
        const DiracDecl* l2 = plan_.find_dirac(p.l2);
        if (!l1->candidate || !l2->candidate) continue;
        out.push_back({p.name, trials, transversal_check(info.id, *l1->candidate, *l2->candidate)});
      }
      if (info.id != "bialgebroid.roundtrip")
        for (const auto& d : plan_.instances)
          if (d.instance && d.instance->kind() == CourantKind::bialgebroid_double) {
            LieBialgebroidPair pair = *d.instance->pair();
            if (info.id == "bialgebroid.dual_compat") pair = pair.dual();
            out.push_back({d.name, trials, compat_check(std::move(pair))});
          }
    }
    return out;
  }

  TrialFn courant_check(const std::string& id, std::shared_ptr<const CourantAlgebroid> cp) {
    const RandomBounds b = bounds_;
    auto sec = [cp, b](Rng& r) { return random_section(r, *cp, b); };
    auto fun = [cp, b](Rng& r) { return random_poly(r, cp->nvars(), b); };

    if (id == "axioms.antisymmetry")
      return [=](Rng& r, Outcome& o) {
        Section e1 = sec(r), e2 = sec(r);
        Section d = antisymmetry_defect(*cp, e1, e2);
        if (!d.is_zero()) {
          o.inputs = {{"e1", e1.to_string()}, {"e2", e2.to_string()}};
          o.fail(d.to_string());
        }
      };
    if (id.rfind("axioms.axiom", 0) == 0) {
      int k = id.back() - '0';
      return [=](Rng& r, Outcome& o) {
        std::vector<Section> s;
        std::vector<Poly> f;
        const std::size_t ns = k == 4 ? 0 : (k == 2 || k == 3) ? 2 : 3;
        const std::size_t nf = k == 4 ? 2 : k == 3 ? 1 : 0;
        for (std::size_t i = 0; i < ns; ++i) s.push_back(sec(r));
        for (std::size_t i = 0; i < nf; ++i) f.push_back(fun(r));
        Defect d = check_axiom(*cp, k, s, f);
        if (!d.is_zero()) {
          static const char* section_names[3] = {"e1", "e2", "e3"};
          static const char* axiom5_names[3] = {"e", "h1", "h2"};
          for (std::size_t i = 0; i < ns; ++i) o.inputs.emplace_back(k == 5 ? axiom5_names[i] : section_names[i], s[i].to_string());
          static const char* function_names[2] = {"f", "g"};
          for (std::size_t i = 0; i < nf; ++i) o.inputs.emplace_back(function_names[i], f[i].to_string());
          o.fail(d.to_string());
        }
      };
    }
    if (id == "lemmas.bracket_with_D")
      return [=](Rng& r, Outcome& o) {
        Section e = sec(r);
        Poly f = fun(r);
        Section d = check_prop_main(*cp, e, f);
        if (!d.is_zero()) {
          o.inputs = {{"e", e.to_string()}, {"f", f.to_string()}};
          o.fail(d.to_string());
        }
      };
    if (id == "lemmas.T_with_D")
      return [=](Rng& r, Outcome& o) {
        Section e1 = sec(r), e2 = sec(r);
        Poly f = fun(r);
        Poly d = check_lemma_a1(*cp, e1, e2, f);
        if (!d.is_zero()) {
          o.inputs = {{"e1", e1.to_string()}, {"e2", e2.to_string()}, {"f", f.to_string()}};
          o.fail(d.to_string());
        }
      };
    if (id == "lemmas.K_plus_2J")
      return [=](Rng& r, Outcome& o) {
        Section e1 = sec(r), e2 = sec(r), e3 = sec(r), e4 = sec(r);
        auto t = lemma_a2_terms(*cp, e1, e2, e3, e4);
        o.nontrivial = !t.k.is_zero();
        Poly d = t.k + Rational{2} * t.j;
        if (!d.is_zero()) {
          o.inputs = {{"e1", e1.to_string()}, {"e2", e2.to_string()}, {"e3", e3.to_string()}, {"e4", e4.to_string()}};
          o.fail(d.to_string());
        }
      };

    auto res = std::make_shared<Resolution>(cp);
    if (id.rfind("shla.n", 0) == 0) {
      std::size_t n = static_cast<std::size_t>(id.back() - '0');
      return [=](Rng& r, Outcome& o) {
        // Every third word is all sections; the rest mix degrees 0, 1, 2 with
        // weights 3 : 2 : 1.
        bool sections_only = r.uniform(0, 2) == 0;
        std::vector<ResElement> w;
        for (std::size_t k = 0; k < n; ++k) {
          std::int64_t pick = sections_only ? 0 : r.uniform(0, 5);
          if (pick < 3) w.push_back(ResElement::section(sec(r)));
          else if (pick < 5) w.push_back(ResElement::function(fun(r)));
          else w.push_back(ResElement::kernel(res->kernel_element(Poly(cp->nvars(), r.uniform(-std::int64_t{b.coeff}, std::int64_t{b.coeff})))));
        }
        o.category = std::any_of(w.begin(), w.end(), [](const auto& x) { return x.degree() > 0; }) ? "mixed degrees"
                                                                                                  : "sections only";
        ShlaDefect d = res->shla_defect(w);
        o.nontrivial = std::any_of(d.parts.begin(), d.parts.end(), [](const auto& p) { return p.has_value(); });
        if (!d.is_zero()) {
          for (std::size_t k = 0; k < n; ++k) o.inputs.emplace_back("x" + std::to_string(k + 1), labelled(w[k]));
          o.fail(d.to_string());
        }
      };
    }
    if (id == "shla.jacobiator")
      return [=](Rng& r, Outcome& o) {
        Section e1 = sec(r), e2 = sec(r), e3 = sec(r);
        auto l3 = res->l3(ResElement::section(e1), ResElement::section(e2), ResElement::section(e3));
        Section lhs = jacobiator(*cp, e1, e2, e3);
        o.nontrivial = l3.has_value();
        if (l3) {
          auto l1 = res->l1(*l3);
          if (l1) lhs += l1->as_section();
        }
        if (!lhs.is_zero()) {
          o.inputs = {{"e1", e1.to_string()}, {"e2", e2.to_string()}, {"e3", e3.to_string()}};
          o.fail(lhs.to_string());
        }
      };
    if (id == "shla.exactness")
      return [=](Rng& r, Outcome& o) {
        Poly f = fun(r);
        ResElement c = ResElement::kernel(res->kernel_element(Poly(cp->nvars(), r.uniform(-std::int64_t{b.coeff}, std::int64_t{b.coeff}))));
        auto lf = res->l1(ResElement::function(f));
        std::string problem;
        if (lf && res->l1(*lf)) problem = "l1 l1 f != 0";
        auto lc = res->l1(c);
        if (lc && res->l1(*lc)) problem = "l1 l1 c != 0";
        if (!lf && !f.is_constant()) problem = "D f = 0 for a nonconstant f";
        o.nontrivial = lf.has_value();
        if (!problem.empty()) {
          o.inputs = {{"f", f.to_string()}, {"c", c.to_string()}};
          o.fail(problem);
        }
      };
    throw std::logic_error("no courant check named " + id);
  }

  TrialFn dirac_battery(const std::string& id, std::shared_ptr<const CourantAlgebroid> cp) {
    const RandomBounds b = bounds_;
    const std::size_t n = cp->nvars();
    if (id == "dirac.graph_2form")
      return [=](Rng& r, Outcome& o) {
        // Alternate exact forms, constant forms and generic forms so both
        // classes are exercised.
        DiffForm omega(n, n, 2);
        switch (r.uniform(0, 2)) {
          case 0: omega = de_rham_d(random_exterior<FormTag>(r, n, n, 1, b)); break;
          case 1: omega = random_exterior<FormTag>(r, n, n, 2, RandomBounds{0, b.coeff}); break;
          default: omega = random_exterior<FormTag>(r, n, n, 2, b); break;
        }
        bool closed = de_rham_d(omega).is_zero();
        DiracCheck integ = is_integrable(DiracCandidate::graph_2form(cp, omega));
        o.category = closed ? "closed" : "non-closed";
        if (integ.ok != closed) {
          o.inputs = {{"omega", omega.to_string()}};
          o.fail(std::string{"is_integrable = "} + (integ.ok ? "true" : "false") + " but d omega " +
                 (closed ? "= 0" : "!= 0"));
        }
      };
    return [=](Rng& r, Outcome& o) {
      Multivector pi(n, n, 2);
      bool linear_so3 = false;
      switch (r.uniform(0, 3)) {
        case 0: {
          std::size_t a = static_cast<std::size_t>(r.uniform(0, static_cast<std::int64_t>(n) - 1));
          std::size_t c = static_cast<std::size_t>(r.uniform(0, static_cast<std::int64_t>(n) - 1));
          if (a != c) pi = Multivector::basis(n, {a, c}, random_poly(r, n, b));
          break;
        }
        case 1: pi = random_exterior<VectorTag>(r, n, n, 2, RandomBounds{0, b.coeff}); break;
        case 2:
          if (n == 3) {
            Rational s(r.uniform(1, std::max<std::int64_t>(1, std::int64_t{b.coeff})));
            pi = s * (Multivector::basis(3, {0, 1}, Poly::variable(3, 2)) + Multivector::basis(3, {1, 2}, Poly::variable(3, 0)) +
                      Multivector::basis(3, {2, 0}, Poly::variable(3, 1)));
            linear_so3 = true;
            break;
          }
          [[fallthrough]];
        default: pi = random_exterior<VectorTag>(r, n, n, 2, b); break;
      }
      bool poisson = is_poisson(pi);
      DiracCheck integ = is_integrable(DiracCandidate::graph_bivector(cp, pi));
      o.category = linear_so3 && poisson ? "linear so(3)" : poisson ? "Poisson" : "non-Poisson";
      if (integ.ok != poisson) {
        o.inputs = {{"pi", pi.to_string()}};
        o.fail(std::string{"is_integrable = "} + (integ.ok ? "true" : "false") + " but [pi,pi] " +
               (poisson ? "= 0" : "!= 0"));
      }
    };
  }

  TrialFn declared_dirac(const DiracDecl& d) {
    const DiracCandidate cand = *d.candidate;
    std::optional<bool> oracle;
    std::string oracle_name;
    if (d.omega) {
      oracle = de_rham_d(*d.omega).is_zero();
      oracle_name = "d omega = 0";
    } else if (d.pi) {
      oracle = is_poisson(*d.pi);
      oracle_name = "[pi,pi] = 0";
    }
    return [cand, oracle, oracle_name](Rng&, Outcome& o) {
      DiracCheck iso = is_isotropic(cand);
      if (!iso.ok) {
        o.category = "not isotropic";
        o.inputs = {{"candidate", cand.describe()}};
        o.fail(iso.message);
        return;
      }
      DiracCheck integ = is_integrable(cand);
      o.category = integ.ok ? "integrable" : "not integrable";
      if (oracle) {
        if (*oracle != integ.ok) {
          o.inputs = {{"candidate", cand.describe()}};
          o.fail("integrability disagrees with " + oracle_name + (integ.ok ? "" : ": " + integ.message));
        }
      } else if (!integ.ok) {
        o.inputs = {{"candidate", cand.describe()}};
        o.fail(integ.message);
      }
    };
  }

  TrialFn compat_check(LieBialgebroidPair pair) {
    const RandomBounds b = bounds_;
    auto p = std::make_shared<const LieBialgebroidPair>(std::move(pair));
    return [p, b](Rng& r, Outcome& o) {
      Section x = random_section(r, p->rank(), p->nvars(), b);
      Section y = random_section(r, p->rank(), p->nvars(), b);
      Multivector d = bialgebroid_compat_check(*p, x, y);
      if (!d.is_zero()) {
        o.inputs = {{"X", x.to_string()}, {"Y", y.to_string()}};
        o.fail(d.to_string());
      }
    };
  }

  TrialFn transversal_check(const std::string& id, const DiracCandidate& l1, const DiracCandidate& l2) {
    std::shared_ptr<const ExtractedBialgebroid> ex;
    std::string error;
    try {
      ex = id == "bialgebroid.dual_compat" ? std::make_shared<const ExtractedBialgebroid>(extract_bialgebroid(l2, l1))
                                           : std::make_shared<const ExtractedBialgebroid>(extract_bialgebroid(l1, l2));
    } catch (const std::exception& e) {
      error = e.what();
    }
    if (!ex) {
      std::string names = l1.describe() + " / " + l2.describe();
      return [error, names](Rng&, Outcome& o) {
        o.inputs = {{"pair", names}};
        o.fail("extraction failed: " + error);
      };
    }
    if (id != "bialgebroid.roundtrip") return compat_check(ex->pair);
    const RandomBounds b = bounds_;
    auto dbl = std::make_shared<const CourantAlgebroid>(CourantAlgebroid::bialgebroid_double(ex->pair));
    auto ambient = l1.ambient_ptr();
    return [ex, dbl, ambient, b](Rng& r, Outcome& o) {
      Section e1 = random_section(r, *dbl, b), e2 = random_section(r, *dbl, b);
      Section lhs = ex->to_ambient(dbl->bracket(e1, e2));
      Section rhs = ambient->bracket(ex->to_ambient(e1), ex->to_ambient(e2));
      if (lhs != rhs) {
        o.inputs = {{"e1", e1.to_string()}, {"e2", e2.to_string()}};
        o.fail((lhs - rhs).to_string());
      }
    };
  }

  const VerificationPlan& plan_;
  RunOptions options_;
  RandomBounds bounds_;
};

}  // namespace

Report run_plan(const VerificationPlan& plan, const RunOptions& options) { return Runner(plan, options).run(); }

}  // namespace clinf

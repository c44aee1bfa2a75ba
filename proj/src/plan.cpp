#include "clinf/plan.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace clinf {

PlanError::PlanError(const std::string& source, SourcePos pos, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      pos_(pos) {}

const PlanEntry* PlanBlock::find(std::string_view key) const {
  for (const auto& e : entries)
    if (e.indices.empty() && e.key == key) return &e;
  return nullptr;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::string& source) : text_(text), source_(source) {}

  PlanDocument parse() {
    PlanDocument doc;
    doc.source = source_;
    skip();
    while (!at_end()) {
      SourcePos pos = here();
      std::string name = identifier();
      skip();
      PlanBlock b = block();
      b.name = std::move(name);
      b.pos = pos;
      doc.blocks.push_back(std::move(b));
      skip();
    }
    return doc;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  SourcePos here() const { return {line_, col_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw PlanError(source_, here(), msg); }

  // Whitespace, commas and `#` comments separate tokens.
  void skip() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string{"expected '"} + c + "'");
    advance();
  }

  std::string identifier() {
    if (at_end() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) fail("expected an identifier");
    std::string s;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      s += peek();
      advance();
    }
    return s;
  }

  std::string digits() {
    std::string s;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      s += peek();
      advance();
    }
    return s;
  }

  PlanBlock block() {
    PlanBlock b;
    b.pos = here();
    expect('{');
    skip();
    while (true) {
      if (at_end()) fail("unterminated block");
      if (peek() == '}') {
        advance();
        return b;
      }
      PlanEntry e;
      e.pos = here();
      if (peek() == '(') {
        e.indices = index_tuple();
      } else {
        e.key = identifier();
      }
      skip();
      if (at_end() || (peek() != '=' && peek() != ':')) fail("expected '=' or ':'");
      advance();
      skip();
      e.value = value();
      b.entries.push_back(std::move(e));
      skip();
    }
  }

  std::vector<std::size_t> index_tuple() {
    expect('(');
    std::vector<std::size_t> idx;
    skip();
    while (true) {
      if (at_end()) fail("unterminated index tuple");
      if (peek() == ')') {
        advance();
        break;
      }
      std::string d = digits();
      if (d.empty()) fail("expected an index");
      if (d.size() > 6) fail("index too large");
      std::size_t v = std::stoul(d);
      if (v == 0) fail("indices are 1-based");
      idx.push_back(v);
      skip();
    }
    if (idx.empty()) fail("empty index tuple");
    return idx;
  }

  PlanValue value() {
    PlanValue v;
    v.pos = here();
    if (at_end()) fail("expected a value");
    char c = peek();
    if (c == '"') {
      advance();
      while (true) {
        if (at_end() || peek() == '\n') fail("unterminated string");
        if (peek() == '"') break;
        v.text += peek();
        advance();
      }
      advance();
      v.kind = PlanValue::Kind::string;
    } else if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      std::string t;
      if (c == '-' || c == '+') {
        t += c;
        advance();
      }
      std::string num = digits();
      if (num.empty()) fail("expected a number");
      t += num;
      if (!at_end() && peek() == '/') {
        advance();
        std::string den = digits();
        if (den.empty()) fail("expected a denominator");
        if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
        t += "/" + den;
      }
      v.kind = PlanValue::Kind::number;
      v.text = t;
      v.number = Rational::parse(t);
    } else if (c == '[') {
      advance();
      skip();
      v.kind = PlanValue::Kind::list;
      while (true) {
        if (at_end()) fail("unterminated list");
        if (peek() == ']') {
          advance();
          break;
        }
        v.items.push_back(value());
        skip();
      }
    } else if (c == '{') {
      v.kind = PlanValue::Kind::block;
      v.block = std::make_shared<PlanBlock>(block());
    } else {
      fail(std::string{"unexpected character '"} + c + "'");
    }
    return v;
  }

  std::string_view text_;
  const std::string& source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Builder {
 public:
  Builder(const PlanDocument& doc, Fault fault) : doc_(doc), fault_(fault) {}

  VerificationPlan build() {
    VerificationPlan plan;
    plan.source = doc_.source;
    bool have_plan = false;
    for (const auto& b : doc_.blocks) {
      if (b.name == "plan") {
        if (have_plan) fail(b.pos, "duplicate plan block");
        have_plan = true;
        plan.settings = settings(b);
      }
    }
    if (!have_plan) plan.settings.suites = known_suites();
    for (const auto& b : doc_.blocks) {
      if (b.name == "plan") continue;
      if (b.name == "algebroid") algebroid(b);
      else if (b.name == "courant") plan.instances.push_back(courant(b));
      else if (b.name == "dirac") plan.dirac.push_back(dirac(b, plan));
      else if (b.name == "transversal_pair") plan.transversal_pairs.push_back(transversal(b, plan));
      else fail(b.pos, "unknown block '" + b.name + "'");
    }
    return plan;
  }

 private:
  [[noreturn]] void fail(SourcePos pos, const std::string& msg) const { throw PlanError(doc_.source, pos, msg); }

  void check_keys(const PlanBlock& b, std::initializer_list<std::string_view> allowed, bool allow_indices = false) {
    for (const auto& e : b.entries) {
      if (!e.indices.empty()) {
        if (!allow_indices) fail(e.pos, "index key not allowed here");
        continue;
      }
      if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end())
        fail(e.pos, "unknown key '" + e.key + "' in " + (b.name.empty() ? std::string{"block"} : b.name));
    }
    std::set<std::string> seen;
    for (const auto& e : b.entries) {
      std::string k = e.key;
      for (auto i : e.indices) k += "," + std::to_string(i);
      if (!seen.insert(k).second) fail(e.pos, "duplicate key");
    }
  }

  const PlanEntry& require(const PlanBlock& b, std::string_view key) {
    const PlanEntry* e = b.find(key);
    if (!e) fail(b.pos, std::string{b.name.empty() ? "block" : b.name} + " needs '" + std::string{key} + "'");
    return *e;
  }

  std::string string_value(const PlanEntry& e) {
    if (e.value.kind != PlanValue::Kind::string) fail(e.value.pos, "'" + e.key + "' must be a string");
    return e.value.text;
  }

  Rational number_value(const PlanValue& v) {
    if (v.kind != PlanValue::Kind::number) fail(v.pos, "expected a number");
    return v.number;
  }

  std::uint64_t unsigned_value(const PlanEntry& e, std::uint64_t max) {
    Rational q = number_value(e.value);
    if (!q.is_integer() || q.sign() < 0 || q > Rational(max))
      fail(e.value.pos, "'" + e.key + "' must be an integer in [0, " + std::to_string(max) + "]");
    return std::stoull(q.to_string());
  }

  const PlanBlock& block_value(const PlanEntry& e) {
    if (e.value.kind != PlanValue::Kind::block) fail(e.value.pos, "'" + e.key + "' must be a { ... } block");
    return *e.value.block;
  }

  std::size_t dim_value(const PlanBlock& b, std::size_t fallback) {
    const PlanEntry* e = b.find("dim");
    if (!e) return fallback;
    std::size_t d = unsigned_value(*e, Monomial::kMaxVars);
    if (d == 0) fail(e->value.pos, "dim must be positive");
    return d;
  }

  Poly poly_value(const PlanValue& v, std::size_t nvars) {
    if (v.kind == PlanValue::Kind::number) return Poly(nvars, v.number);
    if (v.kind != PlanValue::Kind::string) fail(v.pos, "expected a polynomial (string or number)");
    try {
      return Poly::parse(v.text, nvars);
    } catch (const std::exception& ex) {
      fail(v.pos, std::string{"bad polynomial: "} + ex.what());
    }
  }

  template <class Tag>
  Exterior<Tag> bivalent(const PlanEntry& e, std::size_t n) {
    const PlanBlock& b = block_value(e);
    Exterior<Tag> out(n, n, 2);
    for (const auto& c : b.entries) {
      if (c.indices.size() != 2) fail(c.pos, "expected an (i,j) key");
      if (c.indices[0] > n || c.indices[1] > n) fail(c.pos, "index exceeds dimension " + std::to_string(n));
      if (c.indices[0] == c.indices[1]) fail(c.pos, "repeated index");
      out.add_tuple({c.indices[0] - 1, c.indices[1] - 1}, poly_value(c.value, n));
    }
    return out;
  }

  StructureConstants constants(const PlanEntry& e, std::size_t dim) {
    const PlanBlock& b = block_value(e);
    StructureConstants c(dim);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& entry : b.entries) {
      if (entry.indices.size() != 2) fail(entry.pos, "expected an (i,j) key");
      std::size_t i = entry.indices[0], j = entry.indices[1];
      if (i > dim || j > dim) fail(entry.pos, "index exceeds dimension " + std::to_string(dim));
      if (i == j) fail(entry.pos, "[e_i, e_i] is zero by antisymmetry");
      if (!seen.insert({std::min(i, j), std::max(i, j)}).second) fail(entry.pos, "bracket given twice");
      if (entry.value.kind != PlanValue::Kind::list || entry.value.items.size() != dim)
        fail(entry.value.pos, "expected a list of " + std::to_string(dim) + " numbers");
      std::vector<Rational> v;
      for (const auto& item : entry.value.items) v.push_back(number_value(item));
      c.set_bracket(i - 1, j - 1, v);
    }
    return c;
  }

  RationalMatrix matrix(const PlanEntry& e) {
    if (e.value.kind != PlanValue::Kind::list || e.value.items.empty()) fail(e.value.pos, "expected a list of rows");
    RationalMatrix m;
    for (const auto& row : e.value.items) {
      if (row.kind != PlanValue::Kind::list || row.items.size() != e.value.items.size())
        fail(row.pos, "expected a square matrix");
      std::vector<Rational> r;
      for (const auto& item : row.items) r.push_back(number_value(item));
      m.push_back(std::move(r));
    }
    return m;
  }

  PlanSettings settings(const PlanBlock& b) {
    check_keys(b, {"seed", "trials", "degree", "coeff", "suites"});
    PlanSettings s;
    if (auto* e = b.find("seed")) s.seed = unsigned_value(*e, UINT64_MAX);
    if (auto* e = b.find("trials")) {
      s.trials = static_cast<unsigned>(unsigned_value(*e, 1000000));
      if (s.trials == 0) fail(e->value.pos, "trials must be at least 1");
    }
    if (auto* e = b.find("degree")) s.degree = static_cast<unsigned>(unsigned_value(*e, 16));
    if (auto* e = b.find("coeff")) s.coeff = static_cast<unsigned>(unsigned_value(*e, 1000000));
    if (auto* e = b.find("suites")) {
      if (e->value.kind != PlanValue::Kind::list || e->value.items.empty())
        fail(e->value.pos, "suites must be a nonempty list");
      for (const auto& item : e->value.items) {
        if (item.kind != PlanValue::Kind::string) fail(item.pos, "suite names are strings");
        const auto& all = known_suites();
        if (std::find(all.begin(), all.end(), item.text) == all.end()) fail(item.pos, "unknown suite '" + item.text + "'");
        if (std::find(s.suites.begin(), s.suites.end(), item.text) == s.suites.end()) s.suites.push_back(item.text);
      }
    } else {
      s.suites = known_suites();
    }
    return s;
  }

  std::string unique_name(const PlanBlock& b) {
    std::string name = string_value(require(b, "name"));
    if (name.empty()) fail(b.pos, "empty name");
    if (!names_.insert(name).second) fail(b.pos, "duplicate name '" + name + "'");
    return name;
  }

  void algebroid(const PlanBlock& b) {
    check_keys(b, {"name", "kind", "dim", "pi", "c"});
    std::string name = unique_name(b);
    std::string kind = string_value(require(b, "kind"));
    AlgebroidDecl decl;
    decl.pos = b.pos;
    try {
      if (kind == "tangent") {
        decl.algebroid = LieAlgebroid::tangent(dim_value(b, 3));
      } else if (kind == "zero_bracket_cotangent") {
        decl.algebroid = LieAlgebroid::zero_bracket_cotangent(dim_value(b, 3));
      } else if (kind == "cotangent_poisson") {
        std::size_t n = dim_value(b, 3);
        decl.algebroid = LieAlgebroid::cotangent_poisson(bivalent<VectorTag>(require(b, "pi"), n));
      } else if (kind == "point_lie_algebra") {
        std::size_t n = dim_value(b, 0);
        if (n == 0) fail(b.pos, "point_lie_algebra needs 'dim'");
        decl.algebroid = LieAlgebroid::point_lie_algebra(constants(require(b, "c"), n));
      } else {
        fail(require(b, "kind").value.pos, "unknown algebroid kind '" + kind + "'");
      }
    } catch (const PlanError&) {
      throw;
    } catch (const std::exception& ex) {
      decl.error = ex.what();
    }
    algebroids_.emplace(name, std::move(decl));
  }

  /// Null (with `error` set) when the referenced algebroid failed to build.
  const LieAlgebroid* algebroid_ref(const PlanEntry& e, std::string& error) {
    std::string name = string_value(e);
    auto it = algebroids_.find(name);
    if (it == algebroids_.end()) fail(e.value.pos, "unknown algebroid '" + name + "'");
    if (!it->second.algebroid) {
      error = "algebroid '" + name + "': " + it->second.error;
      return nullptr;
    }
    return &*it->second.algebroid;
  }

  InstanceDecl courant(const PlanBlock& b) {
    check_keys(b, {"name", "kind", "dim", "c", "pairing", "g", "gstar", "pair"});
    InstanceDecl d;
    d.name = unique_name(b);
    d.kind = string_value(require(b, "kind"));
    d.pos = b.pos;
    try {
      if (d.kind == "standard") {
        d.instance = std::make_shared<CourantAlgebroid>(CourantAlgebroid::standard(dim_value(b, 3), fault_));
      } else if (d.kind == "quadratic") {
        RationalMatrix g = matrix(require(b, "pairing"));
        std::size_t n = dim_value(b, g.size());
        if (n != g.size()) fail(b.pos, "pairing size does not match dim");
        d.instance =
            std::make_shared<CourantAlgebroid>(CourantAlgebroid::quadratic(constants(require(b, "c"), n), g, fault_));
      } else if (d.kind == "drinfeld_double") {
        std::size_t n = dim_value(b, 0);
        if (n == 0) fail(b.pos, "drinfeld_double needs 'dim' (the dimension of g)");
        StructureConstants g = constants(require(b, "g"), n);
        StructureConstants gs = constants(require(b, "gstar"), n);
        d.instance = std::make_shared<CourantAlgebroid>(CourantAlgebroid::drinfeld_double(g, gs, fault_));
      } else if (d.kind == "bialgebroid_double") {
        const PlanBlock& pb = block_value(require(b, "pair"));
        check_keys(pb, {"a", "astar"});
        std::string error;
        const LieAlgebroid* a = algebroid_ref(require(pb, "a"), error);
        const LieAlgebroid* astar = algebroid_ref(require(pb, "astar"), error);
        if (!a || !astar) {
          d.error = error;
          return d;
        }
        d.instance = std::make_shared<CourantAlgebroid>(
            CourantAlgebroid::bialgebroid_double(LieBialgebroidPair(*a, *astar), fault_));
      } else {
        fail(require(b, "kind").value.pos, "unknown courant kind '" + d.kind + "'");
      }
    } catch (const PlanError&) {
      throw;
    } catch (const std::exception& ex) {
      d.error = ex.what();
    }
    return d;
  }

  DiracDecl dirac(const PlanBlock& b, const VerificationPlan& plan) {
    check_keys(b, {"name", "ambient", "kind", "omega", "pi", "sections"});
    DiracDecl d;
    d.name = unique_name(b);
    d.pos = b.pos;
    d.kind = string_value(require(b, "kind"));
    const PlanEntry& amb = require(b, "ambient");
    d.ambient = string_value(amb);
    const InstanceDecl* inst = plan.find_instance(d.ambient);
    if (!inst) fail(amb.value.pos, "unknown courant instance '" + d.ambient + "'");
    if (!inst->instance) {
      d.error = "ambient '" + d.ambient + "': " + inst->error;
      return d;
    }
    const auto& c = inst->instance;
    const std::size_t n = c->nvars();
    try {
      if (d.kind == "graph_2form") {
        d.omega = bivalent<FormTag>(require(b, "omega"), n);
        d.candidate = DiracCandidate::graph_2form(c, *d.omega);
      } else if (d.kind == "graph_bivector") {
        d.pi = bivalent<VectorTag>(require(b, "pi"), n);
        d.candidate = DiracCandidate::graph_bivector(c, *d.pi);
      } else if (d.kind == "vector_part") {
        d.candidate = DiracCandidate::vector_part(c);
      } else if (d.kind == "covector_part") {
        d.candidate = DiracCandidate::covector_part(c);
      } else if (d.kind == "frame") {
        const PlanEntry& e = require(b, "sections");
        if (e.value.kind != PlanValue::Kind::list) fail(e.value.pos, "sections must be a list");
        std::vector<Section> frame;
        for (const auto& row : e.value.items) {
          if (row.kind != PlanValue::Kind::list || row.items.size() != c->rank())
            fail(row.pos, "a section is a list of " + std::to_string(c->rank()) + " polynomials");
          Section s(c->rank(), n);
          for (std::size_t k = 0; k < row.items.size(); ++k) s[k] = poly_value(row.items[k], n);
          frame.push_back(std::move(s));
        }
        d.candidate = DiracCandidate(c, std::move(frame), d.name);
      } else {
        fail(require(b, "kind").value.pos, "unknown dirac kind '" + d.kind + "'");
      }
    } catch (const PlanError&) {
      throw;
    } catch (const std::exception& ex) {
      d.error = ex.what();
    }
    return d;
  }

  TransversalDecl transversal(const PlanBlock& b, const VerificationPlan& plan) {
    check_keys(b, {"name", "l1", "l2"});
    TransversalDecl t;
    t.name = unique_name(b);
    t.pos = b.pos;
    const PlanEntry& e1 = require(b, "l1");
    const PlanEntry& e2 = require(b, "l2");
    t.l1 = string_value(e1);
    t.l2 = string_value(e2);
    if (!plan.find_dirac(t.l1)) fail(e1.value.pos, "unknown dirac candidate '" + t.l1 + "'");
    if (!plan.find_dirac(t.l2)) fail(e2.value.pos, "unknown dirac candidate '" + t.l2 + "'");
    return t;
  }

  struct AlgebroidDecl {
    SourcePos pos;
    std::optional<LieAlgebroid> algebroid;
    std::string error;
  };

  const PlanDocument& doc_;
  Fault fault_;
  std::set<std::string> names_;
  std::map<std::string, AlgebroidDecl> algebroids_;
};

}  // namespace

PlanDocument parse_plan_text(std::string_view text, const std::string& source) { return Parser(text, source).parse(); }

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> suites = {"axioms", "lemmas", "shla", "dirac", "bialgebroid"};
  return suites;
}

const InstanceDecl* VerificationPlan::find_instance(std::string_view name) const {
  for (const auto& i : instances)
    if (i.name == name) return &i;
  return nullptr;
}

const DiracDecl* VerificationPlan::find_dirac(std::string_view name) const {
  for (const auto& d : dirac)
    if (d.name == name) return &d;
  return nullptr;
}

bool VerificationPlan::has_construction_errors() const {
  return std::any_of(instances.begin(), instances.end(), [](const auto& i) { return !i.error.empty(); }) ||
         std::any_of(dirac.begin(), dirac.end(), [](const auto& d) { return !d.error.empty(); });
}

VerificationPlan build_plan(const PlanDocument& doc, Fault fault) { return Builder(doc, fault).build(); }

VerificationPlan load_plan(const std::string& path, Fault fault) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PlanError(path, {1, 1}, "cannot open plan file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return build_plan(parse_plan_text(buf.str(), path), fault);
}

}  // namespace clinf

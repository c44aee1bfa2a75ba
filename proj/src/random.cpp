#include "clinf/random.hpp"

#include <limits>
#include <stdexcept>

namespace clinf {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do draw = engine_();
  while (draw >= limit);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + draw % span);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t trial_seed(std::uint64_t seed, std::string_view instance, std::string_view check, std::uint64_t trial) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ fnv1a(instance));
  h = splitmix64(h ^ fnv1a(check));
  return splitmix64(h ^ trial);
}

namespace {

void visit_monomials(std::size_t nvars, unsigned budget, std::size_t var, Monomial& m, Rng& rng, unsigned coeff,
                     Poly& out) {
  if (var == nvars) {
    std::int64_t c = rng.uniform(-static_cast<std::int64_t>(coeff), coeff);
    if (c != 0) out += Poly::monomial(nvars, m, Rational(static_cast<long>(c)));
    return;
  }
  for (unsigned e = 0; e <= budget; ++e) {
    m.set_exponent(var, e);
    visit_monomials(nvars, budget - e, var + 1, m, rng, coeff, out);
  }
  m.set_exponent(var, 0);
}

}  // namespace

Poly random_poly(Rng& rng, std::size_t nvars, const RandomBounds& bounds) {
  Poly p(nvars);
  Monomial m;
  visit_monomials(nvars, bounds.degree, 0, m, rng, bounds.coeff, p);
  return p;
}

Section random_section(Rng& rng, std::size_t rank, std::size_t nvars, const RandomBounds& bounds) {
  Section s(rank, nvars);
  for (std::size_t i = 0; i < rank; ++i) s[i] = random_poly(rng, nvars, bounds);
  return s;
}

}  // namespace clinf

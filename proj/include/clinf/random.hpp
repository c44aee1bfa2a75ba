#pragma once

// Seeded generators for polynomials, sections and exterior elements. The
// stream is std::mt19937_64 with explicit rejection sampling, so draws are
// identical across standard libraries.

#include <cstdint>
#include <random>
#include <string_view>

#include "clinf/exterior.hpp"
#include "clinf/section.hpp"

namespace clinf {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view text);

/// Seed of one trial, a pure function of its coordinates.
std::uint64_t trial_seed(std::uint64_t seed, std::string_view instance, std::string_view check, std::uint64_t trial);

struct RandomBounds {
  unsigned degree = 2;
  unsigned coeff = 3;
};

/// Every monomial of total degree <= bounds.degree gets an integer
/// coefficient drawn from [-coeff, coeff], monomials visited in lex order.
Poly random_poly(Rng& rng, std::size_t nvars, const RandomBounds& bounds);
Section random_section(Rng& rng, std::size_t rank, std::size_t nvars, const RandomBounds& bounds);

template <class Tag>
Exterior<Tag> random_exterior(Rng& rng, std::size_t rank, std::size_t nvars, std::size_t degree,
                              const RandomBounds& bounds) {
  Exterior<Tag> e(rank, nvars, degree);
  for (IndexMask m = 0; m < (IndexMask{1} << rank); ++m)
    if (static_cast<std::size_t>(mask_degree(m)) == degree) e.add(m, random_poly(rng, nvars, bounds));
  return e;
}

}  // namespace clinf

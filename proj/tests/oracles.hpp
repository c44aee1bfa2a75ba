#pragma once

// Brute-force sign oracles, independent of the library's sign code.

#include <algorithm>
#include <random>
#include <vector>

#include "clinf/graded.hpp"

namespace clinf::test {

/// ε(σ) by realizing σ as adjacent transpositions chosen at random: any
/// adjacent pair still out of target order may be swapped next.
inline int koszul_by_transpositions(const Permutation& sigma, const std::vector<int>& degrees, std::uint64_t seed) {
  const std::size_t n = sigma.size();
  std::vector<std::size_t> target_pos(n);
  for (std::size_t k = 0; k < n; ++k) target_pos[sigma[k]] = k;
  std::vector<std::size_t> cur(n);
  for (std::size_t k = 0; k < n; ++k) cur[k] = k;
  std::mt19937_64 rng(seed);
  int sign = 1;
  while (true) {
    std::vector<std::size_t> inverted;
    for (std::size_t k = 0; k + 1 < n; ++k)
      if (target_pos[cur[k]] > target_pos[cur[k + 1]]) inverted.push_back(k);
    if (inverted.empty()) break;
    std::size_t k = inverted[rng() % inverted.size()];
    if ((degrees[cur[k]] * degrees[cur[k + 1]]) % 2 != 0) sign = -sign;
    std::swap(cur[k], cur[k + 1]);
  }
  return sign;
}

/// (-1)^σ from the cycle decomposition.
inline int sign_by_cycles(const Permutation& sigma) {
  std::vector<bool> seen(sigma.size());
  int sign = 1;
  for (std::size_t s = 0; s < sigma.size(); ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t k = s; !seen[k]; k = sigma[k]) {
      seen[k] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

/// All (i, n-i)-unshuffles by filtering every permutation.
inline std::vector<Permutation> unshuffles_by_filter(std::size_t i, std::size_t n) {
  Permutation p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = k;
  std::vector<Permutation> out;
  do {
    if (std::is_sorted(p.begin(), p.begin() + static_cast<long>(i)) && std::is_sorted(p.begin() + static_cast<long>(i), p.end()))
      out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace clinf::test

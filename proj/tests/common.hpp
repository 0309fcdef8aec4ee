#pragma once

#include <random>
#include <string>
#include <vector>

#include "kzb/freelie.hpp"

namespace testutil {

// Word from generator symbols, e.g. "XXY" or "e0z1".
inline kzb::Word w(const kzb::AlphabetPtr& a, const std::string& s) { return a->parse(s); }

inline kzb::LieElt<kzb::Q> gen(const kzb::AlphabetPtr& a, int cutoff, const std::string& s) {
  return kzb::LieElt<kzb::Q>::generator(a, cutoff, static_cast<kzb::Letter>(a->parse(s).at(0)));
}

inline kzb::LieElt<kzb::Q> lie(const kzb::AlphabetPtr& a, int cutoff, const std::vector<std::pair<std::string, kzb::Q>>& terms) {
  kzb::LieElt<kzb::Q> u(a, cutoff);
  for (const auto& [s, c] : terms) u.add(a->parse(s), c);
  return u;
}

// Random Lie element: `n` Lyndon words of truncation weight <= max_w with small rational coefficients.
inline kzb::LieElt<kzb::Q> random_lie(const kzb::AlphabetPtr& a, int cutoff, int max_w, int n, std::mt19937& rng) {
  const auto basis = kzb::lyndon_basis(a, std::min(cutoff, max_w));
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  kzb::LieElt<kzb::Q> u(a, cutoff);
  for (int i = 0; i < n; ++i) {
    kzb::Q c(num(rng), den(rng));
    c.canonicalize();
    u.add(basis[pick(rng)], c);
  }
  return u;
}

}  // namespace testutil

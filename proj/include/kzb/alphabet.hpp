#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace kzb {

// Letters are generator indices stored in a std::string, so std::less on
// words is the lexicographic order with a proper prefix sorting first.
using Word = std::string;
using Letter = unsigned char;

struct Generator {
  std::string symbol;
  int W = 1;  // weight codegree
  int M = 0;  // relative weight codegree
  int F = 0;  // Hodge degree
  int t = 0;  // degree in the puncture generators
  int trunc = 1;  // contribution to the truncation degree
};

enum class AlphabetKind { KZ, KZB, Custom };

class Alphabet;
using AlphabetPtr = std::shared_ptr<const Alphabet>;

class Alphabet {
 public:
  AlphabetKind kind = AlphabetKind::Custom;
  long level = 1;
  std::vector<Generator> gens;

  // KZ: e0 = letter 0, e_{zeta^k} = letter 1 + k. Truncation by word length.
  static AlphabetPtr kz(long N) { return cached_(AlphabetKind::KZ, N); }
  // KZB: X = 0, Y = 1, t_k = letter 1 + k for k = 1..N-1. Truncation by W.
  static AlphabetPtr kzb(long N) { return cached_(AlphabetKind::KZB, N); }

  static AlphabetPtr custom(const std::vector<std::string>& symbols) {
    auto a = std::make_shared<Alphabet>();
    a->kind = AlphabetKind::Custom;
    a->level = 0;
    for (const auto& s : symbols) a->gens.push_back({s, 1, 0, 0, 0, 1});
    return a;
  }

  std::size_t size() const { return gens.size(); }

  Letter e0() const { return 0; }
  Letter ez(long k) const {
    require_(AlphabetKind::KZ);
    return static_cast<Letter>(1 + ((k % level) + level) % level);
  }
  Letter X() const { return 0; }
  Letter Y() const { return 1; }
  Letter t(long k) const {
    require_(AlphabetKind::KZB);
    if (k <= 0 || k >= level) throw DomainError("t_k needs 1 <= k < N (t_0 is derived)");
    return static_cast<Letter>(1 + k);
  }

  int trunc_weight(const Word& w) const {
    int s = 0;
    for (unsigned char c : w) s += gens[c].trunc;
    return s;
  }

  std::string name() const {
    switch (kind) {
      case AlphabetKind::KZ:
        return "KZ(" + std::to_string(level) + ")";
      case AlphabetKind::KZB:
        return "KZB(" + std::to_string(level) + ")";
      default:
        return "custom";
    }
  }

  std::string spell(const Word& w) const {
    std::string s;
    for (unsigned char c : w) s += gens.at(c).symbol;
    return s.empty() ? "1" : s;
  }

  Word parse(const std::string& s) const {
    Word w;
    if (s == "1") return w;
    std::size_t i = 0;
    while (i < s.size()) {
      std::size_t best = 0;
      int best_idx = -1;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const auto& sym = gens[g].symbol;
        if (sym.size() > best && s.compare(i, sym.size(), sym) == 0) {
          best = sym.size();
          best_idx = static_cast<int>(g);
        }
      }
      if (best_idx < 0) throw DomainError("cannot parse word '" + s + "' over " + name());
      w.push_back(static_cast<char>(best_idx));
      i += best;
    }
    return w;
  }

  bool same_as(const Alphabet& o) const {
    if (kind != o.kind || level != o.level || gens.size() != o.gens.size()) return false;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].symbol != o.gens[i].symbol || gens[i].trunc != o.gens[i].trunc) return false;
    return true;
  }

 private:
  void require_(AlphabetKind k) const {
    if (kind != k) throw MismatchError("generator not in alphabet " + name());
  }

  static std::string indexed_(const std::string& base, long k) {
    return k < 10 ? base + std::to_string(k) : base + "{" + std::to_string(k) + "}";
  }

  static AlphabetPtr cached_(AlphabetKind kind, long N) {
    if (N < 1) throw DomainError("level N must be >= 1");
    static std::mutex mu;
    static std::map<std::pair<int, long>, AlphabetPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<int>(kind), N);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto a = std::make_shared<Alphabet>();
    a->kind = kind;
    a->level = N;
    if (kind == AlphabetKind::KZ) {
      a->gens.push_back({"e0", 2, 2, 1, 0, 1});
      for (long k = 0; k < N; ++k) a->gens.push_back({indexed_("z", k), 2, 2, 1, 1, 1});
    } else {
      a->gens.push_back({"X", 1, 0, 0, 0, 1});
      a->gens.push_back({"Y", 1, 2, 1, 0, 1});
      for (long k = 1; k < N; ++k) a->gens.push_back({indexed_("t", k), 2, 2, 1, 1, 2});
    }
    cache.emplace(key, a);
    return a;
  }
};

inline bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

// Prenecklace scan (Fredricksen-Kessler-Maiorana): returns the period p of the
// longest Lyndon prefix structure, or 0 if w is not a prefix of a Lyndon word.
inline std::size_t lyndon_period(const Word& w) {
  if (w.empty()) return 0;
  std::size_t p = 1;
  for (std::size_t i = 1; i < w.size(); ++i) {
    const auto a = static_cast<unsigned char>(w[i]);
    const auto b = static_cast<unsigned char>(w[i - p]);
    if (a < b) return 0;
    if (a > b) p = i + 1;
  }
  return p;
}

inline bool is_lyndon(const Word& w) { return !w.empty() && lyndon_period(w) == w.size(); }

// w = u v with v the longest proper Lyndon suffix.
inline std::pair<Word, Word> standard_factorization(const Word& w) {
  if (w.size() < 2) throw DomainError("standard factorization needs length >= 2");
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word v = w.substr(i);
    if (is_lyndon(v)) return {w.substr(0, i), v};
  }
  throw DomainError("no Lyndon suffix");
}

}  // namespace kzb

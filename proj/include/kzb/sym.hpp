#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace kzb {

// A formal symbol: L (the period 2 pi i) when m == 0, otherwise lambda_{m,k}
// standing for Li_m(exp(2 pi i k / N)).
struct SymVar {
  int m = 0;
  long k = 0;
  long N = 1;

  static SymVar L() { return {}; }
  static SymVar lambda(int m, long k, long N) {
    if (m < 1) throw DomainError("lambda index m must be >= 1");
    return {m, mod_l(k, N), N};
  }
  bool is_L() const { return m == 0; }
  std::string str() const {
    if (is_L()) return "L";
    return "Li" + std::to_string(m) + "[" + std::to_string(k) + "/" + std::to_string(N) + "]";
  }
  auto operator<=>(const SymVar&) const = default;
};

using Monomial = std::vector<std::pair<SymVar, int>>;  // sorted by variable, exponents > 0

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

// Commutative polynomial ring Q[L, lambda_{m,k}].
class Sym {
 public:
  Sym() = default;
  Sym(const Q& c) {  // NOLINT: rationals embed as constants
    if (c != 0) terms_[{}] = c;
  }
  Sym(long c) : Sym(Q(c)) {}  // NOLINT
  static Sym var(const SymVar& v) {
    Sym s;
    s.terms_[{{v, 1}}] = 1;
    return s;
  }
  static Sym L() { return var(SymVar::L()); }
  static Sym lambda(int m, long k, long N) { return var(SymVar::lambda(m, k, N)); }

  const std::map<Monomial, Q>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Sym& operator+=(const Sym& o) {
    for (const auto& [m, c] : o.terms_) add_(m, c);
    return *this;
  }
  Sym& operator-=(const Sym& o) {
    for (const auto& [m, c] : o.terms_) add_(m, -c);
    return *this;
  }
  Sym& operator*=(const Q& q) {
    if (q == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= q;
    return *this;
  }
  Sym& operator*=(const Sym& o) {
    Sym r;
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_) r.add_(mono_mul(m1, m2), c1 * c2);
    *this = std::move(r);
    return *this;
  }
  Sym operator-() const {
    Sym r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend Sym operator+(Sym a, const Sym& b) { return a += b; }
  friend Sym operator-(Sym a, const Sym& b) { return a -= b; }
  friend Sym operator*(Sym a, const Sym& b) { return a *= b; }
  friend Sym operator*(Sym a, const Q& q) { return a *= q; }
  friend bool operator==(const Sym& a, const Sym& b) { return a.terms_ == b.terms_; }

  // Degree in L of every monomial (max).
  int degree_L() const {
    int d = 0;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m)
        if (v.is_L()) d = std::max(d, e);
    return d;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string cs = to_string(c);
      if (!first) {
        if (c < 0) {
          out += " - ";
          cs = to_string(Q(-c));
        } else {
          out += " + ";
        }
      }
      first = false;
      std::string ms;
      for (const auto& [v, e] : m) {
        if (!ms.empty()) ms += "*";
        ms += v.str();
        if (e > 1) ms += "^" + std::to_string(e);
      }
      if (ms.empty()) {
        out += cs;
      } else if (cs == "1") {
        out += ms;
      } else if (cs == "-1") {
        out += "-" + ms;
      } else {
        out += cs + "*" + ms;
      }
    }
    return out;
  }

 private:
  void add_(const Monomial& m, const Q& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Monomial, Q> terms_;
};

}  // namespace kzb

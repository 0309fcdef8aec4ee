#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "../alphabet.hpp"
#include "../errors.hpp"
#include "../real.hpp"
#include "../series.hpp"
#include "polylog.hpp"
#include "quadrature.hpp"

namespace kzb {

// Tangential base point: tangent vector at the endpoint, pointing into the path.
struct Tangent {
  BigC vec;
  bool regularize = false;
};

struct PathSpec {
  std::vector<BigC> points;  // polyline vertices
  std::optional<Tangent> start, end;

  PathSpec reversed() const {
    PathSpec r;
    r.points.assign(points.rbegin(), points.rend());
    r.start = end;
    r.end = start;
    return r;
  }
};

// Letter i stands for the form dz / (z - poles[i]).
using Poles = std::vector<BigC>;

inline Poles kz_poles(long N, mpfr_prec_t prec) {
  Poles p{BigC(prec)};
  for (long k = 0; k < N; ++k) p.push_back(root_of_unity(k, N, prec));
  return p;
}

inline PathSpec dch_path(mpfr_prec_t prec) {
  PathSpec p;
  p.points = {BigC(prec), BigC(1L, prec)};
  p.start = Tangent{BigC(1L, prec), true};
  p.end = Tangent{BigC(-1L, prec), true};
  return p;
}

enum class RegMode { Shuffle, MortarBoard };

namespace detail {

struct Panel {
  std::size_t seg;
  Real t0, t1;
};

class PathGeometry {
 public:
  PathGeometry(const PathSpec& path, const Poles& poles, mpfr_prec_t prec) : path_(path), poles_(poles), prec_(guard_prec(prec)) {
    if (path.points.size() < 2) throw DomainError("a path needs at least two points");
    const Real tiny = pow2(-static_cast<long>(prec) / 2, prec);
    for (std::size_t i = 0; i < poles.size(); ++i) {
      if (abs(path.points.front() - poles[i]) <= tiny) start_pole_ = static_cast<int>(i);
      if (abs(path.points.back() - poles[i]) <= tiny) end_pole_ = static_cast<int>(i);
    }
    if (start_pole_ >= 0 && start_pole_ == end_pole_) throw DomainError("closed path through a singularity");
    for (std::size_t v = 1; v + 1 < path.points.size(); ++v)
      for (const auto& c : poles)
        if (abs(path.points[v] - c) <= tiny) throw NumericError("non-integrable interior singularity at a vertex");
    for (std::size_t s = 0; s + 1 < path.points.size(); ++s) {
      const BigC& a = path.points[s];
      const BigC d = path.points[s + 1] - a;
      if (abs(d) <= tiny) throw DomainError("degenerate path segment");
      for (const auto& c : poles) {
        // c = a + t d with real t in (0, 1)?
        BigC t = (c - a) / d;
        if (abs(t.im) <= tiny && t.re > tiny && t.re < Real(1L, prec) - tiny)
          throw NumericError("non-integrable interior singularity on the path");
      }
    }
    const long min_exp = -static_cast<long>(0.8 * static_cast<double>(prec)) - 4;
    for (std::size_t s = 0; s + 1 < path.points.size(); ++s)
      split_(s, Real(0L, prec_), Real(1L, prec_), min_exp);
  }

  int start_pole() const { return start_pole_; }
  int end_pole() const { return end_pole_; }
  const std::vector<Panel>& panels() const { return panels_; }
  const PathSpec& path() const { return path_; }
  const Poles& poles() const { return poles_; }

 private:
  BigC at_(std::size_t s, const Real& t) const { return path_.points[s] + (path_.points[s + 1] - path_.points[s]) * t; }

  void split_(std::size_t s, const Real& t0, const Real& t1, long min_exp) {
    const Real len = abs(path_.points[s + 1] - path_.points[s]);
    const Real tm = ldexp(t0 + t1, -1);
    const Real half = ldexp(t1 - t0, -1) * len;
    const BigC c = at_(s, tm);
    Real d(prec_);
    bool first = true;
    for (const auto& p : poles_) {
      Real x = abs(c - p);
      if (first || x < d) d = x;
      first = false;
    }
    if (first || d >= half * 3L) {
      panels_.push_back({s, t0, t1});
      return;
    }
    if ((t1 - t0).exponent() < min_exp) {
      const bool at_start = s == 0 && t0.is_zero() && start_pole_ >= 0;
      const bool at_end = s + 2 == path_.points.size() && t1 == Real(1L, prec_) && end_pole_ >= 0;
      if (at_start || at_end) return;  // dropped: O(h log^k h) for the convergent words
      throw NumericError("path passes too close to a singularity");
    }
    split_(s, t0, tm, min_exp);
    split_(s, tm, t1, min_exp);
  }

  PathSpec path_;
  Poles poles_;
  mpfr_prec_t prec_;
  int start_pole_ = -1, end_pole_ = -1;
  std::vector<Panel> panels_;
};

struct Trie {
  struct Node {
    int letter;
    int parent;
    std::map<int, int> child;
  };
  std::vector<Node> nodes{{-1, -1, {}}};

  int insert(const Word& w) {
    int cur = 0;
    for (char ch : w) {
      const int l = static_cast<unsigned char>(ch);
      auto it = nodes[cur].child.find(l);
      if (it == nodes[cur].child.end()) {
        nodes.push_back({l, cur, {}});
        const int id = static_cast<int>(nodes.size()) - 1;
        nodes[cur].child[l] = id;
        cur = id;
      } else {
        cur = it->second;
      }
    }
    return cur;
  }
};

// Plain (unregularized) iterated integrals along the panels of `geo`.
inline std::map<Word, BigC> raw_values(const PathGeometry& geo, const std::set<Word>& words, mpfr_prec_t prec, bool refine = false) {
  Trie trie;
  std::map<Word, int> ids;
  for (const auto& w : words) ids[w] = trie.insert(w);
  const mpfr_prec_t wp = guard_prec(prec);
  const int n = panel_nodes(prec);
  const GaussRule& g = gauss_rule(n, wp);
  const std::size_t L = geo.poles().size();
  std::vector<BigC> V(trie.nodes.size(), BigC(wp));
  V[0] = BigC(1L, wp);
  int depth_max = 0;
  for (const auto& w : words) depth_max = std::max(depth_max, static_cast<int>(w.size()));
  std::vector<std::vector<BigC>> stack(depth_max + 1, std::vector<BigC>(n, BigC(wp)));
  for (auto& v : stack[0]) v = BigC(1L, wp);
  std::vector<std::vector<BigC>> form(L, std::vector<BigC>(n, BigC(wp)));
  std::vector<BigC> gv(n, BigC(wp));
  std::vector<Panel> panels;
  for (const auto& p : geo.panels()) {
    if (!refine) {
      panels.push_back(p);
    } else {
      Real tm = ldexp(p.t0 + p.t1, -1);
      panels.push_back({p.seg, p.t0, tm});
      panels.push_back({p.seg, tm, p.t1});
    }
  }
  const auto& pts = geo.path().points;
  for (const auto& P : panels) {
    const BigC d = pts[P.seg + 1] - pts[P.seg];
    const Real tm = ldexp(P.t0 + P.t1, -1), ht = ldexp(P.t1 - P.t0, -1);
    const BigC jac = d * ht;
    for (int j = 0; j < n; ++j) {
      const BigC z = pts[P.seg] + d * (tm + ht * g.x[j]);
      for (std::size_t l = 0; l < L; ++l) form[l][j] = jac / (z - geo.poles()[l]);
    }
    // depth-first over the trie
    std::vector<std::pair<int, int>> todo;  // (node, depth)
    for (const auto& [l, c] : trie.nodes[0].child) todo.push_back({c, 1});
    while (!todo.empty()) {
      auto [id, depth] = todo.back();
      todo.pop_back();
      const auto& node = trie.nodes[id];
      const auto& prev = stack[depth - 1];
      const auto& f = form.at(node.letter);
      for (int j = 0; j < n; ++j) gv[j] = f[j] * prev[j];
      auto& cur = stack[depth];
      for (int i = 0; i < n; ++i) {
        mpfr_set(cur[i].re.get(), V[id].re.get(), MPFR_RNDN);
        mpfr_set(cur[i].im.get(), V[id].im.get(), MPFR_RNDN);
        const auto& Si = g.S[i];
        for (int j = 0; j < n; ++j) {
          mpfr_fma(cur[i].re.get(), Si[j].get(), gv[j].re.get(), cur[i].re.get(), MPFR_RNDN);
          mpfr_fma(cur[i].im.get(), Si[j].get(), gv[j].im.get(), cur[i].im.get(), MPFR_RNDN);
        }
      }
      for (int j = 0; j < n; ++j) {
        mpfr_fma(V[id].re.get(), g.w[j].get(), gv[j].re.get(), V[id].re.get(), MPFR_RNDN);
        mpfr_fma(V[id].im.get(), g.w[j].get(), gv[j].im.get(), V[id].im.get(), MPFR_RNDN);
      }
      for (const auto& [l, c] : node.child) todo.push_back({c, depth + 1});
    }
  }
  std::map<Word, BigC> out;
  for (const auto& [w, id] : ids) out.emplace(w, V[id]);
  return out;
}

inline BigC start_log(const PathGeometry& geo, const Tangent& t, mpfr_prec_t wp) {
  const auto& pts = geo.path().points;
  const BigC& a = geo.poles()[geo.start_pole()];
  BigC s = log((pts[1] - a) / t.vec);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) s += log((pts[i + 1] - a) / (pts[i] - a));
  (void)wp;
  return s;
}

inline BigC end_log(const PathGeometry& geo, const Tangent& t, mpfr_prec_t wp) {
  const auto& pts = geo.path().points;
  const BigC& b = geo.poles()[geo.end_pole()];
  const std::size_t n = pts.size();
  BigC s = log(t.vec / (pts[n - 2] - b));
  for (std::size_t i = 0; i + 2 < n; ++i) s += log((pts[i + 1] - b) / (pts[i] - b));
  (void)wp;
  return s;
}

class ShuffleRegularizer {
 public:
  ShuffleRegularizer(int a, int b, std::optional<BigC> Ra, std::optional<BigC> Rb, mpfr_prec_t wp)
      : a_(a), b_(b), Ra_(std::move(Ra)), Rb_(std::move(Rb)), wp_(wp) {}

  void collect(const Word& w, std::set<Word>& core) {
    if (seen_.count(w)) return;
    seen_.insert(w);
    expand_(w, [&](const Word& u) { collect(u, core); }, [&](const Word& u) { core.insert(u); });
  }

  BigC value(const Word& w, const std::map<Word, BigC>& core) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    BigC v = eval_(w, core);
    memo_.emplace(w, v);
    return v;
  }

 private:
  static int lead(const Word& w, int a) {
    int k = 0;
    while (k < static_cast<int>(w.size()) && static_cast<unsigned char>(w[k]) == a) ++k;
    return k;
  }
  static int trail(const Word& w, int b) {
    int k = 0;
    while (k < static_cast<int>(w.size()) && static_cast<unsigned char>(w[w.size() - 1 - k]) == b) ++k;
    return k;
  }

  template <class Rec, class Core>
  void expand_(const Word& w, Rec rec, Core core) {
    if (w.empty()) return;
    if (a_ >= 0 && lead(w, a_) > 0) {
      const int k = lead(w, a_);
      if (k == static_cast<int>(w.size())) return;
      const Word u = w.substr(k);
      rec(Word(k - 1, static_cast<char>(a_)) + u);
      for (std::size_t p = 1; p <= u.size(); ++p) rec(Word(k - 1, static_cast<char>(a_)) + u.substr(0, p) + static_cast<char>(a_) + u.substr(p));
      return;
    }
    if (b_ >= 0 && trail(w, b_) > 0) {
      const int k = trail(w, b_);
      if (k == static_cast<int>(w.size())) return;
      const Word u = w.substr(0, w.size() - k);
      rec(u + Word(k - 1, static_cast<char>(b_)));
      for (std::size_t p = 0; p < u.size(); ++p) rec(u.substr(0, p) + static_cast<char>(b_) + u.substr(p) + Word(k - 1, static_cast<char>(b_)));
      return;
    }
    core(w);
  }

  static BigC power_over_factorial(const BigC& R, int k, mpfr_prec_t wp) {
    BigC v(1L, wp);
    for (int i = 1; i <= k; ++i) v = v * R / long(i);
    return v;
  }

  BigC eval_(const Word& w, const std::map<Word, BigC>& core) {
    if (w.empty()) return BigC(1L, wp_);
    if (a_ >= 0 && lead(w, a_) > 0) {
      const int k = lead(w, a_);
      if (!Ra_) throw NumericError("missing regularization flag at a singular start point");
      if (k == static_cast<int>(w.size())) return power_over_factorial(*Ra_, k, wp_);
      const Word u = w.substr(k);
      const Word pre(k - 1, static_cast<char>(a_));
      BigC v = *Ra_ * value(pre + u, core);
      for (std::size_t p = 1; p <= u.size(); ++p) v -= value(pre + u.substr(0, p) + static_cast<char>(a_) + u.substr(p), core);
      return v / long(k);
    }
    if (b_ >= 0 && trail(w, b_) > 0) {
      const int k = trail(w, b_);
      if (!Rb_) throw NumericError("missing regularization flag at a singular end point");
      if (k == static_cast<int>(w.size())) return power_over_factorial(*Rb_, k, wp_);
      const Word u = w.substr(0, w.size() - k);
      const Word post(k - 1, static_cast<char>(b_));
      BigC v = *Rb_ * value(u + post, core);
      for (std::size_t p = 0; p < u.size(); ++p) v -= value(u.substr(0, p) + static_cast<char>(b_) + u.substr(p) + post, core);
      return v / long(k);
    }
    return core.at(w);
  }

  int a_, b_;
  std::optional<BigC> Ra_, Rb_;
  mpfr_prec_t wp_;
  std::set<Word> seen_;
  std::map<Word, BigC> memo_;
};

inline void check_letters(const std::set<Word>& words, std::size_t L) {
  for (const auto& w : words) {
    if (w.empty()) throw DomainError("iterated integral of the empty word");
    for (char c : w)
      if (static_cast<std::size_t>(static_cast<unsigned char>(c)) >= L) throw DomainError("letter without a form");
  }
}

inline std::map<Word, BigC> iterint_shuffle(const PathSpec& path, const Poles& poles, const std::set<Word>& words, mpfr_prec_t prec, bool refine) {
  const mpfr_prec_t wp = guard_prec(prec);
  PathGeometry geo(path, poles, prec);
  const int a = geo.start_pole(), b = geo.end_pole();
  std::optional<BigC> Ra, Rb;
  if (a >= 0 && path.start && path.start->regularize) Ra = start_log(geo, *path.start, wp);
  if (b >= 0 && path.end && path.end->regularize) Rb = end_log(geo, *path.end, wp);
  ShuffleRegularizer reg(a, b, Ra, Rb, wp);
  std::set<Word> core;
  for (const auto& w : words) reg.collect(w, core);
  for (const auto& w : words) {
    if (a >= 0 && !Ra && static_cast<unsigned char>(w.front()) == a) throw NumericError("missing regularization flag at a singular start point");
    if (b >= 0 && !Rb && static_cast<unsigned char>(w.back()) == b) throw NumericError("missing regularization flag at a singular end point");
  }
  auto raw = raw_values(geo, core, prec, refine);
  std::map<Word, BigC> out;
  for (const auto& w : words) out.emplace(w, round_to(reg.value(w, raw), prec));
  return out;
}

// Literal limit: integrate from a + eps*lambda to b + eps*mu and multiply by
// exp(log(eps) e_a) on the left and exp(-log(eps) e_b) on the right.
inline std::map<Word, BigC> iterint_mortar(const PathSpec& path, const Poles& poles, const std::set<Word>& words, mpfr_prec_t prec, const Real& eps) {
  const mpfr_prec_t wp = guard_prec(prec);
  PathGeometry geo0(path, poles, prec);
  const int a = geo0.start_pole(), b = geo0.end_pole();
  PathSpec cut = path;
  if (a >= 0) {
    if (!path.start || !path.start->regularize) throw NumericError("missing regularization flag at a singular start point");
    cut.points.front() = cut.points.front() + path.start->vec * eps;
  }
  if (b >= 0) {
    if (!path.end || !path.end->regularize) throw NumericError("missing regularization flag at a singular end point");
    cut.points.back() = cut.points.back() + path.end->vec * eps;
  }
  PathGeometry geo(cut, poles, prec);
  const Real le = log(eps);
  auto lead = [](const Word& w, int c) {
    std::size_t k = 0;
    while (c >= 0 && k < w.size() && static_cast<unsigned char>(w[k]) == c) ++k;
    return k;
  };
  auto trail = [](const Word& w, int c) {
    std::size_t k = 0;
    while (c >= 0 && k < w.size() && static_cast<unsigned char>(w[w.size() - 1 - k]) == c) ++k;
    return k;
  };
  std::set<Word> mid;
  for (const auto& w : words)
    for (std::size_t i = 0; i <= lead(w, a); ++i)
      for (std::size_t j = 0; j <= trail(w, b) && i + j <= w.size(); ++j)
        if (i + j < w.size()) mid.insert(w.substr(i, w.size() - i - j));
  auto raw = raw_values(geo, mid, prec);
  std::map<Word, BigC> out;
  for (const auto& w : words) {
    BigC s(wp);
    Real pi_(1L, wp);
    for (std::size_t i = 0; i <= lead(w, a); ++i) {
      if (i > 0) pi_ = pi_ * le / long(i);
      Real pj(1L, wp);
      for (std::size_t j = 0; j <= trail(w, b) && i + j <= w.size(); ++j) {
        if (j > 0) pj = -(pj * le) / long(j);
        BigC v = i + j == w.size() ? BigC(1L, wp) : raw.at(w.substr(i, w.size() - i - j));
        s += v * (pi_ * pj);
      }
    }
    out.emplace(w, round_to(s, prec));
  }
  return out;
}

}  // namespace detail

inline std::map<Word, BigC> iterint_many(const PathSpec& path, const Poles& poles, const std::set<Word>& words, mpfr_prec_t prec,
                                          RegMode mode = RegMode::Shuffle) {
  detail::check_letters(words, poles.size());
  if (mode == RegMode::Shuffle) return detail::iterint_shuffle(path, poles, words, prec, false);
  return detail::iterint_mortar(path, poles, words, prec, pow2(-static_cast<long>(prec) * 3 / 4, guard_prec(prec)));
}

inline BigC iterint(const PathSpec& path, const Poles& poles, const Word& word, mpfr_prec_t prec, RegMode mode = RegMode::Shuffle) {
  return iterint_many(path, poles, {word}, prec, mode).at(word);
}

// Value with an error estimate from halving every panel.
inline NumValue iterint_with_error(const PathSpec& path, const Poles& poles, const Word& word, mpfr_prec_t prec) {
  detail::check_letters({word}, poles.size());
  BigC v = detail::iterint_shuffle(path, poles, {word}, prec, false).at(word);
  BigC r = detail::iterint_shuffle(path, poles, {word}, prec, true).at(word);
  Real err = abs(v - r) + pow2(16 - static_cast<long>(prec), prec) * (abs(v) + Real(1L, prec));
  return {v, err};
}

// All words of length <= cutoff over the alphabet's letters (letter i -> poles[i]).
inline NCS<BigC> transport(const PathSpec& path, AlphabetPtr alpha, const Poles& poles, int cutoff, mpfr_prec_t prec,
                           RegMode mode = RegMode::Shuffle) {
  if (alpha->size() != poles.size()) throw MismatchError("one form per generator required");
  std::set<Word> words;
  std::vector<Word> layer{Word{}};
  for (int len = 1; len <= cutoff; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (std::size_t l = 0; l < poles.size(); ++l) next.push_back(w + static_cast<char>(l));
    for (const auto& w : next)
      if (alpha->trunc_weight(w) <= cutoff) words.insert(w);
    layer = std::move(next);
  }
  NCS<BigC> G = NCS<BigC>::unit(alpha, cutoff, prec);
  if (words.empty()) return G;
  for (auto& [w, v] : iterint_many(path, poles, words, prec, mode)) G.add(w, v);
  return G;
}

// Drinfeld associator Phi_01 = G(dch) for the KZ alphabet of level N.
inline NCS<BigC> associator(long N, int cutoff, mpfr_prec_t prec, RegMode mode = RegMode::Shuffle) {
  return transport(dch_path(guard_prec(prec)), Alphabet::kz(N), kz_poles(N, guard_prec(prec)), cutoff, prec, mode);
}

}  // namespace kzb

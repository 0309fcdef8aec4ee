#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "extdecomp.hpp"
#include "freelie.hpp"
#include "hecke.hpp"
#include "numeric/polylog.hpp"
#include "polyquot.hpp"
#include "rational.hpp"
#include "real.hpp"
#include "roots.hpp"

namespace kzb {

using Json = nlohmann::ordered_json;

inline std::string dec(const Real& x, int digits = 0) { return x.str(digits); }

inline Json to_json(const Q& q) { return to_string(q); }

inline Json to_json(const BigC& z, int digits = 0) {
  Json j;
  j["re"] = dec(z.re, digits);
  j["im"] = dec(z.im, digits);
  return j;
}

inline Json to_json(const NumValue& v, int digits = 0) {
  Json j = to_json(v.value, digits);
  j["err"] = dec(v.err, 6);
  return j;
}

inline Json to_json(const Root& r) {
  Json j;
  j["k"] = r.k;
  j["N"] = r.N;
  return j;
}

inline Json to_json(const ExtClass& e) {
  Json j;
  j["N"] = e.N;
  j["m"] = e.m;
  Json c = Json::object();
  for (const auto& [r, q] : e.coords) c[r.label()] = to_string(q);
  j["coords"] = c;
  return j;
}

// Defining root first, then the other pair representatives by ascending k.
inline Json to_json(const Head& h) {
  Json j;
  j["zeta"] = h.zeta.label();
  Json c = Json::object();
  if (h.has(h.zeta)) c[h.zeta.label()] = to_string(h.coeff(h.zeta));
  for (const auto& [r, q] : h.coeffs)
    if (!(r == h.zeta)) c[r.label()] = to_string(q);
  j["coeffs"] = c;
  return j;
}

inline Json to_json(const EisensteinSym& s) {
  Json j;
  j["m"] = s.m;
  j["N"] = s.N;
  Json t = Json::object();
  for (const auto& [k, c] : s.terms) t["k=" + std::to_string(k)] = to_string(c);
  j["terms"] = t;
  return j;
}

template <class C>
Json to_json(const PolyQuot<C>& p) {
  Json j;
  j["a"] = Coeff<C>::str(p.a());
  j["b"] = Coeff<C>::str(p.b());
  Json cols = Json::object();
  for (long k = 0; k < p.level(); ++k) {
    if (p.column(k).is_zero()) continue;
    cols["k=" + std::to_string(k)] = p.column(k).str();
  }
  j["columns"] = cols;
  return j;
}

// {"alphabet": "KZB(2)", "cutoff": 4, "terms": [{"word": "XY", "num": "1", "den": "2"}]}
inline Json to_json(const LieElt<Q>& u) {
  Json j;
  j["alphabet"] = u.alphabet()->name();
  j["cutoff"] = u.cutoff();
  Json t = Json::array();
  for (const auto& [w, c] : u.terms()) {
    Q q = c;
    q.canonicalize();
    t.push_back({{"word", u.alphabet()->spell(w)}, {"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}});
  }
  j["terms"] = t;
  return j;
}

// {"N":5,"m":3,"columns":{"1":"Y^2","4":"Y^2"}}
inline Json to_json(const InnerDer<Q>& d, int m) {
  Json j;
  j["N"] = d.u.level();
  j["m"] = m;
  Json cols = Json::object();
  for (long k = 0; k < d.u.level(); ++k)
    if (!d.u.column(k).is_zero()) cols[std::to_string(k)] = d.u.column(k).str();
  j["columns"] = cols;
  return j;
}

}  // namespace kzb

#pragma once

#include <string>

#include "rational.hpp"
#include "real.hpp"
#include "sym.hpp"

namespace kzb {

// Uniform access to the three coefficient domains. `prec` only matters for BigC.
template <class C>
struct Coeff;

template <>
struct Coeff<Q> {
  static constexpr const char* tag = "rational";
  static Q zero(long = 0) { return Q(0); }
  static Q from_q(const Q& q, long = 0) { return q; }
  static bool is_zero(const Q& c) { return c == 0; }
  static bool near_zero(const Q& c) { return c == 0; }
  static std::string str(const Q& c) { return to_string(c); }
};

template <>
struct Coeff<BigC> {
  static constexpr const char* tag = "complex";
  static BigC zero(long prec = 0) { return BigC(prec > 0 ? prec : 2); }
  static BigC from_q(const Q& q, long prec = 0) { return BigC(q, prec > 0 ? prec : 64); }
  static bool is_zero(const BigC& c) { return c.is_zero(); }
  static bool near_zero(const BigC& c) { return c.is_zero() || abs(c).exponent() < 16 - static_cast<long>(c.prec()); }
  static std::string str(const BigC& c) { return to_string(c, 30); }
};

template <>
struct Coeff<Sym> {
  static constexpr const char* tag = "symbolic";
  static Sym zero(long = 0) { return Sym(); }
  static Sym from_q(const Q& q, long = 0) { return Sym(q); }
  static bool is_zero(const Sym& c) { return c.is_zero(); }
  static bool near_zero(const Sym& c) { return c.is_zero(); }
  static std::string str(const Sym& c) { return c.str(); }
};

}  // namespace kzb

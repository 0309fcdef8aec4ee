#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "extdecomp.hpp"
#include "hecke.hpp"
#include "json.hpp"
#include "numeric/dch.hpp"
#include "numeric/polylog.hpp"
#include "verify.hpp"

namespace kzb {

namespace cli {

enum Exit { kOk = 0, kContract = 1, kUsage = 2 };

struct UsageError : Error {
  explicit UsageError(const std::string& m) : Error(m) {}
};

inline int digits_for(mpfr_prec_t prec) { return static_cast<int>(prec * 0.30103); }

inline void need(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

inline std::pair<int, int> parse_range(const std::string& s) {
  const auto dash = s.find('-');
  try {
    if (dash == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1))};
  } catch (const std::exception&) {
    throw UsageError("bad range '" + s + "', expected a or a-b");
  }
}

inline std::vector<int> parse_indices(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("bad index list '" + s + "'");
    }
  }
  need(!out.empty(), "empty index list");
  return out;
}

inline std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

struct Opts {
  long N = 0;
  int m = 0;
  long k = -1;
  long j = 0;
  bool all = false;
  std::string m_range;
  mpfr_prec_t prec = 128;
  std::string indices;
  int max_weight = 4;
  long p = 2;
  double tau_im = 1.0;
  long radius = 300;
  std::string suite = "all";
  int cutoff = 8;
  int instances = 100;
  std::string json_file;
};

inline void check_common(const Opts& o, bool uses_prec) {
  need(o.N >= 1, "--N must be >= 1");
  if (uses_prec) need(o.prec >= 64, "--prec must be >= 64");
}

inline Json cmd_heads(const Opts& o, bool& ok) {
  check_common(o, false);
  need(o.m >= 2, "--m must be >= 2");
  (void)ok;
  const auto basis = ext_basis(o.N, o.m);
  Json j;
  j["N"] = o.N;
  j["m"] = o.m;
  if (o.all) {
    Json arr = Json::array();
    for (const auto& z : basis) arr.push_back(to_json(head(o.N, o.m, z)));
    j["heads"] = arr;
    return j;
  }
  Root z;
  if (o.k >= 0) {
    z = Root(o.k, o.N);
    need(is_basis_root(z), "--k must name a basis root of level N");
  } else {
    need(!basis.empty(), "the extension group is zero for this (N, m); nothing to report");
    z = basis.front();
  }
  const Json h = to_json(head(o.N, o.m, z));
  j["zeta"] = h["zeta"];
  j["coeffs"] = h["coeffs"];
  return j;
}

inline Json cmd_decompose(const Opts& o, bool&) {
  check_common(o, false);
  need(o.m >= 1, "--m must be >= 1");
  const ExtClass e = decompose(o.N, o.m, o.j);
  Json j;
  j["N"] = o.N;
  j["m"] = o.m;
  j["j"] = mod_l(o.j, o.N);
  j["coords"] = to_json(e)["coords"];
  return j;
}

inline Json cmd_dims(const Opts& o, bool&) {
  check_common(o, false);
  need(o.m != 0 || !o.m_range.empty(), "one of --m or --m-range is required");
  Json j;
  j["N"] = o.N;
  if (o.m_range.empty()) {
    need(o.m >= 1, "--m must be >= 1");
    j["m"] = o.m;
    j["dim"] = ext_dim(o.N, o.m);
    return j;
  }
  const auto [lo, hi] = parse_range(o.m_range);
  need(1 <= lo && lo <= hi, "--m-range must satisfy 1 <= a <= b");
  Json d = Json::object();
  for (int m = lo; m <= hi; ++m) d[std::to_string(m)] = ext_dim(o.N, m);
  j["dims"] = d;
  return j;
}

inline Json cmd_li(const Opts& o, bool&) {
  check_common(o, true);
  need(o.m >= 0, "--m must be >= 0");
  const Root r(o.k < 0 ? 1 : o.k, o.N);
  need(!(r.k == 0 && o.m <= 1), "Li_m(1) diverges for m <= 1");
  Json j;
  j["m"] = o.m;
  j["k"] = r.k;
  j["N"] = o.N;
  j["prec"] = o.prec;
  j["value"] = to_json(li_with_error(o.m, r, o.prec), digits_for(o.prec));
  return j;
}

inline Json cmd_mzv(const Opts& o, bool&) {
  need(o.prec >= 64, "--prec must be >= 64");
  const auto ns = parse_indices(o.indices);
  for (int n : ns) need(n >= 1, "indices must be >= 1");
  need(ns.back() >= 2, "the last index must be >= 2 for convergence");
  std::vector<BigC> ones(ns.size(), BigC(1L, guard_prec(o.prec)));
  const NumValue v = multiple_li(ns, ones, o.prec);
  Json j;
  j["indices"] = ns;
  j["prec"] = o.prec;
  j["value"] = dec(v.value.re, digits_for(o.prec));
  j["err"] = dec(v.err, 6);
  return j;
}

inline Json cmd_dch(const Opts& o, bool& ok) {
  check_common(o, true);
  need(o.max_weight >= 2, "--max-weight must be >= 2");
  Json j;
  j["N"] = o.N;
  j["max_weight"] = o.max_weight;
  j["prec"] = o.prec;
  Json arr = Json::array();
  const Real tol = pow2(16 - static_cast<long>(o.prec) / 2, o.prec);
  for (const auto& e : dch_mod_d2(o.N, o.max_weight - 1, o.prec)) {
    Json x;
    x["word"] = "e0^" + std::to_string(e.m) + " z" + std::to_string(e.k);
    x["quadrature"] = to_json(e.numeric, digits_for(o.prec));
    x["predicted"] = to_json(e.predicted, digits_for(o.prec));
    x["diff"] = dec(e.diff, 3);
    ok = ok && e.diff < tol;
    arr.push_back(x);
  }
  j["coefficients"] = arr;
  j["pass"] = ok;
  return j;
}

inline Json cmd_hecke(const Opts& o, bool& ok) {
  check_common(o, true);
  need(o.m >= 3, "--m must be >= 3");
  need(is_prime(o.p) && o.N % o.p != 0, "--p must be a prime not dividing N");
  need(o.tau_im > 0, "--tau-im must be positive");
  need(o.radius >= 10, "--radius must be >= 10");
  const mpfr_prec_t wp = guard_prec(o.prec);
  const BigC tau(Real(wp), Real(o.tau_im, wp));
  Json j;
  j["N"] = o.N;
  j["m"] = o.m;
  j["p"] = o.p;
  j["tau_im"] = o.tau_im;
  j["radius"] = o.radius;
  j["prec"] = o.prec;
  Json arr = Json::array();
  for (long k = 0; k < o.N; ++k) {
    const Root r(k, o.N);
    const auto sym = hecke_tp(EisensteinSym::single(o.m, r), o.p);
    const NumValue lhs = hecke_tp_numeric(o.m, r, tau, o.p, o.radius, o.prec);
    const BigC rhs = eval_sym(sym, tau, o.radius, o.prec);
    const Real res = abs(lhs.value - rhs);
    Json x;
    x["zeta"] = r.label();
    x["Tp_symbol"] = to_json(sym)["terms"];
    x["Tp_numeric"] = to_json(lhs, 20);
    x["residual"] = dec(res, 3);
    ok = ok && res.is_finite() && res.to_double() < 1e-6;
    arr.push_back(x);
  }
  j["checks"] = arr;
  j["pass"] = ok;
  return j;
}

inline Json cmd_psi(const Opts& o, bool& ok) {
  check_common(o, false);
  need(o.m >= 3, "--m must be >= 3");
  need(is_prime(o.p) && o.N % o.p != 0, "--p must be a prime not dividing N");
  Json j;
  j["N"] = o.N;
  j["m"] = o.m;
  j["p"] = o.p;
  Json imgs = Json::object();
  for (long k = 0; k < o.N; ++k) imgs[Root(k, o.N).label()] = to_json(psi(EisensteinSym::single(o.m, Root(k, o.N))))["coords"];
  j["psi"] = imgs;
  const bool c = psi_commutes(o.N, o.m, o.p);
  const bool rel = tp_respects_relations(o.N, o.m - 1, o.p);
  j["psi_commutes"] = c;
  j["tp_respects_relations"] = rel;
  ok = c && rel;
  j["pass"] = ok;
  return j;
}

inline Json cmd_verify(const Opts& o, bool& ok) {
  need(o.cutoff >= 2, "--cutoff must be >= 2");
  need(o.prec >= 64, "--prec must be >= 64");
  need(o.instances >= 1, "--instances must be >= 1");
  std::vector<std::string> names;
  for (const auto& s : split(o.suite)) {
    if (s == "all") {
      for (const auto& [n, f] : suites()) names.push_back(n);
      continue;
    }
    bool known = false;
    for (const auto& [n, f] : suites()) known = known || n == s;
    need(known, "unknown suite '" + s + "'");
    names.push_back(s);
  }
  need(!names.empty(), "no suite selected");
  SuiteOptions so;
  so.cutoff = o.cutoff;
  so.prec = o.prec;
  so.instances = o.instances;
  Json arr = Json::array();
  for (const auto& n : names) {
    const SuiteReport r = run_suite(n, so);
    Json s;
    s["suite"] = r.suite;
    s["pass"] = r.pass();
    Json cs = Json::array();
    for (const auto& c : r.checks) {
      Json x;
      x["name"] = c.name;
      x["pass"] = c.pass;
      x["residual"] = c.residual;
      x["tolerance"] = c.tolerance;
      if (!c.detail.empty()) x["detail"] = c.detail;
      cs.push_back(x);
    }
    s["checks"] = cs;
    ok = ok && r.pass();
    arr.push_back(s);
  }
  Json j;
  j["cutoff"] = o.cutoff;
  j["prec"] = o.prec;
  j["suites"] = arr;
  j["pass"] = ok;
  return j;
}

}  // namespace cli

// Entry point of the command-line tool. Returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace cli;
  Opts o;
  CLI::App app{"Cyclotomic KZ/KZB toolkit: exact Lie algebra, extension classes, polylog numerics, Hecke checks"};
  app.require_subcommand(1);
  app.add_option("--json-file", o.json_file, "write the JSON report to this file instead of stdout");

  auto* heads = app.add_subcommand("heads", "Galois heads of sigma_{m,zeta}");
  heads->add_option("--N", o.N, "level")->required();
  heads->add_option("--m", o.m, "weight")->required();
  heads->add_option("--k", o.k, "basis root zeta_N^k (default: first basis root)");
  heads->add_flag("--all", o.all, "report every basis root");

  auto* decomp = app.add_subcommand("decompose", "extension class of Li_m(zeta_N^j) in the basis");
  decomp->add_option("--N", o.N, "level")->required();
  decomp->add_option("--m", o.m, "weight")->required();
  decomp->add_option("--j", o.j, "residue j")->required();

  auto* dims = app.add_subcommand("dims", "dimension of the extension group");
  dims->add_option("--N", o.N, "level")->required();
  dims->add_option("--m", o.m, "weight");
  dims->add_option("--m-range", o.m_range, "weights a-b");

  auto* li = app.add_subcommand("li", "Li_m(zeta_N^k)");
  li->add_option("--m", o.m, "weight")->required();
  li->add_option("--k", o.k, "residue k")->required();
  li->add_option("--N", o.N, "level")->required();
  li->add_option("--prec", o.prec, "precision in bits");

  auto* mzvc = app.add_subcommand("mzv", "multiple zeta value zeta(n1, ..., nd)");
  mzvc->add_option("--indices", o.indices, "comma-separated indices, last >= 2")->required();
  mzvc->add_option("--prec", o.prec, "precision in bits");

  auto* dchc = app.add_subcommand("dch", "T(dch) modulo D^2 by regularized quadrature");
  dchc->add_option("--N", o.N, "level")->required();
  dchc->add_option("--max-weight", o.max_weight, "largest polylog weight");
  dchc->add_option("--prec", o.prec, "precision in bits");

  auto* hk = app.add_subcommand("hecke", "T_p on Eisenstein series, numerically");
  hk->add_option("--N", o.N, "level")->required();
  hk->add_option("--m", o.m, "weight")->required();
  hk->add_option("--p", o.p, "prime")->required();
  hk->add_option("--tau-im", o.tau_im, "tau = i * tau-im");
  hk->add_option("--radius", o.radius, "lattice sum radius");
  hk->add_option("--prec", o.prec, "precision in bits");

  auto* ps = app.add_subcommand("psi-check", "psi T_p = T_p psi on symbols");
  ps->add_option("--N", o.N, "level")->required();
  ps->add_option("--m", o.m, "Eisenstein weight")->required();
  ps->add_option("--p", o.p, "prime")->required();

  auto* vf = app.add_subcommand("verify", "verification suites");
  vf->add_option("--suite", o.suite, "comma-separated suite names or 'all'");
  vf->add_option("--cutoff", o.cutoff, "truncation cutoff for the exact suites");
  vf->add_option("--prec", o.prec, "precision in bits for the numeric suites");
  vf->add_option("--instances", o.instances, "random instances for the shuffle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  bool ok = true;
  Json result;
  try {
    if (*heads) result = cmd_heads(o, ok);
    else if (*decomp) result = cmd_decompose(o, ok);
    else if (*dims) result = cmd_dims(o, ok);
    else if (*li) result = cmd_li(o, ok);
    else if (*mzvc) result = cmd_mzv(o, ok);
    else if (*dchc) result = cmd_dch(o, ok);
    else if (*hk) result = cmd_hecke(o, ok);
    else if (*ps) result = cmd_psi(o, ok);
    else result = cmd_verify(o, ok);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "contract violation: " << e.what() << "\n";
    return kContract;
  }

  const std::string text = result.dump(2) + "\n";
  if (o.json_file.empty()) {
    out << text;
  } else {
    std::ofstream f(o.json_file);
    if (!f) {
      err << "cannot write " << o.json_file << "\n";
      return kUsage;
    }
    f << text;
  }
  if (!ok) err << "check failed\n";
  return ok ? kOk : kContract;
}

}  // namespace kzb

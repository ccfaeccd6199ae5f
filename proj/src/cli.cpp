#include "asz/cli.hpp"

#include "asz/csv.hpp"
#include "asz/dirichlet.hpp"
#include "asz/ensemble.hpp"
#include "asz/families.hpp"
#include "asz/lfunction.hpp"
#include "asz/manifest.hpp"
#include "asz/pointcount.hpp"
#include "asz/rmt.hpp"
#include "asz/sweep.hpp"
#include "asz/windows.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef ASZ_VERSION
#define ASZ_VERSION "dev"
#endif

namespace asz::cli {

namespace fs = std::filesystem;

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto dash = tok.find('-', 1);
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoi(tok));
      } else {
        int lo = std::stoi(tok.substr(0, dash)), hi = std::stoi(tok.substr(dash + 1));
        if (hi < lo) throw InvalidParameter("empty range " + tok);
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const InvalidParameter*>(&e)) throw;
      throw InvalidParameter("bad integer list: " + s);
    }
  }
  if (out.empty()) throw InvalidParameter("empty integer list");
  return out;
}

namespace {

struct Options {
  std::uint32_t p = 3, n = 1, d = 4;
  std::string r, s;
  std::uint32_t psi = 0;  // 0: every nontrivial character where a command supports it
  std::string family = "full";
  std::string window = "fejer:0.5";
  std::string window2;
  double theta = 0;
  std::uint64_t samples = 4000;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::uint64_t cap = kDefaultCap;
  std::string out = "out";
  bool check = false;
  // command specific
  std::string sign = "both";
  std::string ensemble = "unitary";
  int N = 9;
  std::string h;
  std::uint32_t D = 2;
  std::string subgroup = "odd";
  std::string regime = "exact";
  std::string poly;
  bool zero_side = false;
};

struct Mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  Output(csv::Table t, std::string n) : table(std::move(t)), name(std::move(n)) {}
  csv::Table table;
  std::string name;
  bool mismatch = false;
  std::string extra_name;  // optional json next to the csv
  std::string extra;
};

std::uint64_t cap_from_env() {
  if (const char* v = std::getenv("ASZ_CAP")) {
    try {
      std::size_t pos = 0;
      unsigned long long c = std::stoull(v, &pos);
      if (pos == std::string(v).size() && c > 0) return c;
    } catch (const std::exception&) {
    }
    throw InvalidParameter(std::string("ASZ_CAP must be a positive integer, got ") + v);
  }
  return kDefaultCap;
}

// key=value lines; blank lines and # comments skipped
std::vector<std::string> config_args(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidParameter("cannot read config file " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(is, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidParameter("config line without '=': " + line);
    auto trim = [](std::string x) {
      auto i = x.find_first_not_of(" \t\r"), j = x.find_last_not_of(" \t\r");
      return i == std::string::npos ? std::string() : x.substr(i, j - i + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
    out.push_back("--" + key + "=" + val);
  }
  return out;
}

FamilySpec family_spec(const Options& o) {
  FamilySpec spec{parse_family_kind(o.family), o.p, o.n, o.d};
  spec.validate();
  return spec;
}

FieldPtr make_fq(std::uint32_t p, std::uint32_t n, std::uint64_t cap) {
  if (!is_prime(p)) throw InvalidParameter("p must be prime");
  if (n < 1) throw InvalidParameter("n must be >= 1");
  return FieldTower::build(p, n, 1, cap).fq_ptr();
}

std::vector<std::uint32_t> characters(const Options& o) {
  if (o.psi == 0) {
    std::vector<std::uint32_t> all;
    for (std::uint32_t a = 1; a < o.p; ++a) all.push_back(a);
    return all;
  }
  if (o.psi % o.p == 0) throw InvalidParameter("psi must be prime to p");
  return {o.psi};
}

std::uint32_t one_character(const Options& o) {
  if (o.psi == 0) return 1;
  if (o.psi % o.p == 0) throw InvalidParameter("psi must be prime to p");
  return o.psi;
}

Window parse_window(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos || s.substr(0, colon) != "fejer")
    throw InvalidParameter("window must look like fejer:a");
  double a = 0;
  try {
    a = std::stod(s.substr(colon + 1));
  } catch (const std::exception&) {
    throw InvalidParameter("bad window parameter: " + s);
  }
  if (!(a > 0)) throw InvalidParameter("window parameter must be positive");
  return Window::fejer(a);
}

std::vector<int> r_list(const Options& o, const std::string& s, int lo, int hi) {
  if (s.empty()) {
    std::vector<int> v;
    for (int r = lo; r <= hi; ++r) v.push_back(r);
    return v;
  }
  auto v = parse_int_list(s);
  for (int r : v)
    if (r < 1) throw InvalidParameter("indices must be >= 1");
  (void)o;
  return v;
}

std::string opt_field(const std::optional<ExactScaled>& e) { return e ? e->field() : ""; }
std::string opt_value(const std::optional<ExactScaled>& e, double v) { return e ? csv::fmt(v) : ""; }

// ---------------------------------------------------------------- commands

Output cmd_avg_trace(const Options& o) {
  auto spec = family_spec(o);
  const auto rs = r_list(o, o.r, 1, static_cast<int>(o.d) - 1);
  const int max_r = *std::max_element(rs.begin(), rs.end());
  auto sw = sweep_family(spec, static_cast<std::uint32_t>(max_r), {o.jobs, o.cap});
  auto fq = make_fq(o.p, o.n, o.cap);
  Output out{csv::Table({"family", "p", "n", "d", "psi", "r", "members", "sum_exact", "avg_exact", "avg_value",
                         "oracle_exact", "oracle_value", "abs_error", "exact_match"}),
             "avg-trace"};
  for (auto a : characters(o)) {
    for (int r : rs) {
      MomentReport rep = avg_trace(sw, a, r, fq.get(), o.cap);
      if (spec.kind == FamilyKind::odd && o.d % 2 == 1 && o.p > 2 && o.d % o.p != 0) {
        rep.oracle = dirprop_average(*fq, {SubgroupKind::odd_f, o.d}, r, o.cap);
        rep.oracle_value = rep.oracle->real(spec.q());
        rep.exact_match = rep.oracle->value == rep.exact.value && rep.oracle->half_power == rep.exact.half_power;
        rep.abs_error = std::fabs(rep.value - rep.oracle_value);
      }
      ExactScaled sum{CycloElem::from_counts(o.p, sw.total(static_cast<std::uint32_t>(r)), a), 0};
      if (rep.oracle && !rep.exact_match) out.mismatch = true;
      out.table.add_row(to_string(spec.kind), o.p, o.n, o.d, a, r, sw.members, sum.field(), rep.exact.field(),
                        rep.value, opt_field(rep.oracle), opt_value(rep.oracle, rep.oracle_value),
                        rep.oracle ? csv::fmt(rep.abs_error) : std::string(),
                        rep.oracle ? csv::fmt(rep.exact_match) : std::string());
    }
  }
  return out;
}

Output cmd_pair_trace(const Options& o) {
  auto spec = family_spec(o);
  const int d = static_cast<int>(o.d);
  auto rs = r_list(o, o.r, 1, d - 2);
  auto ss = r_list(o, o.s, 1, d - 2);
  std::vector<int> signs;
  if (o.sign == "both")
    signs = {-1, 1};
  else if (o.sign == "-" || o.sign == "-1" || o.sign == "minus")
    signs = {-1};
  else if (o.sign == "+" || o.sign == "1" || o.sign == "+1" || o.sign == "plus")
    signs = {1};
  else
    throw InvalidParameter("sign must be both, + or -");
  const bool defaults = o.r.empty() && o.s.empty();
  int max_r = 1;
  for (int r : rs)
    for (int s : ss)
      if (!defaults || r + s < d) max_r = std::max({max_r, r, s});
  auto sw = sweep_family(spec, static_cast<std::uint32_t>(max_r), {o.jobs, o.cap});
  Output out{csv::Table({"family", "p", "n", "d", "psi", "r", "s", "sign", "avg_exact", "avg_value", "oracle_exact",
                         "oracle_value", "abs_error", "exact_match"}),
             "pair-trace"};
  for (auto a : characters(o))
    for (int sign : signs)
      for (int r : rs)
        for (int s : ss) {
          if (defaults && r + s >= d) continue;
          auto rep = avg_pair(sw, a, r, s, sign);
          if (rep.oracle && !rep.exact_match) out.mismatch = true;
          out.table.add_row(to_string(spec.kind), o.p, o.n, o.d, a, r, s, sign, rep.exact.field(), rep.value,
                            opt_field(rep.oracle), opt_value(rep.oracle, rep.oracle_value),
                            rep.oracle ? csv::fmt(rep.abs_error) : std::string(),
                            rep.oracle ? csv::fmt(rep.exact_match) : std::string());
        }
  return out;
}

Output cmd_zeros(const Options& o) {
  Output out{csv::Table({"family", "p", "n", "d", "psi", "member", "f", "k", "theta", "rho_re", "rho_im",
                         "rh_deviation", "residual", "rh_ok"}),
             "zeros"};
  const auto chars = characters(o);
  if (!o.poly.empty()) {
    auto fq = make_fq(o.p, o.n, o.cap);
    PolyFq f = poly_from_string(*fq, o.poly);
    for (auto a : chars) {
      auto zs = zeros(l_polynomial(f, a, o.p, o.n, o.cap));
      if (!zs.rh_ok) out.mismatch = true;
      for (std::size_t k = 0; k < zs.theta.size(); ++k)
        out.table.add_row("single", o.p, o.n, f.degree(), a, 0, poly_to_string(f), k, zs.theta[k],
                          zs.rho[k].real(), zs.rho[k].imag(), std::fabs(std::abs(zs.rho[k]) - 1.0), zs.max_residual,
                          zs.rh_ok);
    }
    return out;
  }
  auto spec = family_spec(o);
  auto sw = sweep_family(spec, std::max<std::uint32_t>(1, o.d - 1), {o.jobs, o.cap});
  const auto members = static_cast<std::int64_t>(sw.members);
  for (auto a : chars) {
    std::vector<ZeroSet> all(sw.members);
#pragma omp parallel for num_threads(std::max(1, o.jobs)) schedule(dynamic, 8)
    for (std::int64_t m = 0; m < members; ++m) {
      const auto um = static_cast<std::uint64_t>(m);
      auto sums = char_sums(sw, um, a, sw.max_r);
      all[um] = zeros(l_polynomial_from_sums(o.p, spec.q(), o.d, sums));
    }
    for (std::uint64_t m = 0; m < sw.members; ++m) {
      const auto& zs = all[m];
      if (!zs.rh_ok) out.mismatch = true;
      const std::string f = poly_to_string(member_at(spec, m));
      for (std::size_t k = 0; k < zs.theta.size(); ++k)
        out.table.add_row(to_string(spec.kind), o.p, o.n, o.d, a, m, f, k, zs.theta[k], zs.rho[k].real(),
                          zs.rho[k].imag(), std::fabs(std::abs(zs.rho[k]) - 1.0), zs.max_residual, zs.rh_ok);
    }
  }
  return out;
}

Output cmd_window_stat(const Options& o) {
  auto spec = family_spec(o);
  Window w = parse_window(o.window);
  const auto a = one_character(o);
  const std::uint32_t reach = static_cast<std::uint32_t>(w.max_frequency(static_cast<int>(o.d)));
  const std::uint32_t max_r = std::max({1u, reach, o.zero_side ? o.d - 1 : 1u});
  auto sw = sweep_family(spec, max_r, {o.jobs, o.cap});
  auto st = window_stat(sw, w, a, o.theta, o.zero_side, o.jobs);
  double fourier_avg = 0;
  for (double v : st.per_f_fourier) fourier_avg += v;
  fourier_avg /= static_cast<double>(sw.members);
  const double err = st.fourier_exact_average - st.prediction;
  Output out{csv::Table({"family", "p", "n", "d", "psi", "window", "theta", "members", "avg_fourier",
                         "avg_fourier_exact", "avg_zero", "prediction", "error", "error_times_d", "max_route_diff"}),
             "window-stat"};
  out.table.add_row(to_string(spec.kind), o.p, o.n, o.d, a, o.window, o.theta, sw.members, fourier_avg,
                    st.fourier_exact_average, o.zero_side ? csv::fmt(st.average_per_f) : std::string(),
                    st.prediction, err, err * o.d, o.zero_side ? csv::fmt(st.max_route_diff) : std::string());
  return out;
}

Output cmd_two_level(const Options& o) {
  auto spec = family_spec(o);
  Window w1 = parse_window(o.window);
  Window w2 = parse_window(o.window2.empty() ? o.window : o.window2);
  const auto a = one_character(o);
  auto sw = sweep_family(spec, std::max<std::uint32_t>(1, o.d - 1), {o.jobs, o.cap});
  auto st = two_level_stat(sw, w1, w2, a, o.theta, o.jobs);
  Output out{csv::Table({"family", "p", "n", "d", "N", "psi", "window1", "window2", "theta", "members", "empirical",
                         "fourier_exact", "limit_prediction", "unitary_finite", "abs_error_limit",
                         "max_route_diff"}),
             "two-level"};
  out.table.add_row(to_string(spec.kind), o.p, o.n, o.d, st.N, a, o.window, o.window2.empty() ? o.window : o.window2,
                    o.theta, sw.members, st.empirical, st.fourier_exact, st.limit_prediction, st.unitary_finite,
                    std::fabs(st.empirical - st.limit_prediction), st.max_route_diff);
  return out;
}

Output cmd_rmt(const Options& o, bool window_given) {
  const Ensemble e = parse_ensemble(o.ensemble);
  Output out{csv::Table({"statistic", "ensemble", "N", "r", "s", "mean", "stderr", "samples", "seed", "prediction"}),
             "rmt-baseline"};
  auto within = [](double mean, double pred, double se) {
    return se > 0 ? std::fabs(mean - pred) <= 5 * se : std::fabs(mean - pred) <= 1e-9;
  };
  if (window_given) {
    if (e != Ensemble::unitary) throw InvalidParameter("the two-level baseline uses U(N)");
    Window w1 = parse_window(o.window);
    Window w2 = parse_window(o.window2.empty() ? o.window : o.window2);
    auto t = two_level_unitary(o.N, w1, w2, o.samples, o.seed, o.theta, o.jobs);
    if (!within(t.estimate.mean, t.prediction, t.estimate.stderr_)) out.mismatch = true;
    out.table.add_row("two_level", to_string(e), o.N, "", "", t.estimate.mean, t.estimate.stderr_, o.samples, o.seed,
                      t.prediction);
    return out;
  }
  if (o.samples < 100) throw InvalidParameter("need at least 100 samples");
  auto rs = r_list(o, o.r, 1, e == Ensemble::unitary ? o.N + 3 : o.N - 1);
  auto spectra = sample_spectra(e, o.N, o.samples, o.seed, o.jobs);
  for (int r : rs) {
    std::vector<int> ss = o.s.empty() ? std::vector<int>{} : parse_int_list(o.s);
    if (ss.empty()) {
      const MomentKind kind = e == Ensemble::unitary ? MomentKind::conj_pair : MomentKind::single;
      auto m = trace_moment(spectra, kind, r, r, o.seed);
      const double pred = moment_prediction(e, o.N, kind, r, r);
      if (!within(m.mean, pred, m.stderr_)) out.mismatch = true;
      out.table.add_row(kind == MomentKind::single ? "trace" : "abs_square", to_string(e), o.N, r,
                        kind == MomentKind::single ? std::string() : csv::fmt(r), m.mean, m.stderr_, o.samples,
                        o.seed, pred);
      continue;
    }
    if (e != Ensemble::unitary) throw InvalidParameter("pair moments are tabulated for U(N) only");
    for (int s : ss) {
      auto m = trace_moment(spectra, MomentKind::conj_pair, r, s, o.seed);
      const double pred = moment_prediction(e, o.N, MomentKind::conj_pair, r, s);
      if (!within(m.mean, pred, m.stderr_)) out.mismatch = true;
      out.table.add_row("conj_pair", to_string(e), o.N, r, s, m.mean, m.stderr_, o.samples, o.seed, pred);
    }
  }
  return out;
}

Output cmd_dirichlet_verify(const Options& o) {
  FamilySpec spec{FamilyKind::full, o.p, o.n, o.d};
  spec.validate();
  auto fq = make_fq(o.p, o.n, o.cap);
  auto members = enumerate(spec, o.cap);
  Output out{csv::Table({"p", "n", "d", "psi", "member", "f", "lchi_degree", "mismatches", "ok"}), "dirichlet-verify"};
  for (auto a : characters(o)) {
    std::vector<FactorizationCheck> res(members.size());
    const auto cnt = static_cast<std::int64_t>(members.size());
#pragma omp parallel for num_threads(std::max(1, o.jobs)) schedule(dynamic, 4)
    for (std::int64_t m = 0; m < cnt; ++m)
      res[static_cast<std::size_t>(m)] = verify_factorization(fq, members[static_cast<std::size_t>(m)], a, o.cap);
    for (std::size_t m = 0; m < members.size(); ++m) {
      int deg = -1, bad = 0;
      for (std::size_t k = 0; k < res[m].lchi.size(); ++k) {
        if (!res[m].lchi[k].is_zero()) deg = static_cast<int>(k);
        if (!res[m].diff[k].is_zero()) ++bad;
      }
      if (!res[m].ok) out.mismatch = true;
      out.table.add_row(o.p, o.n, o.d, a, m, poly_to_string(members[m]), deg, bad, res[m].ok);
    }
  }
  return out;
}

Output cmd_odd_family(const Options& o) {
  FamilySpec spec{FamilyKind::odd, o.p, o.n, o.d};
  spec.validate();
  auto fq = make_fq(o.p, o.n, o.cap);
  auto rs = r_list(o, o.r, 1, 3);
  const int max_r = *std::max_element(rs.begin(), rs.end());
  auto sw = sweep_family(spec, static_cast<std::uint32_t>(max_r), {o.jobs, o.cap});
  const SubgroupSpec sub{SubgroupKind::odd_f, o.d};
  const auto H = subgroup_size(*fq, sub, o.d + 1), Hd = subgroup_size(*fq, sub, o.d);
  Output out{csv::Table({"p", "n", "d", "psi", "r", "members", "h_size", "h_primitive", "avg_exact", "dirprop_exact",
                         "avg_value", "exact_match"}),
             "odd-family"};
  for (auto a : characters(o))
    for (int r : rs) {
      auto got = family_average_trace(sw, a, r);
      auto want = dirprop_average(*fq, sub, r, o.cap);
      bool match = got == want;
      if (!match) out.mismatch = true;
      out.table.add_row(o.p, o.n, o.d, a, r, sw.members, H, H - Hd, got.field(), want.field(), got.real(spec.q()),
                        match);
    }
  return out;
}

Output cmd_decompose(const Options& o) {
  auto fq = make_fq(o.p, o.n, o.cap);
  if (o.h.empty()) throw InvalidParameter("--h is required");
  if (o.D < 1) throw InvalidParameter("--D must be >= 1");
  PolyFq h = poly_from_string(*fq, o.h);
  bool allow_even;
  if (o.subgroup == "odd")
    allow_even = true;
  else if (o.subgroup == "ptorsion")
    allow_even = false;
  else
    throw InvalidParameter("subgroup must be odd or ptorsion");
  auto w = k_membership(*fq, h, o.D, allow_even);
  const bool verified = w.member && verify_witness(*fq, h, o.D, w);
  Output out{csv::Table({"p", "n", "subgroup", "h", "D", "member", "g1", "g2", "fail_level", "obstruction",
                         "verified"}),
             "decompose"};
  if (w.member && !verified) out.mismatch = true;
  out.table.add_row(o.p, o.n, o.subgroup, poly_to_string(h), o.D, w.member, w.member ? poly_to_string(w.g1) : "",
                    w.member ? poly_to_string(w.g2) : "", w.member ? std::string() : csv::fmt(w.fail_level),
                    w.member ? std::string() : csv::fmt(w.obstruction), verified);
  if (w.member)
    std::cout << "member: g1 = " << poly_pretty(w.g1) << ", g2 = " << poly_pretty(w.g2) << '\n';
  else
    std::cout << "not a member: level " << w.fail_level << " coefficient " << w.obstruction << '\n';
  return out;
}

Output cmd_conjecture_probe(const Options& o) {
  auto fq = make_fq(o.p, o.n, o.cap);
  int r_max = o.r.empty() ? static_cast<int>((o.d - 1) / 4) : parse_int_list(o.r).back();
  if (r_max < 1) throw InvalidParameter("r must be >= 1");
  auto res = niceconj_probe(*fq, o.d, static_cast<std::uint32_t>(r_max), o.cap);
  Output out{csv::Table({"p", "n", "d", "r", "irreducibles", "members", "even_members", "counterexamples",
                         "examples"}),
             "conjecture-probe"};
  for (const auto& pd : res) {
    std::string ex;
    for (const auto& h : pd.counterexamples) ex += (ex.empty() ? "" : " ") + poly_to_string(h);
    if (!pd.counterexamples.empty()) out.mismatch = true;
    out.table.add_row(o.p, o.n, o.d, pd.r, pd.irreducibles, pd.members, pd.even_members,
                      static_cast<std::uint64_t>(pd.counterexamples.size()), ex);
  }
  return out;
}

Output cmd_point_dist(const Options& o) {
  if (!is_prime(o.p)) throw InvalidParameter("p must be prime");
  const auto rs = o.r.empty() ? std::vector<int>{1} : parse_int_list(o.r);
  if (rs.size() != 1 || rs[0] < 1) throw InvalidParameter("point-dist takes one r >= 1");
  const auto r = static_cast<std::uint32_t>(rs[0]);
  const Regime reg = parse_regime(o.regime);
  auto hist = point_histogram(o.p, o.n, o.d, r, o.samples, o.seed, o.cap, o.jobs);
  const std::uint64_t q = hist.q();
  const bool applicable = model_applicable(q, o.d, r);
  std::optional<ModelDistribution> model;
  try {
    model = model_distribution(o.p, o.n, r, hist.exhaustive && applicable);
  } catch (const CapExceeded&) {
  }
  Output out{csv::Table({"value", "frequency", "model_probability"}), "point-dist"};
  std::uint64_t vmax = hist.freq.empty() ? 0 : hist.freq.rbegin()->first;
  if (model && applicable) vmax = std::max<std::uint64_t>(vmax, model->pmf.size() - 1);
  for (std::uint64_t v = 0; v <= vmax; ++v) {
    auto it = hist.freq.find(v);
    const std::uint64_t f = it == hist.freq.end() ? 0 : it->second;
    if (f == 0 && !(model && applicable && model->prob(v) > 0)) continue;
    out.table.add_row(v, f, model && applicable ? csv::fmt(model->prob(v)) : std::string());
  }

  nlohmann::ordered_json js;
  js["p"] = o.p;
  js["n"] = o.n;
  js["d"] = o.d;
  js["r"] = r;
  js["mode"] = hist.exhaustive ? "exhaustive" : "sampled";
  if (!hist.exhaustive) js["seed"] = o.seed;
  js["total"] = hist.total;
  double mean = 0;
  for (const auto& [v, c] : hist.freq) mean += static_cast<double>(v) * static_cast<double>(c);
  js["mean"] = mean / static_cast<double>(hist.total);
  js["model"] = applicable ? "applicable" : "model not applicable";
  if (model) {
    js["model_mean"] = model->mean;
    js["model_variance"] = model->variance;
  }
  if (model && applicable && hist.exhaustive) {
    bool match = matches_model(hist, *model);
    js["exact_match"] = match;
    if (!match) out.mismatch = true;
  }
  auto weil = weil_check(hist);
  js["weil"] = {{"applicable", weil.applicable}, {"ok", weil.ok}, {"worst_ratio", weil.worst_ratio}};
  if (weil.applicable && !weil.ok) out.mismatch = true;
  if (reg != Regime::exact || model) {
    auto dg = convergence_diagnostics(reg, hist);
    js["regime"] = to_string(reg);
    js["moments"] = dg.moments;
    js["moment_stderr"] = dg.moment_err;
    js["target_moments"] = dg.target;
    js["chi2"] = dg.chi2;
    js["dof"] = dg.dof;
    js["p_value"] = dg.p_value;
    js["bins"] = dg.bins;
  }
  out.extra_name = "point-dist.summary.json";
  out.extra = js.dump(2) + "\n";
  return out;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "characteristic")->capture_default_str();
  sub->add_option("--n", o.n, "q = p^n")->capture_default_str();
  sub->add_option("--d", o.d, "degree")->capture_default_str();
  sub->add_option("--r", o.r, "index list, e.g. 3, 1-7, 1,4");
  sub->add_option("--psi", o.psi, "additive character index a (0 = all)")->capture_default_str();
  sub->add_option("--family", o.family, "full | odd | monic")->capture_default_str();
  sub->add_option("--jobs", o.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--cap", o.cap, "element cap for enumeration")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--out", o.out, "output directory")->capture_default_str();
  sub->add_flag("--check", o.check, "exit 2 when an exact identity fails");
}

}  // namespace

int dispatch(const std::vector<std::string>& args_in) {
  Options o;
  try {
    o.cap = cap_from_env();
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }

  // splice key=value config lines in front of the flags so flags win
  std::vector<std::string> args;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args_in.size(); ++i) {
    const std::string& a = args_in[i];
    std::string path;
    if (a == "--config" && i + 1 < args_in.size())
      path = args_in[++i];
    else if (a.rfind("--config=", 0) == 0)
      path = a.substr(9);
    else {
      rest.push_back(a);
      continue;
    }
    try {
      auto extra = config_args(path);
      args.insert(args.end(), extra.begin(), extra.end());
    } catch (const InvalidParameter& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kInvalid;
    }
  }
  if (!rest.empty() && rest[0].rfind("-", 0) != 0) {
    args.insert(args.begin(), rest[0]);
    args.insert(args.end(), rest.begin() + 1, rest.end());
  } else {
    args.insert(args.end(), rest.begin(), rest.end());
  }

  CLI::App app{"exact zero statistics of Artin-Schreier L-functions", "asz"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ASZ_VERSION);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd cmds[] = {
      {"avg-trace", "family average of T^r with its closed form"},
      {"pair-trace", "family average of T^r T^{+-s} with its closed form"},
      {"zeros", "normalized zeros of every L_{f,psi} in a family, or of --f"},
      {"window-stat", "one-level statistic for a Fejer window"},
      {"two-level", "two-level statistic for a product Fejer window"},
      {"rmt-baseline", "Haar moments of U(N) and USp(N)"},
      {"dirichlet-verify", "L_chi(z) = (1 - z) L_{f,psi}(z) over F_d"},
      {"odd-family", "odd family averages against the subgroup formula"},
      {"decompose", "witness h = g1(x^p) g2(x^2) mod x^D"},
      {"conjecture-probe", "irreducible members of K that are not even"},
      {"point-dist", "distribution of N_r(f) over monic f of degree d"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->set_help_flag("--help", "print this help");
    add_common(sub, o);
    subs[c.name] = sub;
  }
  subs["pair-trace"]->add_option("--s", o.s, "second index list");
  subs["pair-trace"]->add_option("--sign", o.sign, "both | + | -")->capture_default_str();
  subs["zeros"]->add_option("--f", o.poly, "single polynomial c0,c1,...");
  for (auto name : {"window-stat", "two-level", "rmt-baseline"}) {
    subs[name]->add_option("--window", o.window, "fejer:a")->capture_default_str();
    subs[name]->add_option("--theta", o.theta, "center")->capture_default_str();
  }
  subs["window-stat"]->add_flag("--zero-side", o.zero_side, "also evaluate from the zeros");
  subs["two-level"]->add_option("--window2", o.window2, "second factor, defaults to --window");
  auto* rmt = subs["rmt-baseline"];
  rmt->add_option("--window2", o.window2, "second factor for the two-level baseline");
  rmt->add_option("--s", o.s, "second index list (U(N) pair moments)");
  rmt->add_option("--ensemble", o.ensemble, "unitary | usp")->capture_default_str();
  rmt->add_option("--N", o.N, "matrix size")->capture_default_str();
  for (auto name : {"rmt-baseline", "point-dist"}) {
    subs[name]->add_option("--samples", o.samples, "Monte-Carlo samples")->capture_default_str();
    subs[name]->add_option("--seed", o.seed, "master seed")->capture_default_str();
  }
  subs["decompose"]->add_option("--h", o.h, "h as c0,c1,...");
  subs["decompose"]->add_option("--D", o.D, "truncation degree")->capture_default_str();
  subs["decompose"]->add_option("--subgroup", o.subgroup, "odd | ptorsion")->capture_default_str();
  subs["point-dist"]->add_option("--regime", o.regime, "exact | poisson | t3 | t3ii | t4")->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  std::string command;
  CLI::App* sub = nullptr;
  for (auto& [name, s] : subs)
    if (s->parsed()) {
      command = name;
      sub = s;
    }

  const auto t0 = std::chrono::steady_clock::now();
  Output out{csv::Table({}), command};
  try {
    if (o.cap == 0) throw InvalidParameter("cap must be positive");
    if (command == "avg-trace") out = cmd_avg_trace(o);
    else if (command == "pair-trace") out = cmd_pair_trace(o);
    else if (command == "zeros") out = cmd_zeros(o);
    else if (command == "window-stat") out = cmd_window_stat(o);
    else if (command == "two-level") out = cmd_two_level(o);
    else if (command == "rmt-baseline") out = cmd_rmt(o, sub->count("--window") > 0);
    else if (command == "dirichlet-verify") out = cmd_dirichlet_verify(o);
    else if (command == "odd-family") out = cmd_odd_family(o);
    else if (command == "decompose") out = cmd_decompose(o);
    else if (command == "conjecture-probe") out = cmd_conjecture_probe(o);
    else if (command == "point-dist") out = cmd_point_dist(o);
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const LevelMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const CapExceeded& e) {
    std::cerr << "error: cap exceeded: " << e.what() << '\n';
    return kInvalid;
  } catch (const ArithmeticError& e) {
    std::cerr << "error: arithmetic: " << e.what() << '\n';
    return kInvalid;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  RunManifest man;
  man.command = command;
  for (const auto* opt : sub->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") continue;
    const std::string key = opt->get_lnames()[0];
    if (opt->count() > 0) {
      auto res = opt->results();
      man.params[key] = res.empty() ? std::string("true") : res.back();
    } else {
      man.params[key] = opt->get_default_str();
    }
  }
  man.params["cap"] = std::to_string(o.cap);
  man.seed = o.seed;
  man.jobs = o.jobs;
  man.wall_seconds = wall;
  man.version = ASZ_VERSION;
  const int code = (o.check && out.mismatch) ? kMismatch : kOk;
  man.exit_code = code;
  try {
    const fs::path dir(o.out);
    const fs::path csv_path = dir / (command + ".csv");
    out.table.save(csv_path);
    man.outputs.push_back({csv_path.filename().string(), sha256_file(csv_path)});
    if (!out.extra_name.empty()) {
      const fs::path p = dir / out.extra_name;
      std::ofstream os(p, std::ios::binary);
      os << out.extra;
      os.close();
      man.outputs.push_back({out.extra_name, sha256_file(p)});
    }
    write_manifest(dir / (command + ".manifest.json"), man);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  if (code == kMismatch) std::cerr << "check failed: a computed value disagrees with its closed form\n";
  return code;
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args);
}

}  // namespace asz::cli

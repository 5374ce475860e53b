#include "qpavg/driver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qpavg/errors.hpp"
#include "qpavg/lyapunov.hpp"
#include "qpavg/pipelines.hpp"
#include "qpavg/study.hpp"

namespace qpavg {

namespace {

const std::map<std::string, std::string>& column_docs() {
  static const std::map<std::string, std::string> docs = {
      {"orbit",
       "standard, torus2d: n,x,y | vdp: n,t,x,v (stroboscopic samples) | three_body: n,t,q1,q2,p1,p2 (section points)"},
      {"rotnum", "N,rho1[,rho2] partial estimates at N/8, N/4, N/2, N; summary values in the header"},
      {"fourier",
       "circle systems: k,b,c,magnitude of the conjugacy g | torus2d: component,j,k,plus_re,plus_im,minus_re,minus_im"},
      {"conjugacy", "theta,g reconstructed on --points equally spaced angles (circle systems)"},
      {"lyapunov", "index,exponent (standard, torus2d), descending"},
      {"convergence", "kernel,N,value,error with error = |rho1(kernel, N) - rho1(exp, N*)|"},
      {"section", "n,t,q1,q2,p1,p2,residual,H_drift (three_body)"},
  };
  return docs;
}

template <RealScalar Real>
std::string fmt(const Real& x) {
  return format_real(x);
}

std::string fmt_int(std::size_t n) { return std::to_string(n); }

template <RealScalar Real>
Real param(const RunConfig& cfg, const std::string& key) {
  return parse_real<Real>(cfg.params.at(key));
}

template <RealScalar Real>
std::vector<Real> ic_values(const RunConfig& cfg) {
  std::vector<Real> out;
  for (const auto& s : cfg.ic) out.push_back(parse_real<Real>(s));
  return out;
}

template <RealScalar Real>
IntegratorConfig<Real> integrator(const RunConfig& cfg) {
  IntegratorConfig<Real> ic;
  ic.step = parse_real<Real>(cfg.step);
  if (!(ic.step > 0.0)) throw ConfigError("--step must be positive");
  return ic;
}

template <RealScalar Real>
Vec<Real, 4> three_body_ic(const RunConfig& cfg) {
  const auto v = ic_values<Real>(cfg);
  const Real mu = param<Real>(cfg, "mu");
  if (v.size() == 4) return {v[0], v[1], v[2], v[3]};
  const Real H = param<Real>(cfg, "H");
  return {v[0], Real{0.0}, v[1], three_body_p2_on_section(v[0], v[1], H, mu)};
}

// Points on the invariant circle for the three circle systems: N + 1 of
// them, so N increments.
template <RealScalar Real>
std::vector<Vec<Real, 2>> circle_points(const RunConfig& cfg, SystemKind sys, std::size_t count) {
  const auto v = ic_values<Real>(cfg);
  const auto burn = static_cast<std::size_t>(cfg.burn_in);
  switch (sys) {
    case SystemKind::standard_map: {
      auto pts = standard_map_orbit<Real>({v[0], v[1]}, count, burn);
      unwrap_about_circular_mean(pts, two_pi<Real>());
      return pts;
    }
    case SystemKind::vdp_flow:
      return vdp_stroboscopic<Real>(param<Real>(cfg, "F"), {v[0], v[1]}, count, burn, integrator<Real>(cfg));
    case SystemKind::three_body_flow: {
      const auto ev = three_body_sections<Real>(three_body_ic<Real>(cfg), param<Real>(cfg, "mu"), count + burn,
                                                integrator<Real>(cfg), parse_real<Real>(cfg.tol));
      std::vector<Vec<Real, 2>> pts;
      pts.reserve(count);
      for (std::size_t i = burn; i < ev.size(); ++i) pts.push_back({ev[i].state[0], ev[i].state[2]});
      return pts;
    }
    case SystemKind::torus2d_map:
      break;
  }
  throw ConfigError("circle_points: torus2d has no invariant circle");
}

// Mean increment before reduction mod 1: rho plus the integer that brings it
// next to the lifted average.
template <RealScalar Real>
Real unreduced_rho(const std::vector<Real>& lifted, const Real& rho) {
  const std::size_t N = lifted.size() - 1;
  const double mean = to_double(lifted[N] - lifted[0]) / static_cast<double>(N);
  return rho + std::round(mean - to_double(rho));
}

template <RealScalar Real>
Vec<Real, 2> torus_start(const RunConfig& cfg) {
  const auto v = ic_values<Real>(cfg);
  return {v[0], v[1]};
}

template <RealScalar Real>
ResultTable cmd_orbit(const RunConfig& cfg, SystemKind sys) {
  ResultTable t;
  const auto v = ic_values<Real>(cfg);
  const auto burn = static_cast<std::size_t>(cfg.burn_in);
  switch (sys) {
    case SystemKind::standard_map:
    case SystemKind::torus2d_map: {
      t.columns = {"n", "x", "y"};
      const auto pts = sys == SystemKind::standard_map
                           ? standard_map_orbit<Real>({v[0], v[1]}, cfg.n, burn)
                           : torus_orbit<Real>(TorusMapCoefficients<Real>::defaults(), {v[0], v[1]}, cfg.n, burn);
      for (std::size_t i = 0; i < pts.size(); ++i) t.add_row({fmt_int(i), fmt(pts[i][0]), fmt(pts[i][1])});
      break;
    }
    case SystemKind::vdp_flow: {
      t.columns = {"n", "t", "x", "v"};
      const auto pts = circle_points<Real>(cfg, sys, cfg.n);
      const Real T = vdp_period<Real>();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        t.add_row({fmt_int(i), fmt(T * static_cast<double>(i + burn)), fmt(pts[i][0]), fmt(pts[i][1])});
      }
      break;
    }
    case SystemKind::three_body_flow: {
      t.columns = {"n", "t", "q1", "q2", "p1", "p2"};
      const auto ev = three_body_sections<Real>(three_body_ic<Real>(cfg), param<Real>(cfg, "mu"), cfg.n,
                                                integrator<Real>(cfg), parse_real<Real>(cfg.tol));
      for (std::size_t i = 0; i < ev.size(); ++i) {
        const auto& s = ev[i].state;
        t.add_row({fmt_int(i), fmt(ev[i].time), fmt(s[0]), fmt(s[1]), fmt(s[2]), fmt(s[3])});
      }
      break;
    }
  }
  return t;
}

template <RealScalar Real>
ResultTable cmd_rotnum(const RunConfig& cfg, SystemKind sys, Kernel kind) {
  ResultTable t;
  RotationEstimate<Real> est;
  if (sys == SystemKind::torus2d_map) {
    est = torus_rotation<Real>(TorusMapCoefficients<Real>::defaults(), torus_start<Real>(cfg), cfg.n, kind,
                               static_cast<std::size_t>(cfg.burn_in));
    t.columns = {"N", "rho1", "rho2"};
  } else {
    const auto pts = circle_points<Real>(cfg, sys, cfg.n + 1);
    const auto cr = circle_rotation<Real>(pts, kind);
    est = cr.estimate;
    t.columns = {"N", "rho1"};
    t.scalars.push_back({"reference_increment", fmt(cr.reference_increment)});
  }
  for (std::size_t i = 0; i < est.rho.size(); ++i) t.scalars.push_back({"rho" + std::to_string(i + 1), fmt(est.rho[i])});
  t.scalars.push_back({"N", fmt_int(est.N)});
  t.scalars.push_back({"kernel", std::string(kernel_name(kind))});
  for (const auto& d : est.diagnostics) {
    std::vector<std::string> row{fmt_int(d.N)};
    for (const auto& r : d.rho) row.push_back(fmt(r));
    t.add_row(std::move(row));
  }
  return t;
}

// Conjugacy samples g_n = y_n - y_0 - n rho of a circle system, with rho.
template <RealScalar Real>
std::pair<std::vector<Real>, Real> circle_conjugacy(const RunConfig& cfg, SystemKind sys, Kernel kind) {
  const auto pts = circle_points<Real>(cfg, sys, cfg.n + 1);
  auto cr = circle_rotation<Real>(pts, kind);
  const Real rho = unreduced_rho(cr.lifted, cr.estimate.rho[0]);
  const Real y0 = cr.lifted[0];
  for (auto& y : cr.lifted) y -= y0;
  cr.lifted.pop_back();
  return {conjugacy_samples(cr.lifted, rho), rho};
}

template <RealScalar Real>
FourierSpectrum1D<Real> circle_spectrum(const RunConfig& cfg, SystemKind sys, Kernel kind, Real& rho) {
  auto [g, r] = circle_conjugacy<Real>(cfg, sys, kind);
  rho = r;
  return fourier_coeffs_1d(g, rho, cfg.kmax, normalized_weights<Real>(kind, cfg.n));
}

template <RealScalar Real>
ResultTable cmd_fourier(const RunConfig& cfg, SystemKind sys, Kernel kind) {
  ResultTable t;
  if (sys == SystemKind::torus2d_map) {
    const auto c = TorusMapCoefficients<Real>::defaults();
    const std::size_t N = cfg.n;
    std::vector<Vec<Real, 2>> lifted(N + 1);
    Vec<Real, 2> s = torus_start<Real>(cfg);
    for (std::size_t i = 0; i < static_cast<std::size_t>(cfg.burn_in); ++i) s = torus2d_step(s, c);
    s = {frac(s[0]), frac(s[1])};
    lifted[0] = {Real{0.0}, Real{0.0}};
    for (std::size_t n = 0; n < N; ++n) {
      const auto d = torus2d_increment(s, c);
      lifted[n + 1] = {lifted[n][0] + d[0], lifted[n][1] + d[1]};
      s = {frac(s[0] + d[0]), frac(s[1] + d[1])};
    }
    const auto w = normalized_weights<Real>(kind, N);
    Real rho[2];
    for (int i = 0; i < 2; ++i) {
      CompensatedSum<Real> acc;
      for (std::size_t n = 0; n < N; ++n) acc.add(w[n] * (lifted[n + 1][i] - lifted[n][i]));
      rho[i] = acc.value();
    }
    t.columns = {"component", "j", "k", "plus_re", "plus_im", "minus_re", "minus_im"};
    t.group_column = "component";
    t.scalars.push_back({"rho1", fmt(frac(rho[0]))});
    t.scalars.push_back({"rho2", fmt(frac(rho[1]))});
    for (int i = 0; i < 2; ++i) {
      std::vector<Real> g(N);
      for (std::size_t n = 0; n < N; ++n) g[n] = lifted[n][i] - rho[i] * static_cast<double>(n);
      const auto sp = fourier_coeffs_2d(g, rho[0], rho[1], cfg.jmax, cfg.kmax, w);
      for (int j = 0; j <= sp.jmax; ++j) {
        for (int k = 0; k <= sp.kmax; ++k) {
          const auto idx = sp.index(j, k);
          t.add_row({std::to_string(i + 1), std::to_string(j), std::to_string(k), fmt(sp.plus_re[idx]),
                     fmt(sp.plus_im[idx]), fmt(sp.minus_re[idx]), fmt(sp.minus_im[idx])});
        }
      }
    }
    return t;
  }
  Real rho{0.0};
  const auto sp = circle_spectrum<Real>(cfg, sys, kind, rho);
  t.columns = {"k", "b", "c", "magnitude"};
  t.scalars.push_back({"rho1", fmt(frac(rho))});
  try {
    const auto fit = decay_fit(sp);
    t.scalars.push_back({"decay_alpha", format_real(fit.alpha)});
    t.scalars.push_back({"decay_beta", format_real(fit.beta)});
    t.scalars.push_back({"decay_points", std::to_string(fit.used)});
  } catch (const FitError& e) {
    t.scalars.push_back({"decay_fit", e.what()});
  }
  for (int k = 0; k <= sp.kmax; ++k) {
    using std::sqrt;
    const Real m = sqrt(sp.b[k] * sp.b[k] + sp.c[k] * sp.c[k]);
    t.add_row({std::to_string(k), fmt(sp.b[k]), fmt(sp.c[k]), fmt(m)});
  }
  return t;
}

template <RealScalar Real>
ResultTable cmd_conjugacy(const RunConfig& cfg, SystemKind sys, Kernel kind) {
  if (sys == SystemKind::torus2d_map) throw ConfigError("conjugacy: torus2d is two-dimensional, use fourier");
  Real rho{0.0};
  auto sp = circle_spectrum<Real>(cfg, sys, kind, rho);
  // Drop the mean so g is the periodic part.
  sp.b[0] = 0.0;
  const std::size_t M = cfg.points;
  const auto g = reconstruct_conjugacy(sp, M);
  ResultTable t;
  t.columns = {"theta", "g"};
  t.scalars.push_back({"rho1", fmt(frac(rho))});
  for (std::size_t m = 0; m < M; ++m) {
    t.add_row({format_real(static_cast<double>(m) / static_cast<double>(M)), fmt(g[m])});
  }
  return t;
}

template <RealScalar Real>
ResultTable cmd_lyapunov(const RunConfig& cfg, SystemKind sys, Kernel kind) {
  const auto v = ic_values<Real>(cfg);
  LyapunovResult<Real> res;
  if (sys == SystemKind::standard_map) {
    StandardMap<Real> m;
    Vec<Real, 2> s{wrap(v[0], two_pi<Real>()), wrap(v[1], two_pi<Real>())};
    for (long long i = 0; i < cfg.burn_in; ++i) s = m.step(s);
    res = lyapunov_exponents<Real>(m, s, cfg.n, kind);
  } else if (sys == SystemKind::torus2d_map) {
    TorusMap<Real> m;
    Vec<Real, 2> s{frac(v[0]), frac(v[1])};
    for (long long i = 0; i < cfg.burn_in; ++i) s = m.step(s);
    res = lyapunov_exponents<Real>(m, s, cfg.n, kind);
  } else {
    throw ConfigError("lyapunov: supported for the standard and torus2d maps");
  }
  ResultTable t;
  t.columns = {"index", "exponent"};
  Real sum{0.0};
  for (std::size_t i = 0; i < res.exponents.size(); ++i) {
    t.add_row({std::to_string(i + 1), fmt(res.exponents[i])});
    t.scalars.push_back({"lambda" + std::to_string(i + 1), fmt(res.exponents[i])});
    sum += res.exponents[i];
  }
  t.scalars.push_back({"sum", fmt(sum)});
  return t;
}

template <RealScalar Real>
ResultTable cmd_convergence(const RunConfig& cfg, SystemKind sys) {
  auto grid = cfg.n_grid;
  std::sort(grid.begin(), grid.end());
  const std::size_t n_star = 4 * grid.back();
  std::function<Real(Kernel, std::size_t)> quantity;
  std::vector<Real> inc;
  if (sys == SystemKind::torus2d_map) {
    const auto c = TorusMapCoefficients<Real>::defaults();
    const auto ic = torus_start<Real>(cfg);
    const auto burn = static_cast<std::size_t>(cfg.burn_in);
    quantity = [c, ic, burn](Kernel k, std::size_t N) { return torus_rotation<Real>(c, ic, N, k, burn).rho[0]; };
  } else {
    // One orbit of length N*; every (kernel, N) row averages a prefix of the
    // same lifted sequence.
    const auto pts = circle_points<Real>(cfg, sys, n_star + 1);
    const auto cr = circle_rotation<Real>(pts, Kernel::exp);
    inc.resize(n_star);
    for (std::size_t n = 0; n < n_star; ++n) inc[n] = cr.lifted[n + 1] - cr.lifted[n];
    quantity = [&inc](Kernel k, std::size_t N) {
      StreamingAverage<Real> avg(k, N, 1);
      for (std::size_t n = 0; n < N; ++n) avg.push_scalar(inc[n]);
      return frac(avg.value()[0]);
    };
  }
  const auto table = convergence_study<Real>(quantity, std::vector<Kernel>(std::begin(kAllKernels), std::end(kAllKernels)), grid, n_star);
  ResultTable t;
  t.columns = {"kernel", "N", "value", "error"};
  t.group_column = "kernel";
  t.scalars.push_back({"reference", fmt(table.reference)});
  t.scalars.push_back({"n_star", fmt_int(table.n_star)});
  for (Kernel k : kAllKernels) {
    const std::string name(kernel_name(k));
    try {
      const auto f = fit_slope(table, k);
      t.scalars.push_back({"slope_" + name, format_real(f.slope)});
    } catch (const FitError& e) {
      t.scalars.push_back({"slope_" + name, e.what()});
    }
  }
  for (const auto& r : table.rows) {
    t.add_row({std::string(kernel_name(r.kernel)), fmt_int(r.N), fmt(r.value), fmt(r.error)});
  }
  return t;
}

template <RealScalar Real>
ResultTable cmd_section(const RunConfig& cfg, SystemKind sys) {
  if (sys != SystemKind::three_body_flow) throw ConfigError("section: only the three_body system has a section");
  const Real mu = param<Real>(cfg, "mu");
  const auto ic = three_body_ic<Real>(cfg);
  const Real H0 = hamiltonian(ic, mu);
  const auto ev = three_body_sections<Real>(ic, mu, cfg.n, integrator<Real>(cfg), parse_real<Real>(cfg.tol));
  ResultTable t;
  t.columns = {"n", "t", "q1", "q2", "p1", "p2", "residual", "H_drift"};
  t.scalars.push_back({"H0", fmt(H0)});
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const auto& s = ev[i].state;
    t.add_row({fmt_int(i), fmt(ev[i].time), fmt(s[0]), fmt(s[1]), fmt(s[2]), fmt(s[3]), fmt(ev[i].residual),
               fmt(hamiltonian(s, mu) - H0)});
  }
  return t;
}

template <RealScalar Real>
ResultTable dispatch(const RunConfig& cfg) {
  const SystemKind sys = parse_system(cfg.system);
  const Kernel kind = parse_kernel(cfg.kernel);
  const std::string& c = cfg.command;
  if (c == "orbit") return cmd_orbit<Real>(cfg, sys);
  if (c == "rotnum") return cmd_rotnum<Real>(cfg, sys, kind);
  if (c == "fourier") return cmd_fourier<Real>(cfg, sys, kind);
  if (c == "conjugacy") return cmd_conjugacy<Real>(cfg, sys, kind);
  if (c == "lyapunov") return cmd_lyapunov<Real>(cfg, sys, kind);
  if (c == "convergence") return cmd_convergence<Real>(cfg, sys);
  if (c == "section") return cmd_section<Real>(cfg, sys);
  throw ConfigError("unknown command '" + c + "'");
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"orbit",    "rotnum",      "fourier", "conjugacy",
                                                 "lyapunov", "convergence", "section"};
  return names;
}

std::string command_columns(const std::string& command) {
  const auto it = column_docs().find(command);
  return it == column_docs().end() ? std::string{} : it->second;
}

RunConfig resolve_defaults(RunConfig cfg) {
  if (std::find(command_names().begin(), command_names().end(), cfg.command) == command_names().end()) {
    throw ConfigError("unknown command '" + cfg.command + "'");
  }
  if (cfg.system.empty()) cfg.system = cfg.command == "section" ? "three_body" : "torus2d";
  const SystemKind sys = parse_system(cfg.system);
  cfg.system = std::string(system_name(sys));
  parse_kernel(cfg.kernel);
  parse_precision(cfg.precision);
  parse_format(cfg.format);

  if (cfg.ic.empty()) {
    switch (sys) {
      case SystemKind::standard_map: cfg.ic = {"-0.607", "2.01"}; break;
      case SystemKind::torus2d_map: cfg.ic = {"0", "0"}; break;
      case SystemKind::vdp_flow: cfg.ic = {"1", "0"}; break;
      case SystemKind::three_body_flow: cfg.ic = {"0.1", "0"}; break;
    }
  }
  if (cfg.ic.size() != 2 && !(sys == SystemKind::three_body_flow && cfg.ic.size() == 4)) {
    throw ConfigError("--ic for " + cfg.system + " takes " +
                      (sys == SystemKind::three_body_flow ? std::string("q1,p1 or q1,q2,p1,p2") : std::string("2 values")));
  }
  for (const auto& s : cfg.ic) parse_real<double>(s);

  if (sys == SystemKind::vdp_flow && !cfg.params.count("F")) cfg.params["F"] = "5";
  if (sys == SystemKind::three_body_flow) {
    if (!cfg.params.count("mu")) cfg.params["mu"] = "0.1";
    if (!cfg.params.count("H") && cfg.ic.size() == 2) cfg.params["H"] = "-2.63";
  }
  for (const auto& [k, v] : cfg.params) parse_real<double>(v);
  const bool flow = !is_discrete(sys);
  if (flow) {
    if (cfg.step.empty()) cfg.step = "1e-3";
    if (cfg.tol.empty()) cfg.tol = "1e-13";
    parse_real<double>(cfg.step);
    parse_real<double>(cfg.tol);
  }
  if (cfg.burn_in < 0) cfg.burn_in = sys == SystemKind::vdp_flow ? 1000 : 0;

  if (cfg.n == 0) cfg.n = cfg.command == "orbit" || cfg.command == "section" ? 10000 : 100000;
  if (cfg.command == "fourier" || cfg.command == "conjugacy") {
    if (cfg.kmax <= 0) cfg.kmax = sys == SystemKind::torus2d_map ? 32 : 200;
    if (sys == SystemKind::torus2d_map && cfg.jmax <= 0) cfg.jmax = cfg.kmax;
    if (2 * static_cast<std::size_t>(cfg.kmax) >= cfg.n) throw ConfigError("--kmax must be below N/2");
  }
  if (cfg.command == "conjugacy" && cfg.points == 0) cfg.points = 512;
  if (cfg.command == "convergence") {
    if (cfg.n_grid.empty()) cfg.n_grid = power_of_two_grid(10, 20);
    for (auto N : cfg.n_grid) {
      if (N < 16) throw ConfigError("--n-grid entries must be at least 16");
    }
  }
  if ((cfg.command == "rotnum" || cfg.command == "lyapunov") && cfg.n < 2) throw ConfigError("--n must be at least 2");
  return cfg;
}

ResultTable run_command(const RunConfig& cfg) {
  return parse_precision(cfg.precision) == Precision::dd ? dispatch<DD>(cfg) : dispatch<double>(cfg);
}

}  // namespace qpavg

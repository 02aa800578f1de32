#include <spdlog/spdlog.h>

#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include "output.hpp"
#include "yp/cli.hpp"
#include "yp/error.hpp"
#include "yp/frac_calc.hpp"
#include "yp/holder_paths.hpp"
#include "yp/ladder.hpp"
#include "yp/lamperti.hpp"
#include "yp/log.hpp"
#include "yp/path_io.hpp"
#include "yp/riemann.hpp"

namespace yp::cli {

namespace {

struct Context {
  const ExperimentConfig& e;
  std::optional<FbmGenerator> fbm;
  std::optional<GridPath> file_driver;

  explicit Context(const ExperimentConfig& cfg) : e(cfg) {
    const auto& d = e.driver;
    if (d.kind == DriverSpec::Kind::Fbm) {
      fbm.emplace(d.hurst, d.n_points, d.horizon, d.method);
    } else if (d.kind == DriverSpec::Kind::File) {
      std::ifstream in(d.path, std::ios::binary);
      if (!in) throw ConfigError("cannot open driver_path '" + d.path + "'");
      const bool bin = d.path.size() >= 5 && d.path.substr(d.path.size() - 5) == ".ypgp";
      try {
        file_driver.emplace(bin ? read_binary(in) : read_csv(in));
      } catch (const std::exception& ex) {
        throw ConfigError("driver_path '" + d.path + "': " + ex.what());
      }
    }
  }

  GridPath driver(std::uint64_t seed) const {
    const auto& d = e.driver;
    switch (d.kind) {
      case DriverSpec::Kind::Fbm:
        return fbm->sample(seed, d.dim);
      case DriverSpec::Kind::Linear: {
        const double s = d.slope;
        return GridPath::from_function(d.horizon, d.n_points, [s](double t) { return s * t; });
      }
      case DriverSpec::Kind::File:
        break;
    }
    return *file_driver;
  }

  Provenance provenance(const std::string& seed) const {
    return {e.command, e.config_hash, seed, e.parameters, {}};
  }
  Provenance provenance(std::uint64_t seed) const { return provenance(std::to_string(seed)); }
  Provenance aggregate() const {
    std::string s;
    for (std::size_t i = 0; i < e.seeds.size(); ++i) s += (i ? "," : "") + std::to_string(e.seeds[i]);
    return provenance(s);
  }

  std::string write(const std::string& name, const std::string& contents) const {
    const auto path = write_output(e.out_dir, name, contents);
    spdlog::info("wrote {}", path);
    return path;
  }
  std::string ext() const { return e.format; }

  void write_table(const std::string& stem, const Provenance& p, const Table& t) const {
    write(stem + "." + ext(), e.format == "json" ? table_json(p, t) : table_csv(p, t));
  }
  std::string write_path(const std::string& stem, const Provenance& p, const GridPath& y,
                         const std::vector<Column>& cols, bool force_csv = false) const {
    if (force_csv || e.format == "csv") return write(stem + ".csv", path_csv(p, y, cols));
    return write(stem + ".json", path_json(p, y, cols));
  }
};

std::vector<Column> value_columns(const std::string& prefix, std::size_t dim, const std::string& unit) {
  std::vector<Column> c;
  for (std::size_t k = 0; k < dim; ++k) c.push_back({prefix + std::to_string(k + 1), unit + " component " + std::to_string(k + 1)});
  return c;
}

// Runs fn over the seeds with --jobs workers. Each call may write its own
// files; the returned rows come back in seed order. The first failure (in
// seed order) is rethrown after all seeds finish.
template <class R>
std::vector<R> over_seeds(const ExperimentConfig& e, const std::function<R(std::uint64_t)>& fn) {
  const auto n = static_cast<long long>(e.seeds.size());
  std::vector<std::optional<R>> out(e.seeds.size());
  std::vector<std::exception_ptr> err(e.seeds.size());
#pragma omp parallel for num_threads(int(e.jobs)) schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    try {
      out[std::size_t(i)] = fn(e.seeds[std::size_t(i)]);
    } catch (...) {
      err[std::size_t(i)] = std::current_exception();
    }
  }
  std::vector<R> rows;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (err[i]) std::rethrow_exception(err[i]);
    rows.push_back(std::move(*out[i]));
  }
  return rows;
}

double max_abs(const GridPath& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) m = std::max(m, y.norm_at(i));
  return m;
}

std::string window_text(std::pair<double, double> w) {
  return "(" + format_double(w.first) + ", " + format_double(w.second) + ")";
}

// ---------------------------------------------------------------- fbm-gen

int cmd_fbm_gen(const Context& ctx) {
  const auto& e = ctx.e;
  over_seeds<int>(e, [&](std::uint64_t seed) {
    const auto x = ctx.driver(seed);
    const auto p = ctx.provenance(seed);
    const std::string stem = "fbm_seed" + std::to_string(seed);
    ctx.write_path(stem, p, x, value_columns("x", x.dim(), "fBm sample,"));
    if (e.binary) {
      std::ostringstream os;
      write_binary(os, x);
      ctx.write(stem + ".ypgp", os.str());
    }
    return 0;
  });
  return kOk;
}

// ---------------------------------------------------------------- lamperti

int cmd_lamperti(const Context& ctx) {
  const auto& e = ctx.e;
  const auto coeff = e.coefficient();
  const auto fc = FracConfig::make(e.gamma, e.kappa, e.eta, e.alpha);
  const double a = e.a[0];
  const auto rows = over_seeds<std::vector<double>>(e, [&](std::uint64_t seed) {
    const auto x = ctx.driver(seed);
    auto cs = solve_certified(x, coeff, a, fc);
    Provenance p = ctx.provenance(seed);
    p.results.emplace_back("certificate", cs.certificate.pass ? "pass" : "fail");
    ctx.write_path("lamperti_seed" + std::to_string(seed), p, cs.y, {{"y", "solution y_t = φ^{-1}(x_t + φ(a))"}});
    double residual = std::nan("");
    if (e.residual && cs.certificate.pass) residual = fixed_point_residual(cs.y, x, coeff, fc, a);
    if (!cs.certificate.pass)
      spdlog::error("seed {}: certificate failed, ∫|y|^-eta = {} (eta = {})", seed,
                    format_double(cs.certificate.integral_value), format_double(e.eta));
    return std::vector<double>{double(seed), cs.y(cs.y.size() - 1), max_abs(cs.y), cs.certificate.integral_value,
                               cs.certificate.pass ? 1.0 : 0.0, residual};
  });
  Table t{{{"seed", "count: RNG seed of the driver"},
           {"y_T", "solution value at the horizon T"},
           {"max_abs_y", "max_t |y_t| on the grid"},
           {"inv_integral", "∫_0^T |y_s|^{-eta} ds (certificate integral; inf when not integrable)"},
           {"certified", "1 if the integrability certificate passed, else 0"},
           {"residual", "max_t |y_t − a − Λ(y)_t| (nan when skipped)"}},
          rows};
  ctx.write_table("lamperti_summary", ctx.aggregate(), t);
  for (const auto& r : rows)
    if (r[4] == 0.0) return kCertificateFailure;
  return kOk;
}

// ---------------------------------------------------------------- converge

int cmd_converge(const Context& ctx) {
  const auto& e = ctx.e;
  const auto coeff = e.coefficient();
  const double a = e.a[0];
  over_seeds<int>(e, [&](std::uint64_t seed) {
    const auto x = ctx.driver(seed);
    const auto y = solve_lamperti(x, coeff, a);
    const double reference = y(y.size() - 1) - y(0);
    const auto ct = convergence_study(y, x, coeff, e.gamma, e.ns, reference, "lamperti increment y_T − y_0");
    Provenance p = ctx.provenance(seed);
    p.results.emplace_back("reference", format_double(ct.reference));
    p.results.emplace_back("reference_kind", ct.reference_kind);
    p.results.emplace_back("y_holder", format_double(ct.y_holder));
    p.results.emplace_back("seminorm", format_double(ct.seminorm));
    Table t{{{"n", "count: partition nodes on [0,T]"},
             {"mesh", "time: partition cell length T/(n−1)"},
             {"value", "Σ_i mean_i(σ(y))·δx over cell i"},
             {"abs_error", "|value − reference|"},
             {"sup_integrand_err", "max_t |σ(y_t) − z^n_t| on the fine grid"},
             {"lemma27_bound", "N·‖y‖_γ^κ·mesh^{κγ}"}},
            {}};
    for (const auto& r : ct.rows)
      t.rows.push_back({double(r.n), r.mesh, r.value, r.abs_error, r.sup_integrand_err, r.lemma27_bound});
    ctx.write_table("converge_seed" + std::to_string(seed), p, t);
    return 0;
  });
  return kOk;
}

// ---------------------------------------------------------------- solver outputs

std::vector<Coefficient> driver_coefficients(const ExperimentConfig& e, std::size_t d) {
  const auto base = e.coefficient();
  const std::size_t m = base.dim();
  std::vector<Coefficient> cs;
  for (std::size_t j = 0; j < d; ++j) {
    if (m > 1 && base.scalar_profile()) {
      std::vector<double> dir(m, 0.0);
      dir[j % m] = 1.0;
      cs.push_back(base.with_direction(dir));
    } else {
      cs.push_back(base);
    }
  }
  return cs;
}

SolverOptions solver_options(const ExperimentConfig& e) {
  SolverOptions o;
  o.substeps = e.substeps;
  o.absorb_threshold = e.absorb_threshold;
  o.regularize = e.regularize;
  return o;
}

Json solver_json(const Provenance& p, const SolverOutput& out, const GainDiagnostics& g, const std::string& path_file,
                 const BandCheck* band) {
  Json j;
  j["provenance"] = provenance_json(p, {{"lambda", "time: rung start λ_k"},
                                        {"tau", "time: rung switch τ_k (or hitting time at top level)"},
                                        {"q", "dyadic level q_k of the I-band"},
                                        {"gain_slope", "slope of log2 c_k against q_k"},
                                        {"gap_slope_low", "slope of log2 min gap per level against q"},
                                        {"gap_slope_high", "slope of log2 max gap per level against q"}});
  j["case"] = out.solve_case == SolveCase::A ? "A" : "B";
  j["tau"] = out.tau ? Json(*out.tau) : Json(nullptr);
  Json events = Json::array();
  for (const auto& ev : out.events) {
    Json x;
    x["k"] = ev.k;
    x["lambda"] = ev.lambda;
    x["tau"] = ev.tau;
    x["q"] = ev.q;
    x["q_hat"] = ev.q_hat;
    x["lambda_next"] = ev.lambda_next;
    x["complete"] = ev.complete;
    events.push_back(x);
  }
  j["events"] = events;
  Json fits;
  fits["gain_slope"] = g.gain_slope;
  fits["gap_slope_low"] = g.gap_slope_low;
  fits["gap_slope_high"] = g.gap_slope_high;
  fits["residuals"] = {{"gain", g.gain_residual}, {"gap", g.gap_residual}};
  fits["gap_slope"] = g.gap_slope;
  fits["rungs_used"] = g.rungs_used;
  fits["rungs_excluded"] = g.rungs_excluded;
  fits["conclusive"] = g.conclusive;
  fits["eps2_admissible"] = g.eps2_admissible;
  fits["kappa_eps1"] = g.kappa_eps1;
  fits["kappa_minus"] = g.kappa_minus;
  fits["mu"] = g.mu;
  j["fits"] = fits;
  j["min_norm"] = out.min_norm;
  j["absorb_threshold"] = out.absorb_threshold;
  j["substeps"] = out.substeps;
  j["max_level"] = out.max_level;
  j["ladder_truncated"] = out.ladder_truncated;
  if (band) {
    j["band_check"] = {{"ok", band->ok},
                       {"points_checked", band->points_checked},
                       {"first_violation", band->first_violation},
                       {"upper_fraction", band->upper_fraction}};
  }
  j["path"] = path_file;
  return j;
}

int cmd_multidim(const Context& ctx) {
  const auto& e = ctx.e;
  over_seeds<int>(e, [&](std::uint64_t seed) {
    const auto x = ctx.driver(seed);
    const auto out = solve_multidim(x, driver_coefficients(e, x.dim()), e.a, solver_options(e));
    const auto g = gain_diagnostics(out, e.gamma, e.kappa, e.eps1, e.eps2, e.c0);
    const auto p = ctx.provenance(seed);
    const std::string stem = "multidim_seed" + std::to_string(seed);
    ctx.write_path(stem, p, out.y, value_columns("y", out.y.dim(), "solution"), true);
    ctx.write(stem + ".json", dump(solver_json(p, out, g, stem + ".csv", nullptr)));
    return 0;
  });
  return kOk;
}

// ---------------------------------------------------------------- ladder-diag

struct LadderSeed {
  std::uint64_t seed = 0;
  bool case_b = false;
  bool band_ok = false;
  GainDiagnostics diag;
  std::vector<std::vector<double>> rungs;
};

int cmd_ladder(const Context& ctx) {
  const auto& e = ctx.e;
  const auto results = over_seeds<LadderSeed>(e, [&](std::uint64_t seed) {
    const auto x = ctx.driver(seed);
    const auto out = solve_multidim(x, driver_coefficients(e, x.dim()), e.a, solver_options(e));
    const auto g = gain_diagnostics(out, e.gamma, e.kappa, e.eps1, e.eps2, e.c0);
    const auto band = check_band_invariants(out.y, out.events);
    const auto p = ctx.provenance(seed);
    const std::string stem = "ladder_seed" + std::to_string(seed);
    ctx.write_path(stem, p, out.y, {{"y", "solution"}}, true);
    ctx.write(stem + ".json", dump(solver_json(p, out, g, stem + ".csv", &band)));
    LadderSeed r{seed, out.solve_case == SolveCase::B, band.ok, g, {}};
    for (std::size_t i = 0; i < g.rung_q.size(); ++i)
      r.rungs.push_back({double(seed), double(g.rung_q[i]), g.rung_c[i], g.rung_gap[i]});
    return r;
  });

  Table rungs{{{"seed", "count: RNG seed of the driver"},
               {"q", "dyadic level q_k of the rung"},
               {"c", "local Hölder constant max |δy|/|t−s|^γ over lags ≤ c0·2^{-α q_k}"},
               {"gap", "time: λ_{k+1} − λ_k"}},
              {}};
  std::vector<GainDiagnostics> parts;
  std::size_t case_b = 0, band_ok = 0;
  for (const auto& r : results) {
    rungs.rows.insert(rungs.rows.end(), r.rungs.begin(), r.rungs.end());
    parts.push_back(r.diag);
    case_b += r.case_b;
    band_ok += r.band_ok;
  }
  const auto pooled = pool_diagnostics(parts);
  ctx.write_table("ladder_rungs", ctx.aggregate(), rungs);

  Provenance p = ctx.aggregate();
  p.results = {{"solves", std::to_string(results.size())},
               {"case_b", std::to_string(case_b)},
               {"band_ok", std::to_string(band_ok)},
               {"conclusive", pooled.conclusive ? "true" : "false"}};
  Table s{{{"gain_slope", "pooled slope of log2 c_k against q_k (expected ≈ −kappa)"},
           {"gain_residual", "rms residual of the gain fit"},
           {"gap_slope", "pooled slope of log2 gap against q_k"},
           {"gap_slope_low", "slope of log2 per-level min gap against q"},
           {"gap_slope_high", "slope of log2 per-level max gap against q"},
           {"alpha", "(1−kappa)/gamma"},
           {"rungs_used", "count: rungs entering the fits"},
           {"rungs_excluded", "count: rungs with fewer than 8 grid points"}},
          {{pooled.gain_slope, pooled.gain_residual, pooled.gap_slope, pooled.gap_slope_low, pooled.gap_slope_high,
            (1.0 - e.kappa) / e.gamma, double(pooled.rungs_used), double(pooled.rungs_excluded)}}};
  ctx.write_table("ladder_summary", p, s);
  return kOk;
}

// ---------------------------------------------------------------- roughness

int cmd_roughness(const Context& ctx) {
  const auto& e = ctx.e;
  over_seeds<int>(e, [&](std::uint64_t seed) {
    const auto x = ctx.driver(seed);
    std::vector<double> scales = e.scales;
    if (scales.empty())
      for (int k = 1; k <= 6; ++k) scales.push_back(std::ldexp(x.horizon(), -k));
    const auto r = roughness_modulus(x, e.gamma_hat, scales);
    const auto h = holder_norm(x, e.gamma);
    Provenance p = ctx.provenance(seed);
    p.results = {{"modulus", format_double(r.modulus)}, {"holder_norm", format_double(h.norm)}};
    Table t{{{"scale", "time: scale ε"}, {"modulus", "roughness modulus at scale ε for exponent gamma_hat"}}, {}};
    for (std::size_t i = 0; i < r.scales_checked.size(); ++i)
      t.rows.push_back({r.scales_checked[i], r.modulus_per_scale[i]});
    ctx.write_table("roughness_seed" + std::to_string(seed), p, t);
    return 0;
  });
  return kOk;
}

// ---------------------------------------------------------------- certify

int cmd_certify(const Context& ctx) {
  const auto& e = ctx.e;
  const auto coeff = e.coefficient();
  const auto window = FracConfig::eta_window(e.gamma, e.kappa);
  const auto rows = over_seeds<std::vector<double>>(e, [&](std::uint64_t seed) {
    const auto y = solve_lamperti(ctx.driver(seed), coeff, e.a[0]);
    const auto c = certify(y, e.gamma, e.kappa, e.eta);
    return std::vector<double>{double(seed), c.eta, c.admissible_eta_window.first, c.admissible_eta_window.second,
                               c.integral_value, c.eta_in_window ? 1.0 : 0.0, c.pass ? 1.0 : 0.0};
  });
  Table t{{{"seed", "count: RNG seed of the driver"},
           {"eta", "integrability exponent η"},
           {"eta_low", "lower end (1−γ(1+κ))/γ of the admissible η window"},
           {"eta_high", "upper end 1−κ of the admissible η window"},
           {"inv_integral", "∫_0^T |y_s|^{-η} ds (inf when not integrable)"},
           {"eta_in_window", "1 if η lies in the window, else 0"},
           {"pass", "1 if the certificate passed, else 0"}},
          rows};
  ctx.write_table("certify", ctx.aggregate(), t);
  const bool in_window = e.eta > window.first && e.eta < window.second;
  if (!in_window) {
    spdlog::error("certificate failed: eta = {} lies outside the admissible window {} for gamma = {}, kappa = {}",
                  format_double(e.eta), window_text(window), format_double(e.gamma), format_double(e.kappa));
    return kCertificateFailure;
  }
  for (const auto& r : rows)
    if (r[6] == 0.0) {
      spdlog::error("certificate failed on seed {}: ∫|y|^-eta is not finite", std::uint64_t(r[0]));
      return kCertificateFailure;
    }
  return kOk;
}

int dispatch(const ExperimentConfig& e) {
  const Context ctx(e);
  if (e.command == "fbm-gen") return cmd_fbm_gen(ctx);
  if (e.command == "lamperti") return cmd_lamperti(ctx);
  if (e.command == "converge") return cmd_converge(ctx);
  if (e.command == "multidim") return cmd_multidim(ctx);
  if (e.command == "ladder-diag") return cmd_ladder(ctx);
  if (e.command == "roughness") return cmd_roughness(ctx);
  return cmd_certify(ctx);
}

}  // namespace

int run(const CommandLine& cl) {
  set_warning_sink([](const std::string& m) { spdlog::warn("{}", m); });
  try {
    const auto e = resolve(cl);
    return dispatch(e);
  } catch (const ConfigError& ex) {
    spdlog::error("config error: {}", ex.what());
    return kConfigError;
  } catch (const CertificateError& ex) {
    spdlog::error("certificate failure: {}", ex.what());
    return kCertificateFailure;
  } catch (const DivergenceError& ex) {
    spdlog::error("numerical divergence: {}", ex.what());
    return kDivergence;
  } catch (const ResolutionError& ex) {
    spdlog::error("numerical divergence (grid too coarse): {}", ex.what());
    return kDivergence;
  } catch (const std::invalid_argument& ex) {
    spdlog::error("config error: {}", ex.what());
    return kConfigError;
  } catch (const std::exception& ex) {
    spdlog::error("error: {}", ex.what());
    return kFailure;
  }
}

}  // namespace yp::cli

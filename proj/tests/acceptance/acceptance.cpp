// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "yp/coefficients.hpp"
#include "yp/frac_calc.hpp"
#include "yp/holder_paths.hpp"
#include "yp/ladder.hpp"
#include "yp/lamperti.hpp"
#include "yp/riemann.hpp"
#include "yp/rng.hpp"

using namespace yp;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      else detail.str("");
      detail << "failed: " << what;
    }
    pass = pass && ok;
  }
};

double max_abs(const GridPath& y, std::size_t end) {
  double m = 0.0;
  for (std::size_t i = 0; i < end; ++i) m = std::max(m, y.norm_at(i));
  return m;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(3);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

// ----------------------------------------------------------------------------

void interpolation_fuzz(Verdict& v) {
  Rng rng(2024);
  std::size_t draws = 0, violations = 0;
  for (double kappa : {0.3, 0.5, 0.7})
    for (std::size_t m : {1u, 3u}) {
      const auto c = Coefficient::power(1.0, kappa, m);
      std::vector<double> x1(m), x2(m);
      for (int i = 0; i < 1000000; ++i) {
        // Magnitudes spread over six decades so that draws near the singular
        // point are as common as large ones.
        const double r1 = std::pow(10.0, rng.uniform(-4.0, 2.0)), r2 = std::pow(10.0, rng.uniform(-4.0, 2.0));
        for (auto& u : x1) u = rng.normal();
        for (auto& u : x2) u = rng.normal();
        const double n1 = std::sqrt(std::inner_product(x1.begin(), x1.end(), x1.begin(), 0.0));
        const double n2 = std::sqrt(std::inner_product(x2.begin(), x2.end(), x2.begin(), 0.0));
        for (auto& u : x1) u *= r1 / n1;
        for (auto& u : x2) u *= r2 / n2;
        const double eta = rng.uniform(0.0, 1.0 - kappa);
        const auto b = lemma23_bound(c, x1, x2, eta);
        ++draws;
        violations += !(b.lhs <= b.rhs);
      }
    }
  v.detail << draws << " draws, " << violations << " violations";
  v.require(violations == 0, std::to_string(violations) + " draws with lhs > rhs");
}

void fractional_inversion(Verdict& v) {
  const std::vector<std::pair<std::string, std::function<double(double)>>> fs = {
      {"t", [](double t) { return t; }},
      {"t^2-t/2", [](double t) { return t * t - 0.5 * t; }},
      {"t^3", [](double t) { return t * t * t; }},
      {"sin(3t)", [](double t) { return std::sin(3.0 * t); }},
  };
  double worst_order = std::numeric_limits<double>::infinity(), worst_err = 0.0;
  for (const auto& [name, f] : fs)
    for (double alpha : {0.2, 0.5, 0.8}) {
      std::vector<double> errs;
      for (std::size_t n : {1024u, 2048u, 4096u, 8192u}) {
        FracFunction fn{0.0, 1.0, std::vector<double>(n + 1)};
        for (std::size_t i = 0; i <= n; ++i) fn.values[i] = f(fn.time(i));
        const auto back = frac_derivative_left(frac_integral(fn, alpha, Side::Left), alpha);
        double e = 0.0;
        for (std::size_t i = 0; i <= n; ++i) e = std::max(e, std::abs(back.values[i] - fn.values[i]));
        errs.push_back(e);
      }
      const double order = oracle::observed_order(errs);
      worst_order = std::min(worst_order, order);
      worst_err = std::max(worst_err, errs.back());
      std::ostringstream tag;
      tag << name << " alpha=" << alpha;
      v.require(order >= 1.0, tag.str() + " order " + std::to_string(order));
      v.require(errs.back() <= 1e-4, tag.str() + " error " + std::to_string(errs.back()));
    }
  if (v.pass) v.detail << "min order " << worst_order << ", max error at n=8192 " << worst_err;
}

void young_consistency(Verdict& v) {
  const std::size_t n = 8193;
  const FbmGenerator gen(0.8, n, 1.0);
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = gen.sample(2 * seed), g = gen.sample(2 * seed + 1);
    std::vector<double> diffs;
    for (std::size_t stride : {4u, 2u, 1u}) {
      const auto fs = f.subsample(stride), gs = g.subsample(stride);
      const double young = young_integral_frac(restrict_to(fs, 0.0, 1.0), restrict_to(gs, 0.0, 1.0), 0.5);
      const double riemann = riemann_sum(fs, gs, Partition::uniform(0.0, 1.0, fs.size())).value;
      diffs.push_back(std::abs(young - riemann));
    }
    worst = std::max(worst, diffs.back());
    const std::string tag = "seed pair " + std::to_string(seed) + " diffs " + join(diffs);
    v.require(diffs.back() <= 1e-3, tag);
    v.require(strictly_decreasing(diffs), tag + " not decreasing");
  }
  if (v.pass) v.detail << "max |difference| at n=2^13: " << worst;
}

// H = 0.6, κ = 0.5, a = 0, η = 0.3; γ = 0.58 keeps η and α inside their windows.
constexpr double kH = 0.6, kGamma = 0.58, kKappa = 0.5, kEta = 0.3;

void lamperti_fixed_point(Verdict& v) {
  // For κ = 1/2 the trapezoid form of Λ is exact on cells where x keeps its
  // sign, so a single seed's residual depends on which crossings a grid
  // resolves; the refinement trend is taken over the certified ensemble.
  const auto coeff = Coefficient::power(1.0, kKappa);
  const auto cfg = FracConfig::make(kGamma, kKappa, kEta);
  const FbmGenerator gen(kH, 8193, 1.0);
  const std::vector<std::size_t> strides = {4, 2, 1};
  std::vector<double> mse(strides.size(), 0.0);
  int passed = 0, monotone = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto x = gen.sample(seed);
    const auto sol = solve_certified(x, coeff, 0.0, cfg);
    if (!sol.certificate.pass) continue;
    ++passed;
    std::vector<double> res;
    for (std::size_t i = 0; i < strides.size(); ++i) {
      const auto xs = x.subsample(strides[i]);
      res.push_back(fixed_point_residual(solve_lamperti(xs, coeff, 0.0), xs, coeff, cfg, 0.0));
      mse[i] += res.back() * res.back();
    }
    monotone += strictly_decreasing(res);
    const double scale = 1.0 + max_abs(sol.y, sol.y.size());
    worst = std::max(worst, res.back() / scale);
    v.require(res.back() <= 5e-3 * scale, "seed " + std::to_string(seed) + " residuals " + join(res));
  }
  std::vector<double> rms;
  for (double m : mse) rms.push_back(std::sqrt(m / std::max(passed, 1)));
  v.require(passed >= 19, "certificate passed on " + std::to_string(passed) + "/20 seeds");
  v.require(strictly_decreasing(rms), "RMS residual over seeds not decreasing: " + join(rms));
  if (v.pass)
    v.detail << passed << "/20 certified, max residual/(1+max|y|) " << worst << ", RMS residual n=2^11..2^13 "
             << join(rms) << " (" << monotone << " seeds individually monotone)";
}

void riemann_convergence(Verdict& v) {
  const auto coeff = Coefficient::power(1.0, kKappa);
  const std::vector<std::size_t> ns = {1025, 2049, 4097, 8193, 16385};
  const FbmGenerator gen(kH, 8 * 16384 + 1, 1.0);
  std::vector<double> mse(ns.size(), 0.0);
  std::size_t rows = 0, bound_ok = 0, seeds = 20;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    const auto x = gen.sample(seed);
    const auto y = solve_lamperti(x, coeff, 0.0);
    const auto t = convergence_study(y, x, coeff, kGamma, ns, y(y.size() - 1) - y(0), "lamperti increment");
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      mse[i] += t.rows[i].abs_error * t.rows[i].abs_error / double(seeds);
      ++rows;
      bound_ok += t.rows[i].sup_integrand_err <= t.rows[i].lemma27_bound;
    }
  }
  std::vector<double> rms;
  for (double m : mse) rms.push_back(std::sqrt(m));
  v.require(bound_ok == rows, "sup-integrand bound held in " + std::to_string(bound_ok) + "/" + std::to_string(rows) + " rows");
  v.require(strictly_decreasing(rms), "RMS error over seeds not decreasing: " + join(rms));
  if (v.pass) v.detail << "RMS error n=2^10..2^14: " << join(rms) << "; bound held in " << rows << " rows";
}

void zero_solution(Verdict& v) {
  const auto coeff = Coefficient::power(1.0, kKappa);
  const auto cfg = FracConfig::make(kGamma, kKappa, kEta);
  const std::vector<double> zero{0.0};
  const auto y = GridPath::constant(1.0, 1025, zero);
  const auto x = generate_fbm({kH, 1, 3}, 1025, 1.0);
  const auto lam = lambda_integral(y, x, coeff, cfg);
  bool exact = true;
  for (std::size_t i = 0; i < lam.size(); ++i) exact = exact && lam(i) == 0.0;
  v.require(exact, "Λ(0) is not identically zero");
  const double res = fixed_point_residual(y, x, coeff, cfg, 0.0);
  v.require(res == 0.0, "residual " + std::to_string(res));
  if (v.pass) v.detail << "Λ(0) ≡ 0 and residual 0";
}

void ladder_diagnostics(Verdict& v) {
  const double gamma = 0.6, kappa = 0.5, a = 0.05;
  const auto coeff = Coefficient::power(1.0, kappa);
  const FbmGenerator gen(0.65, 16385, 1.0);
  std::vector<GainDiagnostics> parts;
  std::size_t absorbed = 0, band_failures = 0;
  std::uint64_t seed = 0;
  std::string first_violation;
  for (; absorbed < 50 && seed < 5000; ++seed) {
    const auto out = solve_multidim(gen.sample(seed), {coeff}, {a});
    if (out.solve_case != SolveCase::B) continue;
    ++absorbed;
    const auto band = check_band_invariants(out.y, out.events);
    if (!band.ok) {
      ++band_failures;
      if (first_violation.empty()) first_violation = "seed " + std::to_string(seed) + ": " + band.first_violation;
    }
    parts.push_back(gain_diagnostics(out, gamma, kappa, (0.65 - gamma) / 2.0, 0.05));
  }
  const auto g = pool_diagnostics(parts);
  v.require(absorbed >= 50, "only " + std::to_string(absorbed) + " absorbed solves");
  v.require(band_failures == 0, std::to_string(band_failures) + " ladders break the bands (" + first_violation + ")");
  v.require(g.conclusive, "pooled fit inconclusive");
  v.require(g.gain_slope >= -kappa - 0.15 && g.gain_slope <= -kappa + 0.15,
            "gain slope " + std::to_string(g.gain_slope));
  v.require(g.gap_slope >= -g.alpha - 0.2, "gap slope " + std::to_string(g.gap_slope));
  v.detail << (v.pass ? "" : "; ") << absorbed << " absorbed of " << seed << " seeds, " << g.rungs_used
           << " rungs, gain slope " << g.gain_slope << ", gap slope " << g.gap_slope << " (alpha " << g.alpha << ")";
}

void cross_construction(Verdict& v) {
  const auto coeff = Coefficient::power(1.0, kKappa);
  const double a = 0.3;
  const FbmGenerator gen(kH, 16385, 1.0);
  SolverOptions opt;
  opt.substeps = 16;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto x = gen.sample(seed);
    const auto exact = solve_lamperti(x, coeff, a);
    const auto out = solve_multidim(x, {coeff}, {a}, opt);
    // Agreement on [0, τ): after absorption the constructions differ by design.
    const std::size_t end = out.tau_index.value_or(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < end; ++i) d = std::max(d, std::abs(out.y(i) - exact(i)));
    const double rel = d / (1.0 + max_abs(exact, end));
    worst = std::max(worst, rel);
    v.require(rel <= 1e-2, "seed " + std::to_string(seed) + " relative sup-difference " + std::to_string(rel));
  }
  if (v.pass) v.detail << "max sup-difference/(1+max|y|) " << worst;
}

void tau_aware_sums(Verdict& v) {
  // The partition's base nodes are the solve grid: in the super-Young regime
  // a coarser base leaves a Riemann error far above ε. The Young value is
  // y_τ − a = −a.
  const double gamma = 0.6, eps = 1e-3, a = 0.05;
  const auto coeff = Coefficient::power(1.0, kKappa);
  const FbmGenerator gen(0.65, 16385, 1.0);
  std::size_t checked = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; checked < 5 && seed < 1000; ++seed) {
    const auto x = gen.sample(seed);
    const auto out = solve_multidim(x, {coeff}, {a});
    if (out.solve_case != SolveCase::B) continue;
    ++checked;
    const auto sig = sigma_path(out.y, coeff);
    const double fine = riemann_sum(sig, x, Partition::uniform(0.0, 1.0, x.size())).value;
    const double yh = holder_norm(out.y, gamma).norm;
    const auto pi = tau_aware_partition(0.0, 1.0, *out.tau, eps, gamma, yh, x.size());
    pi.validate();
    const double sum = riemann_sum(sig, x, pi).value;
    const double diff = std::max(std::abs(sum - fine), std::abs(sum + a));
    worst = std::max(worst, diff);
    v.require(diff <= eps, "seed " + std::to_string(seed) + " |difference| " + std::to_string(diff));
  }
  v.require(checked == 5, "only " + std::to_string(checked) + " absorbed solves");
  if (v.pass) v.detail << checked << " absorbed solves, max |sum − integral| " << worst;
}

void fbm_generator(Verdict& v) {
  const std::uint64_t seeds = 10000;
  std::size_t checks = 0;
  for (auto [method, n] : {std::pair{FbmMethod::Cholesky, std::size_t(1025)}, std::pair{FbmMethod::Circulant, std::size_t(4097)}})
    for (double H : {0.3, 0.65}) {
      const FbmGenerator gen(H, n, 1.0, method);
      const std::size_t last = n - 1;
      const std::vector<std::pair<std::size_t, std::size_t>> pairs = {
          {last / 2, last}, {last / 8, last / 4}, {last, last}, {1, last}, {last / 3, 2 * last / 3}};
      const std::vector<std::size_t> lags = {1, 16, last / 4};
      std::vector<std::vector<double>> prod(pairs.size()), inc(lags.size());
      for (std::uint64_t s = 0; s < seeds; ++s) {
        const auto x = gen.sample(s);
        for (std::size_t p = 0; p < pairs.size(); ++p) prod[p].push_back(x(pairs[p].first) * x(pairs[p].second));
        // Increment variance from one window per lag position spread over the grid.
        for (std::size_t l = 0; l < lags.size(); ++l) {
          const std::size_t start = (s * 7919) % (n - lags[l]);
          const double d = x(start + lags[l]) - x(start);
          inc[l].push_back(d * d);
        }
      }
      const std::string tag = std::string(method == FbmMethod::Cholesky ? "cholesky" : "circulant") +
                              " H=" + std::to_string(H).substr(0, 4);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const double s = double(pairs[p].first) / double(last), t = double(pairs[p].second) / double(last);
        const auto est = oracle::mean_estimate(prod[p]);
        const double z = (est.mean - oracle::fbm_covariance(H, s, t)) / est.stderr_;
        ++checks;
        v.require(std::abs(z) <= 4.0, tag + " covariance z=" + std::to_string(z));
      }
      for (std::size_t l = 0; l < lags.size(); ++l) {
        const auto est = oracle::mean_estimate(inc[l]);
        const double z = (est.mean - std::pow(double(lags[l]) / double(last), 2.0 * H)) / est.stderr_;
        ++checks;
        v.require(std::abs(z) <= 4.0, tag + " increment variance z=" + std::to_string(z));
      }
    }
  if (v.pass) v.detail << checks << " moment checks within 4 standard errors over " << seeds << " seeds";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, void (*)(Verdict&)>> criteria = {
      {"interpolation inequality fuzz", interpolation_fuzz},
      {"fractional inversion", fractional_inversion},
      {"Young consistency", young_consistency},
      {"Lamperti fixed point", lamperti_fixed_point},
      {"Riemann-sum convergence", riemann_convergence},
      {"zero solution", zero_solution},
      {"ladder diagnostics", ladder_diagnostics},
      {"cross-construction agreement", cross_construction},
      {"tau-aware Riemann sums", tau_aware_sums},
      {"fBm generator moments", fbm_generator},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& ex) {
      v.require(false, std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !v.pass;
    std::printf("%s %2zu %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "yp/holder_paths.hpp"
#include "yp/ladder.hpp"
#include "yp/stats.hpp"

namespace yp {

namespace {

constexpr std::size_t kMinRungPoints = 8;
constexpr std::size_t kMinRungs = 4;

void fit_rungs(GainDiagnostics& g) {
  g.gain_slope = g.gain_residual = g.gap_slope = g.gap_residual = 0.0;
  g.gap_slope_low = g.gap_slope_high = 0.0;
  g.min_normalized_gap = std::numeric_limits<double>::infinity();
  g.rungs_used = g.rung_q.size();

  std::vector<double> q, lc, lg;
  std::map<int, std::pair<double, double>> extremes;  // level → (min gap, max gap)
  for (std::size_t i = 0; i < g.rung_q.size(); ++i) {
    q.push_back(double(g.rung_q[i]));
    lc.push_back(std::log2(g.rung_c[i]));
    lg.push_back(std::log2(g.rung_gap[i]));
    g.min_normalized_gap = std::min(g.min_normalized_gap, g.rung_gap[i] * std::exp2(g.alpha * g.rung_q[i]));
    auto [it, fresh] = extremes.try_emplace(g.rung_q[i], g.rung_gap[i], g.rung_gap[i]);
    if (!fresh) {
      it->second.first = std::min(it->second.first, g.rung_gap[i]);
      it->second.second = std::max(it->second.second, g.rung_gap[i]);
    }
  }
  if (g.rung_q.empty()) g.min_normalized_gap = 0.0;
  g.conclusive = g.rungs_used >= kMinRungs && extremes.size() >= 2;
  if (!g.conclusive) return;

  const auto gain = fit_line(q, lc);
  g.gain_slope = gain.slope;
  g.gain_residual = gain.residual_rms;
  const auto gap = fit_line(q, lg);
  g.gap_slope = gap.slope;
  g.gap_residual = gap.residual_rms;
  std::vector<double> levels, lo, hi;
  for (const auto& [level, mm] : extremes) {
    levels.push_back(double(level));
    lo.push_back(std::log2(mm.first));
    hi.push_back(std::log2(mm.second));
  }
  g.gap_slope_low = fit_line(levels, lo).slope;
  g.gap_slope_high = fit_line(levels, hi).slope;
}

GainDiagnostics make_header(double gamma, double kappa, double eps1, double eps2, double c0) {
  GainDiagnostics g;
  g.gamma = gamma;
  g.kappa = kappa;
  g.alpha = (1.0 - kappa) / gamma;
  g.eps1 = eps1;
  g.eps2 = eps2;
  g.c0 = c0;
  g.kappa_eps1 = kappa + eps1 * g.alpha;
  g.kappa_minus = kappa - (1.0 - gamma) * eps2;
  g.mu = gamma * (1.0 + g.kappa_minus / (1.0 - kappa));
  const double bound = std::min({g.alpha, kappa / (1.0 - gamma), (kappa + g.alpha * eps1) / (1.0 + eps1)});
  g.eps2_admissible = eps2 > 0.0 && eps2 < bound;
  return g;
}

}  // namespace

GainDiagnostics gain_diagnostics(const SolverOutput& output, double gamma, double kappa, double eps1, double eps2,
                                 double c0) {
  GainDiagnostics g = make_header(gamma, kappa, eps1, eps2, c0);
  const GridPath& y = output.y;
  const double h = y.step();
  const std::size_t m = y.dim();

  for (const auto& ev : output.events) {
    if (!ev.complete) continue;
    const std::size_t lo = ev.lambda_index, hi = ev.lambda_next_index;  // [lo, hi)
    if (hi - lo < kMinRungPoints) {
      ++g.rungs_excluded;
      continue;
    }
    const double window = c0 * std::exp2(-g.alpha * ev.q);
    const std::size_t max_lag = std::max<std::size_t>(1, std::min(hi - lo - 1, std::size_t(window / h)));
    std::vector<double> inv_pow(max_lag + 1);
    for (std::size_t l = 1; l <= max_lag; ++l) inv_pow[l] = std::pow(double(l) * h, -gamma);
    double c = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t l = 1; l <= max_lag && i + l < hi; ++l) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          const double d = y(i + l, k) - y(i, k);
          d2 += d * d;
        }
        c = std::max(c, std::sqrt(d2) * inv_pow[l]);
      }
    }
    if (!(c > 0.0)) {
      ++g.rungs_excluded;
      continue;
    }
    g.rung_q.push_back(ev.q);
    g.rung_c.push_back(c);
    g.rung_gap.push_back(ev.lambda_next - ev.lambda);
  }
  fit_rungs(g);
  return g;
}

GainDiagnostics pool_diagnostics(const std::vector<GainDiagnostics>& parts) {
  if (parts.empty()) return {};
  const auto& f = parts.front();
  GainDiagnostics g = make_header(f.gamma, f.kappa, f.eps1, f.eps2, f.c0);
  for (const auto& p : parts) {
    g.rung_q.insert(g.rung_q.end(), p.rung_q.begin(), p.rung_q.end());
    g.rung_c.insert(g.rung_c.end(), p.rung_c.begin(), p.rung_c.end());
    g.rung_gap.insert(g.rung_gap.end(), p.rung_gap.begin(), p.rung_gap.end());
    g.rungs_excluded += p.rungs_excluded;
  }
  fit_rungs(g);
  return g;
}

double global_holder_check(const SolverOutput& output, double gamma) { return holder_norm(output.y, gamma).norm; }

}  // namespace yp

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cell_quadrature.hpp"
#include "yp/frac_kernels.hpp"
#include "yp/stats.hpp"

namespace yp::kernels {

namespace {

void check(std::span<const double> f, double h, double alpha) {
  if (f.size() < 2) throw std::invalid_argument("frac kernel: need at least 2 samples");
  if (!(h > 0.0)) throw std::invalid_argument("frac kernel: step must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("frac kernel: order must lie in (0,1)");
}

// (m·h)^p for m = 0..n.
std::vector<double> power_table(std::size_t n, double h, double p) {
  std::vector<double> t(n + 1);
  t[0] = p > 0.0 ? 0.0 : (p == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
  for (std::size_t m = 1; m <= n; ++m) t[m] = std::pow(double(m) * h, p);
  return t;
}

std::vector<double> slopes(std::span<const double> f, double h) {
  std::vector<double> s(f.size() - 1);
  for (std::size_t j = 0; j + 1 < f.size(); ++j) s[j] = (f[j + 1] - f[j]) / h;
  return s;
}

// Coefficients of the ramps (r − t_j)_+ in f − f_0.
std::vector<double> left_ramps(std::span<const double> s) {
  std::vector<double> d(s.size());
  d[0] = s[0];
  for (std::size_t j = 1; j < s.size(); ++j) d[j] = s[j] - s[j - 1];
  return d;
}

// Coefficients c_j, j = 1..N, of the ramps (t_j − r)_+ in g − g_N (index 0 unused).
std::vector<double> right_ramps(std::span<const double> s) {
  const std::size_t N = s.size();
  std::vector<double> c(N + 1, 0.0);
  for (std::size_t j = 1; j < N; ++j) c[j] = s[j] - s[j - 1];
  c[N] = -s[N - 1];
  return c;
}

long long ll(std::size_t v) { return static_cast<long long>(v); }

// Smooth part of D^α f at nodes: Σ_{j<k} Δs_j ((k−j)h)^{1−α} / Γ(2−α).
std::vector<double> left_smooth_nodes(std::span<const double> ramps, const std::vector<double>& p1ma, double alpha) {
  const std::size_t N = ramps.size();
  const double g = std::tgamma(2.0 - alpha);
  std::vector<double> F(N + 1, 0.0);
#pragma omp parallel for schedule(dynamic, 64)
  for (long long kk = 1; kk <= ll(N); ++kk) {
    const std::size_t k = std::size_t(kk);
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) acc += ramps[j] * p1ma[k - j];
    F[k] = acc / g;
  }
  return F;
}

// Per-cell data of D^α f for the product rule, in cell coordinates: the
// coefficients of the near functions, and the remaining (far) part sampled at
// the nodes. Everything the G side needs is folded into P and Q, so that
//   ∫_cell D^α f · D^{1−α} g^{b−} = h²·(Σ_χ g_χ·Q[χ] + Σ_i GF_i·P[i])
// with g_χ the near coefficients of G and GF_i its far part at node i.
struct FCells {
  std::vector<std::array<double, detail::kNodes>> P;
  std::vector<std::array<double, detail::kNearG>> Q;
};

// (m + u_i)^p and (m − u_i)^p for m = 0..n.
std::vector<std::array<double, detail::kNodes>> shifted_table(const detail::CellRule& r, std::size_t n, double p,
                                                              double sign) {
  std::vector<std::array<double, detail::kNodes>> t(n + 1);
  for (std::size_t m = 0; m <= n; ++m)
    for (std::size_t i = 0; i < detail::kNodes; ++i) {
      const double x = double(m) + sign * r.u[i];
      t[m][i] = x > 0.0 ? std::pow(x, p) : 0.0;
    }
  return t;
}

FCells build_f_cells(std::span<const double> f, double h, const detail::CellRule& r) {
  using namespace detail;
  const double alpha = r.alpha;
  const std::size_t N = f.size() - 1;
  const auto ramps = left_ramps(slopes(f, h));
  const double g2ma = std::tgamma(2.0 - alpha);
  std::vector<double> A(N);
  for (std::size_t j = 0; j < N; ++j) A[j] = ramps[j] / g2ma;
  const double eh = f[0] / std::tgamma(1.0 - alpha) / h;
  const auto TF = shifted_table(r, N, 1.0 - alpha, 1.0);
  const auto TE = shifted_table(r, N, -alpha, 1.0);

  FCells c;
  c.P.resize(N);
  c.Q.resize(N);
#pragma omp parallel for schedule(dynamic, 64)
  for (long long kk = 0; kk < ll(N); ++kk) {
    const std::size_t k = std::size_t(kk);
    std::array<double, kNearF> fn{};
    fn[kF0] = A[k];
    fn[kF1] = k >= 1 ? A[k - 1] : 0.0;
    fn[kE0] = k == 0 ? eh : 0.0;
    fn[kE1] = k == 1 ? eh : 0.0;
    std::array<double, kNodes> FF{};
    for (std::size_t m = 2; m <= k; ++m)
      for (std::size_t i = 0; i < kNodes; ++i) FF[i] += A[k - m] * TF[m][i];
    if (k >= 2 && eh != 0.0)
      for (std::size_t i = 0; i < kNodes; ++i) FF[i] += eh * TE[k][i];

    for (std::size_t i = 0; i < kNodes; ++i) {
      double v = r.w[i] * FF[i];
      for (std::size_t p = 0; p < kNearF; ++p) v += fn[p] * r.f_weights[p][i];
      c.P[k][i] = v;
    }
    for (std::size_t x = 0; x < kNearG; ++x) {
      double v = 0.0;
      for (std::size_t p = 0; p < kNearF; ++p) v += fn[p] * r.near[p][x];
      for (std::size_t i = 0; i < kNodes; ++i) v += r.g_weights[x][i] * FF[i];
      c.Q[k][x] = v;
    }
  }
  return c;
}

}  // namespace

std::vector<double> rl_integral_left(std::span<const double> f, double h, double alpha) {
  check(f, h, alpha);
  const std::size_t N = f.size() - 1;
  const auto pa = power_table(N, h, alpha);
  const auto pa1 = power_table(N, h, alpha + 1.0);
  const double g = std::tgamma(alpha);
  std::vector<double> out(N + 1, 0.0);
#pragma omp parallel for schedule(dynamic, 64)
  for (long long kk = 1; kk <= ll(N); ++kk) {
    const std::size_t k = std::size_t(kk);
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      // v = t_k − r runs over [(m−1)h, mh]; f = (f_j + s_j·m·h) − s_j·v.
      const std::size_t m = k - j;
      const double sj = (f[j + 1] - f[j]) / h;
      const double c0 = f[j] + sj * double(m) * h;
      acc += c0 * (pa[m] - pa[m - 1]) / alpha - sj * (pa1[m] - pa1[m - 1]) / (alpha + 1.0);
    }
    out[k] = acc / g;
  }
  return out;
}

std::vector<double> rl_integral_right(std::span<const double> f, double h, double alpha) {
  check(f, h, alpha);
  const std::size_t N = f.size() - 1;
  const auto pa = power_table(N, h, alpha);
  const auto pa1 = power_table(N, h, alpha + 1.0);
  const double g = std::tgamma(alpha);
  std::vector<double> out(N + 1, 0.0);
#pragma omp parallel for schedule(dynamic, 64)
  for (long long kk = 0; kk < ll(N); ++kk) {
    const std::size_t k = std::size_t(kk);
    double acc = 0.0;
    for (std::size_t j = k; j < N; ++j) {
      // v = r − t_k runs over [(m−1)h, mh]; f = (f_j − s_j(m−1)h) + s_j·v.
      const std::size_t m = j - k + 1;
      const double sj = (f[j + 1] - f[j]) / h;
      const double c0 = f[j] - sj * double(m - 1) * h;
      acc += c0 * (pa[m] - pa[m - 1]) / alpha + sj * (pa1[m] - pa1[m - 1]) / (alpha + 1.0);
    }
    out[k] = acc / g;
  }
  return out;
}

std::vector<double> derivative_left(std::span<const double> f, double h, double alpha) {
  check(f, h, alpha);
  const std::size_t N = f.size() - 1;
  const auto ramps = left_ramps(slopes(f, h));
  const auto p1ma = power_table(N, h, 1.0 - alpha);
  auto out = left_smooth_nodes(ramps, p1ma, alpha);
  const double e = f[0] / std::tgamma(1.0 - alpha);
  if (e != 0.0) {
    for (std::size_t k = 1; k <= N; ++k) out[k] += e * std::pow(double(k) * h, -alpha);
    out[0] = std::copysign(std::numeric_limits<double>::infinity(), f[0]);
  }
  return out;
}

std::vector<double> derivative_right_compensated(std::span<const double> g, double h, double alpha) {
  check(g, h, alpha);
  const std::size_t N = g.size() - 1;
  const auto c = right_ramps(slopes(g, h));
  const auto pa = power_table(N, h, alpha);
  const double gam = std::tgamma(1.0 + alpha);
  std::vector<double> out(N + 1, 0.0);
#pragma omp parallel for schedule(dynamic, 64)
  for (long long kk = 0; kk < ll(N); ++kk) {
    const std::size_t k = std::size_t(kk);
    double acc = 0.0;
    for (std::size_t j = k + 1; j <= N; ++j) acc += c[j] * pa[j - k];
    out[k] = acc / gam;
  }
  return out;
}

YoungValue young_frac(std::span<const double> f, std::span<const double> g, double h, double alpha) {
  using namespace detail;
  check(f, h, alpha);
  if (f.size() != g.size()) throw std::invalid_argument("young_frac: f and g sizes differ");
  const std::size_t N = f.size() - 1;
  const auto rule = make_cell_rule(alpha);
  const auto cells = build_f_cells(f, h, rule);
  const auto c = right_ramps(slopes(g, h));
  const double gam = std::tgamma(1.0 + alpha);
  std::vector<double> B(N + 1);
  for (std::size_t l = 0; l <= N; ++l) B[l] = c[l] / gam;
  const auto TG = shifted_table(rule, N, alpha, -1.0);

  std::vector<double> contrib(N), mass(N);
#pragma omp parallel for schedule(dynamic, 64)
  for (long long kk = 0; kk < ll(N); ++kk) {
    const std::size_t k = std::size_t(kk);
    std::array<double, kNodes> GF{};
    for (std::size_t l = k + 3; l <= N; ++l)
      for (std::size_t i = 0; i < kNodes; ++i) GF[i] += B[l] * TG[l - k][i];
    double v = B[k + 1] * cells.Q[k][kG1] + (k + 2 <= N ? B[k + 2] * cells.Q[k][kG2] : 0.0);
    for (std::size_t i = 0; i < kNodes; ++i) v += GF[i] * cells.P[k][i];
    contrib[k] = h * h * v;
    mass[k] = std::abs(contrib[k]);
  }
  return {-pairwise_sum(contrib), pairwise_sum(mass)};
}

std::vector<double> young_frac_path(std::span<const double> f, std::span<const double> g, double h, double alpha) {
  using namespace detail;
  check(f, h, alpha);
  if (f.size() != g.size()) throw std::invalid_argument("young_frac_path: f and g sizes differ");
  const std::size_t N = f.size() - 1;
  const auto rule = make_cell_rule(alpha);
  const auto cells = build_f_cells(f, h, rule);
  const auto s = slopes(g, h);
  const double gam = std::tgamma(1.0 + alpha);
  const auto TG = shifted_table(rule, N, alpha, -1.0);

  // For the right end t_K, G's ramp coefficients are Δs_l/Γ(1+α) for l < K and
  // −s_{K−1}/Γ(1+α) at l = K. SG[k] holds the far sum over l = k+3..K−1 and is
  // grown one K at a time.
  std::vector<std::array<double, kNodes>> SG(N + 1, std::array<double, kNodes>{});
  std::vector<double> contrib(N), out(N + 1, 0.0);
  auto b_reg = [&](std::size_t l) { return (s[l] - s[l - 1]) / gam; };
  for (std::size_t K = 1; K <= N; ++K) {
    const double b_end = -s[K - 1] / gam;
    auto near = [&](std::size_t l) { return l < K ? b_reg(l) : (l == K ? b_end : 0.0); };
#pragma omp parallel for schedule(static) if (K > 4096)
    for (long long kk = 0; kk < ll(K); ++kk) {
      const std::size_t k = std::size_t(kk);
      double v = near(k + 1) * cells.Q[k][kG1] + near(k + 2) * cells.Q[k][kG2];
      if (K >= k + 3)
        for (std::size_t i = 0; i < kNodes; ++i) v += (SG[k][i] + b_end * TG[K - k][i]) * cells.P[k][i];
      contrib[k] = h * h * v;
    }
    out[K] = -pairwise_sum(std::span<const double>(contrib.data(), K));
    if (K < N && K >= 3) {
      const double bK = b_reg(K);
#pragma omp parallel for schedule(static) if (K > 4096)
      for (long long kk = 0; kk <= ll(K - 3); ++kk) {
        const std::size_t k = std::size_t(kk);
        for (std::size_t i = 0; i < kNodes; ++i) SG[k][i] += bK * TG[K - k][i];
      }
    }
  }
  return out;
}

}  // namespace yp::kernels

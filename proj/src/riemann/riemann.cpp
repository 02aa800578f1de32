#include "yp/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "yp/error.hpp"
#include "yp/holder_paths.hpp"
#include "yp/path_io.hpp"

namespace yp {

namespace {

constexpr double kGridTol = 1e-9;

// Fractional grid position of t; exact index when within tolerance.
struct GridPos {
  std::size_t i;
  double frac;  // 0 when on the grid
};

GridPos locate(const GridPath& p, double t) {
  const double r = t / p.step();
  const double ri = std::round(r);
  const std::size_t last = p.size() - 1;
  if (std::abs(r - ri) <= kGridTol) return {std::min(std::size_t(std::max(ri, 0.0)), last), 0.0};
  if (r < 0.0 || r > double(last)) throw std::invalid_argument("partition node outside the grid");
  const auto i = std::size_t(std::floor(r));
  return {i, r - double(i)};
}

double value_at(const GridPath& p, const GridPos& g, std::size_t k = 0) {
  if (g.frac == 0.0) return p(g.i, k);
  return p(g.i, k) + g.frac * (p(g.i + 1, k) - p(g.i, k));
}

std::size_t stride_of(const GridPath& y, const Partition& pi) {
  if (pi.kind != Partition::Kind::Uniform) throw std::invalid_argument("averaged approximant needs a uniform partition");
  if (pi.a != 0.0 || std::abs(pi.b - y.horizon()) > kGridTol * y.horizon())
    throw std::invalid_argument("averaged approximant: partition must span [0, T]");
  const std::size_t cells = pi.size() - 1, fine = y.size() - 1;
  if (fine % cells != 0) throw std::invalid_argument("averaged approximant: partition nodes must lie on the grid of y");
  const std::size_t s = fine / cells;
  if (s < 8)
    throw std::invalid_argument("averaged approximant: grid of y must have at least 8 steps per partition cell (has " +
                                std::to_string(s) + ")");
  return s;
}

}  // namespace

Partition Partition::uniform(double a, double b, std::size_t n) {
  if (n < 2) throw std::invalid_argument("partition needs at least 2 nodes");
  if (!(b > a)) throw std::invalid_argument("partition needs a < b");
  Partition p;
  p.a = a;
  p.b = b;
  p.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.nodes[i] = a + (b - a) * double(i) / double(n - 1);
  p.nodes.back() = b;
  return p;
}

double Partition::mesh() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) m = std::max(m, nodes[i + 1] - nodes[i]);
  return m;
}

void Partition::validate() const {
  if (nodes.size() < 2) throw std::logic_error("partition: fewer than 2 nodes");
  if (nodes.front() != a || nodes.back() != b) throw std::logic_error("partition: end nodes differ from [a, b]");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!(nodes[i + 1] > nodes[i])) throw std::logic_error("partition: nodes not strictly increasing");
  if (kind == Kind::Uniform) {
    const double h = (b - a) / double(nodes.size() - 1);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
      if (std::abs(nodes[i + 1] - nodes[i] - h) > 1e-9 * h) throw std::logic_error("partition: uneven uniform steps");
  } else {
    if (j_star + 1 >= nodes.size()) throw std::logic_error("partition: j* out of range");
    if (!(nodes[j_star] < tau && tau <= nodes[j_star + 1])) throw std::logic_error("partition: j* does not bracket tau");
    const double gap = tau - nodes[j_star];
    if (gap < window * (1.0 - 1e-12) || gap > 2.0 * window * (1.0 + 1e-12))
      throw std::logic_error("partition: node before tau violates the window");
  }
}

Partition tau_aware_partition(double a, double b, double tau, double epsilon, double gamma, double holder_norm_y,
                              std::size_t base_n) {
  if (!(a < tau && tau <= b)) throw std::invalid_argument("tau_aware_partition: need a < tau <= b");
  if (!(epsilon > 0.0)) throw std::invalid_argument("tau_aware_partition: epsilon must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("tau_aware_partition: gamma must lie in (0,1)");
  if (!(holder_norm_y > 0.0)) throw std::invalid_argument("tau_aware_partition: Hölder norm must be positive");
  const double window = std::pow(epsilon / (3.0 * std::pow(2.0, gamma) * holder_norm_y), 1.0 / gamma);
  if (tau - 2.0 * window < a)
    throw std::invalid_argument("tau_aware_partition: epsilon " + format_double(epsilon) +
                                " is too large; the window around tau leaves the interval");
  const double t_star = tau - 1.5 * window;
  const Partition base = Partition::uniform(a, b, base_n);

  Partition p;
  p.kind = Partition::Kind::TauAware;
  p.a = a;
  p.b = b;
  p.tau = tau;
  p.epsilon = epsilon;
  p.window = window;
  for (double t : base.nodes)
    if (t < t_star) p.nodes.push_back(t);
  p.j_star = p.nodes.size();
  p.nodes.push_back(t_star);
  for (double t : base.nodes)
    if (t >= tau) p.nodes.push_back(t);
  p.validate();
  return p;
}

RiemannSum riemann_sum(const GridPath& f, const GridPath& x, const Partition& pi) {
  if (f.dim() != 1 || x.dim() != 1) throw std::invalid_argument("riemann_sum: f and x must be one-dimensional");
  if (f.size() != x.size() || f.horizon() != x.horizon())
    throw std::invalid_argument("riemann_sum: f and x must share the grid");
  RiemannSum out;
  std::vector<GridPos> pos;
  pos.reserve(pi.size());
  for (double t : pi.nodes) {
    pos.push_back(locate(x, t));
    out.interpolated = out.interpolated || pos.back().frac != 0.0;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < pos.size(); ++i)
    sum += value_at(f, pos[i]) * (value_at(x, pos[i + 1]) - value_at(x, pos[i]));
  out.value = sum;
  return out;
}

GridPath sigma_path(const GridPath& y, const Coefficient& coeff) {
  if (coeff.dim() != y.dim()) throw std::invalid_argument("sigma_path: coefficient dimension differs from y");
  std::vector<double> v(y.size() * y.dim());
  for (std::size_t i = 0; i < y.size(); ++i)
    coeff.eval(y.row(i), std::span<double>(v.data() + i * y.dim(), y.dim()));
  return GridPath(y.horizon(), y.size(), y.dim(), std::move(v));
}

AveragedIntegrand averaged_integrand(const GridPath& y, const Coefficient& coeff, const Partition& pi) {
  const std::size_t s = stride_of(y, pi);
  const std::size_t cells = pi.size() - 1, m = y.dim();
  const GridPath sig = sigma_path(y, coeff);

  AveragedIntegrand out;
  out.cell_means.assign(cells, std::vector<double>(m, 0.0));
  for (std::size_t c = 0; c < cells; ++c) {
    const std::size_t j0 = c * s;
    for (std::size_t k = 0; k < m; ++k) {
      double acc = 0.5 * (sig(j0, k) + sig(j0 + s, k));
      for (std::size_t j = j0 + 1; j < j0 + s; ++j) acc += sig(j, k);
      out.cell_means[c][k] = acc / double(s);
    }
  }
  std::vector<double> z(y.size() * m);
  for (std::size_t j = 0; j < y.size(); ++j) {
    const std::size_t c = std::min(j / s, cells - 1);
    for (std::size_t k = 0; k < m; ++k) z[j * m + k] = out.cell_means[c][k];
  }
  out.z = GridPath(y.horizon(), y.size(), m, std::move(z));
  return out;
}

std::vector<double> averaged_riemann_integral(const GridPath& y, const GridPath& x, const Coefficient& coeff,
                                              const Partition& pi) {
  if (x.dim() != 1 || x.size() != y.size() || x.horizon() != y.horizon())
    throw std::invalid_argument("averaged_riemann_integral: x must be one-dimensional on the grid of y");
  const auto avg = averaged_integrand(y, coeff, pi);
  const std::size_t s = (y.size() - 1) / (pi.size() - 1);
  std::vector<double> out(y.dim(), 0.0);
  for (std::size_t k = 0; k < y.dim(); ++k) {
    double sum = 0.0;
    for (std::size_t c = 0; c + 1 < pi.size(); ++c) sum += avg.cell_means[c][k] * (x((c + 1) * s) - x(c * s));
    out[k] = sum;
  }
  return out;
}

ConvergenceTable convergence_study(const GridPath& y, const GridPath& x, const Coefficient& coeff, double gamma,
                                   const std::vector<std::size_t>& ns, double reference,
                                   std::string reference_kind) {
  if (ns.empty()) throw std::invalid_argument("convergence_study: no partition sizes");
  for (std::size_t i = 0; i + 1 < ns.size(); ++i)
    if (ns[i + 1] <= ns[i]) throw std::invalid_argument("convergence_study: sizes must increase");
  // Validate every size up front so the parallel loop cannot throw.
  std::size_t coarsest = 0;
  for (std::size_t n : ns) coarsest = std::max(coarsest, stride_of(y, Partition::uniform(0.0, y.horizon(), n)));

  ConvergenceTable table;
  table.reference = reference;
  table.reference_kind = std::move(reference_kind);
  table.y_holder = holder_norm(y, gamma, coarsest).norm;
  double ymax = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) ymax = std::max(ymax, y.norm_at(i));
  table.seminorm = seminorm_for_bounds(coeff, ymax);
  const GridPath sig = sigma_path(y, coeff);

  table.rows.resize(ns.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t r = 0; r < ns.size(); ++r) {
    const Partition pi = Partition::uniform(0.0, y.horizon(), ns[r]);
    const auto avg = averaged_integrand(y, coeff, pi);
    const std::size_t s = (y.size() - 1) / (pi.size() - 1);
    double sum = 0.0;
    for (std::size_t c = 0; c + 1 < pi.size(); ++c) sum += avg.cell_means[c][0] * (x((c + 1) * s) - x(c * s));
    double sup = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < y.dim(); ++k) {
        const double d = sig(j, k) - avg.z(j, k);
        d2 += d * d;
      }
      sup = std::max(sup, std::sqrt(d2));
    }
    ConvergenceRow& row = table.rows[r];
    row.n = ns[r];
    row.mesh = pi.mesh();
    row.value = sum;
    row.abs_error = std::abs(sum - reference);
    row.sup_integrand_err = sup;
    row.lemma27_bound = table.seminorm * std::pow(table.y_holder, coeff.kappa()) * std::pow(row.mesh, coeff.kappa() * gamma);
  }
  return table;
}

}  // namespace yp

#include <cmath>
#include <stdexcept>
#include <string>

#include "yp/error.hpp"
#include "yp/ladder.hpp"
#include "yp/path_io.hpp"

namespace yp {

int band_level(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("band_level: radius must be positive");
  if (r >= 1.0) return -1;
  int e = 0;
  std::frexp(r, &e);  // r ∈ [2^{e−1}, 2^e)
  return -e;
}

bool in_i_band(double r, int q) {
  if (q < 0) return r >= 1.0;
  return r >= std::ldexp(1.0, -q - 1) && r < std::ldexp(1.0, -q);
}

bool in_j_band(double r, int q) {
  if (q < 0) return r >= 0.75;
  return r >= std::ldexp(3.0, -q - 3) && r < std::ldexp(3.0, -q - 2);
}

LadderExtraction extract_ladder(const GridPath& y, std::optional<std::size_t> end_index, JumpPolicy policy) {
  const std::size_t end = end_index ? std::min(*end_index, y.size()) : y.size();
  LadderExtraction out;
  if (end == 0) return out;
  std::vector<double> r(end);
  for (std::size_t i = 0; i < end; ++i) {
    r[i] = y.norm_at(i);
    if (!(r[i] > 0.0)) throw std::invalid_argument("extract_ladder: path vanishes before the end index");
  }

  auto fail = [&](LadderEvent ev, std::size_t at, const std::string& what) {
    const std::string msg = "ladder: " + what + " at t=" + format_double(y.time(at)) + " (|y|=" + format_double(r[at]) +
                            "); the grid does not resolve the ladder";
    if (policy == JumpPolicy::Strict) throw ResolutionError(msg);
    ev.complete = false;
    out.events.push_back(ev);
    out.truncated = true;
    out.reason = msg;
  };

  std::size_t idx = 0;
  int q = band_level(r[0]);
  for (std::size_t k = 0;; ++k) {
    LadderEvent ev;
    ev.k = k;
    ev.q = q;
    ev.lambda_index = idx;
    ev.lambda = y.time(idx);

    std::size_t i = idx + 1;
    while (i < end && in_i_band(r[i], q)) ++i;
    ev.tau_index = ev.lambda_next_index = i;
    ev.tau = ev.lambda_next = y.time(std::min(i, y.size() - 1));
    if (i == end) {
      ev.q_hat = q;
      out.events.push_back(ev);
      break;
    }
    const bool down = r[i] < std::ldexp(1.0, -q - 1);
    ev.q_hat = down ? q : q - 1;
    if (band_level(r[i]) != (down ? q + 1 : q - 1) || !in_j_band(r[i], ev.q_hat)) {
      ev.lambda_next_index = ev.tau_index;
      fail(ev, i, "|y| left band I_" + std::to_string(q) + " by more than one level");
      break;
    }

    std::size_t j = i + 1;
    while (j < end && in_j_band(r[j], ev.q_hat)) ++j;
    ev.lambda_next_index = j;
    ev.lambda_next = y.time(std::min(j, y.size() - 1));
    if (j == end) {
      out.events.push_back(ev);
      break;
    }
    const int next_q = band_level(r[j]);
    if (next_q != ev.q_hat && next_q != ev.q_hat + 1) {
      fail(ev, j, "|y| left band J_" + std::to_string(ev.q_hat) + " by more than one level");
      break;
    }
    ev.complete = true;
    out.events.push_back(ev);
    idx = j;
    q = next_q;
  }
  return out;
}

BandCheck check_band_invariants(const GridPath& y, const std::vector<LadderEvent>& events) {
  BandCheck c;
  std::size_t upper_total = 0, upper_inside = 0;
  auto violate = [&](const std::string& what) {
    if (c.ok) c.first_violation = what;
    c.ok = false;
  };
  for (std::size_t e = 0; e < events.size(); ++e) {
    const auto& ev = events[e];
    const std::string tag = "rung " + std::to_string(ev.k);
    if (ev.complete && !(ev.lambda_index < ev.tau_index && ev.tau_index < ev.lambda_next_index))
      violate(tag + ": times out of order");
    if (e + 1 < events.size()) {
      const int step = events[e + 1].q - ev.q;
      if (step < -1 || step > 1) violate(tag + ": level step " + std::to_string(step));
      if (events[e + 1].lambda_index != ev.lambda_next_index) violate(tag + ": next rung does not start at lambda_next");
    }
    const double lower = std::ldexp(3.0, -ev.q - 3), upper = std::ldexp(3.0, -ev.q - 2);
    for (std::size_t i = ev.lambda_index; i < ev.lambda_next_index && i < y.size(); ++i) {
      const double r = y.norm_at(i);
      ++c.points_checked;
      const bool first_phase = i < ev.tau_index;
      if (first_phase ? !in_i_band(r, ev.q) : !in_j_band(r, ev.q_hat))
        violate(tag + ": |y|=" + format_double(r) + " outside " + (first_phase ? "I_" : "J_") +
                std::to_string(first_phase ? ev.q : ev.q_hat) + " at t=" + format_double(y.time(i)));
      if (r < lower) violate(tag + ": |y| below (3/8)2^{-q} at t=" + format_double(y.time(i)));
      if (ev.q >= 2) {
        ++upper_total;
        if (r <= upper) ++upper_inside;
      }
    }
  }
  c.upper_fraction = upper_total ? double(upper_inside) / double(upper_total) : 1.0;
  return c;
}

DyadicDecomposition dyadic_decomposition(const GridPath& y, const GridPath& x, const Coefficient& coeff,
                                         std::size_t s_index, std::size_t t_index, unsigned levels) {
  if (x.dim() != 1 || x.size() != y.size()) throw std::invalid_argument("dyadic_decomposition: x must be 1-D on the grid of y");
  if (coeff.dim() != y.dim()) throw std::invalid_argument("dyadic_decomposition: coefficient dimension differs from y");
  if (!(s_index < t_index && t_index < y.size())) throw std::invalid_argument("dyadic_decomposition: need s < t on the grid");
  const std::size_t span = t_index - s_index;
  if (levels >= 63 || span % (std::size_t(1) << levels) != 0)
    throw ResolutionError("dyadic_decomposition: the grid does not resolve " + std::to_string(levels) + " dyadic levels on [s,t]");

  const std::size_t m = y.dim();
  DyadicDecomposition d;
  d.main = coeff.eval(y.row(s_index));
  const double dx = x(t_index) - x(s_index);
  for (double& v : d.main) v *= dx;
  d.remainder.resize(m);
  for (std::size_t k = 0; k < m; ++k) d.remainder[k] = y(t_index, k) - y(s_index, k) - d.main[k];

  std::vector<double> tail_sum(m, 0.0), s0(m), s1(m);
  for (unsigned l = 0; l < levels; ++l) {
    const std::size_t pieces = std::size_t(2) << l, step = span / pieces;
    std::vector<double> K(m, 0.0);
    for (std::size_t i = 0; i < pieces / 2; ++i) {
      const std::size_t p0 = s_index + 2 * i * step, p1 = p0 + step, p2 = p1 + step;
      coeff.eval(y.row(p0), s0);
      coeff.eval(y.row(p1), s1);
      const double inc = x(p2) - x(p1);
      for (std::size_t k = 0; k < m; ++k) K[k] += (s1[k] - s0[k]) * inc;
    }
    for (std::size_t k = 0; k < m; ++k) tail_sum[k] += K[k];
    d.tail.push_back(std::move(K));
  }
  double gap = 0.0;
  for (std::size_t k = 0; k < m; ++k) gap += (d.remainder[k] - tail_sum[k]) * (d.remainder[k] - tail_sum[k]);
  d.truncation_gap = std::sqrt(gap);
  return d;
}

}  // namespace yp

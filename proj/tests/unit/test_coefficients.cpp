#include <cmath>

#include "catch_amalgamated.hpp"
#include "yp/coefficients.hpp"
#include "yp/rng.hpp"

using namespace yp;
using Catch::Approx;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t m, double scale) {
  std::vector<double> v(m);
  for (auto& x : v) x = rng.normal() * scale;
  return v;
}

// Random rotation: QR of a Gaussian matrix by Gram–Schmidt.
std::vector<std::vector<double>> random_rotation(Rng& rng, std::size_t m) {
  std::vector<std::vector<double>> q;
  while (q.size() < m) {
    auto v = random_vector(rng, m, 1.0);
    for (const auto& u : q) {
      double d = 0.0;
      for (std::size_t i = 0; i < m; ++i) d += u[i] * v[i];
      for (std::size_t i = 0; i < m; ++i) v[i] -= d * u[i];
    }
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    for (double& x : v) x /= n;
    q.push_back(v);
  }
  return q;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("evaluation examples") {
  const auto p = Coefficient::power(1.0, 0.5);
  CHECK(p.eval1(4.0) == Approx(2.0));
  CHECK(p.eval1(-4.0) == Approx(2.0));
  CHECK(p.eval1(0.0) == 0.0);
  const auto r = regularize(Coefficient::power(2.0, 0.5), 3);
  CHECK(r.eval1(0.01) == Approx(2.0 * std::sqrt(0.125)));
  CHECK(r.eval1(0.0) == Approx(2.0 * std::sqrt(0.125)));
}

TEST_CASE("structural invariants hard-fail") {
  CHECK_THROWS(Coefficient::power(1.0, 0.0));
  CHECK_THROWS(Coefficient::power(1.0, 1.0));
  CHECK_THROWS(Coefficient::power(0.0, 0.5));
  CHECK_THROWS(Coefficient::radial("shifted", [](double r) { return 1.0 + r; }, 0.5));
  CHECK_THROWS(parse_coefficient("power C=1 kappa=1.5"));
  CHECK_THROWS(parse_coefficient("radial kappa=0.5 profile=nope"));
  CHECK_THROWS(parse_coefficient("cubic C=1"));
}

TEST_CASE("config text round trips through describe") {
  for (const char* text : {"power C=1.5 kappa=0.3", "radial kappa=0.5 profile=capped C=1 cap=2",
                           "radial kappa=0.4 profile=power_plus_linear C=1 slope=0.5 dim=3"}) {
    const auto c = parse_coefficient(text);
    const auto d = parse_coefficient(c.describe());
    CHECK(d.describe() == c.describe());
    CHECK(d.kappa() == c.kappa());
    CHECK(d.dim() == c.dim());
    for (double r : {0.0, 0.01, 0.5, 3.0}) CHECK(d.profile(r) == c.profile(r));
  }
  CHECK(builtin_profiles().size() >= 3);
}

TEST_CASE("radial coefficients are rotation invariant") {
  Rng rng(3);
  for (const char* text : {"power C=1 kappa=0.5 dim=3", "radial kappa=0.4 profile=capped C=1 cap=0.8 dim=3"}) {
    const auto c = parse_coefficient(text);
    for (int trial = 0; trial < 200; ++trial) {
      const auto R = random_rotation(rng, 3);
      const auto xi = random_vector(rng, 3, 2.0);
      std::vector<double> rxi(3, 0.0);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) rxi[i] += R[i][j] * xi[j];
      const auto a = c.eval(xi), b = c.eval(rxi);
      for (std::size_t i = 0; i < 3; ++i) CHECK(a[i] == Approx(b[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("seminorm of a power coefficient is its scale") {
  const auto c = Coefficient::power(1.7, 0.4, 2);
  const auto s = seminorm_estimate(c, 1000, 3.0, 1);
  CHECK(s.exact);
  CHECK(s.value == 1.7);
  CHECK(c.exact_seminorm().value() == 1.7);
  CHECK(s.sampled_value == Approx(1.7).epsilon(1e-10));
}

TEST_CASE("seminorm of perturbed profiles against a dense radius scan") {
  auto scan = [](const std::function<double(double)>& rho, double kappa, double R) {
    // Dense oracle over radius pairs on a log grid.
    std::vector<double> r;
    for (int i = 0; i <= 600; ++i) r.push_back(R * std::pow(10.0, -6.0 * (1.0 - i / 600.0)));
    double best = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = i + 1; j < r.size(); ++j)
        best = std::max(best, std::abs(rho(r[j]) - rho(r[i])) / std::abs(std::pow(r[j], kappa) - std::pow(r[i], kappa)));
    return best;
  };
  const auto capped = parse_coefficient("radial kappa=0.5 profile=capped C=1 cap=1");
  const double oc = scan([](double r) { return std::min(std::sqrt(r), 1.0); }, 0.5, 4.0);
  CHECK(seminorm_estimate(capped, 20000, 4.0, 2).value == Approx(oc).epsilon(0.01));

  const auto ppl = parse_coefficient("radial kappa=0.5 profile=power_plus_linear C=1 slope=1");
  const double op = scan([](double r) { return std::sqrt(r) + r; }, 0.5, 1.0);
  const auto e = seminorm_estimate(ppl, 20000, 1.0, 3);
  CHECK(e.value <= 3.0 + 1e-12);  // 1 + sqrt(r1) + sqrt(r2) on [0,1]
  CHECK(e.value == Approx(op).epsilon(0.01));
}

TEST_CASE("regularization") {
  const auto c = Coefficient::power(1.0, 0.5);
  const auto r2 = regularize(c, 2);
  CHECK(r2.threshold() == 0.25);
  CHECK(r2.eval1(0.25) == 0.5);
  CHECK(r2.eval1(0.1) == 0.5);
  CHECK(r2.eval1(-0.1) == 0.5);
  CHECK(regularize(c, 0).eval1(0.0) == c.eval1(1.0));

  // Above the threshold the regularized field is the base field, bit for bit.
  Rng rng(9);
  const auto c3 = parse_coefficient("radial kappa=0.4 profile=power_plus_linear C=1 slope=0.3 dim=3");
  for (unsigned n : {0u, 3u, 10u}) {
    const auto rn = regularize(c3, n);
    for (int i = 0; i < 1000; ++i) {
      auto xi = random_vector(rng, 3, std::pow(2.0, rng.uniform(-12.0, 2.0)));
      if (norm(xi) <= rn.threshold()) continue;
      CHECK(rn.eval(xi) == c3.eval(xi));
    }
  }
}

TEST_CASE("regularization never raises the seminorm") {
  const auto c = Coefficient::power(1.0, 0.5);
  const auto s = seminorm_estimate(regularize(c, 5), 100000, 1.0, 4);
  CHECK(s.value <= 1.0 + 1e-12);

  Rng rng(5);
  std::vector<double> r1, r2;
  for (int i = 0; i < 20000; ++i) {
    r1.push_back(std::pow(2.0, rng.uniform(-10.0, 1.0)));
    r2.push_back(std::pow(2.0, rng.uniform(-10.0, 1.0)));
  }
  const auto base = parse_coefficient("radial kappa=0.5 profile=capped C=1 cap=1.2");
  for (unsigned n : {1u, 4u, 8u}) {
    const auto rn = regularize(base, n);
    auto fb = [&](double r, std::span<double> o) { base.eval_radius(r, o); };
    auto fr = [&](double r, std::span<double> o) { rn.eval_radius(r, o); };
    CHECK(sampled_seminorm(fr, 0.5, 1, r1, r2) <= sampled_seminorm(fb, 0.5, 1, r1, r2) + 1e-12);
  }
}

TEST_CASE("interpolation bound examples") {
  const auto c = Coefficient::power(1.0, 0.4, 2);
  const std::vector<double> a{0.3, -0.2}, b{0.5, 0.1};
  const auto same = lemma23_bound(c, a, a, 0.3);
  CHECK(same.lhs == 0.0);
  CHECK(same.lhs <= same.rhs);
  const auto e0 = lemma23_bound(c, a, b, 0.0);
  const double d = std::hypot(0.2, 0.3);
  CHECK(e0.rhs == Approx(2.0 * std::pow(d, 0.4)));
  CHECK(e0.lhs <= e0.rhs);
  CHECK_THROWS(lemma23_bound(c, a, b, 0.7));
  CHECK_THROWS(lemma23_bound(c, a, std::vector<double>{0.0, 0.0}, 0.3));
}

TEST_CASE("interpolation bound holds on random triples") {
  Rng rng(17);
  for (double kappa : {0.3, 0.4, 0.7})
    for (std::size_t m : {1u, 3u}) {
      const auto c = Coefficient::power(1.0, kappa, m);
      std::size_t violations = 0;
      for (int i = 0; i < 20000; ++i) {
        const auto x1 = random_vector(rng, m, std::pow(10.0, rng.uniform(-4.0, 2.0)));
        const auto x2 = random_vector(rng, m, std::pow(10.0, rng.uniform(-4.0, 2.0)));
        const double eta = rng.uniform(0.0, 1.0 - kappa);
        const auto b = lemma23_bound(c, x1, x2, eta);
        violations += b.lhs > b.rhs;
      }
      CHECK(violations == 0);
    }
}

TEST_CASE("hypothesis report") {
  const auto r = check_hypotheses(Coefficient::power(1.0, 0.5), 0.6);
  CHECK(r.regime == Regime::SuperYoung);
  CHECK(r.regime_witness == Approx(0.9));
  CHECK(r.inverse_integrable);
  CHECK(r.inverse_integral == Approx(2.0).epsilon(1e-8));
  CHECK(r.monotone);
  CHECK(r.continuous);
  CHECK(r.lower_bound);
  CHECK(r.lower_bound_constant == Approx(1.0));
  CHECK(r.gradient_holder == "assumed");
  CHECK(to_string(r.regime) == "super-Young");

  const auto y = check_hypotheses(Coefficient::power(1.0, 0.9), 0.6);
  CHECK(y.regime == Regime::ClassicalYoung);
  CHECK(y.regime_witness == Approx(1.14));

  const auto capped = check_hypotheses(parse_coefficient("radial kappa=0.5 profile=capped C=1 cap=1"), 0.6);
  CHECK(capped.monotone);
}

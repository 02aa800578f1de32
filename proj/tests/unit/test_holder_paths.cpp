#include <cmath>
#include <limits>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "yp/error.hpp"
#include "yp/holder_paths.hpp"

using namespace yp;
using Catch::Approx;

TEST_CASE("fbm starts at zero and is deterministic in the seed") {
  for (auto method : {FbmMethod::Cholesky, FbmMethod::Circulant}) {
    const auto a = generate_fbm({0.7, 2, 11}, 513, 2.0, method);
    const auto b = generate_fbm({0.7, 2, 11}, 513, 2.0, method);
    const auto c = generate_fbm({0.7, 2, 12}, 513, 2.0, method);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    CHECK(a(0, 0) == 0.0);
    CHECK(a(0, 1) == 0.0);
    CHECK(a.horizon() == 2.0);
  }
}

TEST_CASE("fbm rejects invalid specs") {
  CHECK_THROWS_AS(generate_fbm({1.0, 1, 0}, 10, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(generate_fbm({0.0, 1, 0}, 10, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(generate_fbm({0.7, 1, 0}, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(generate_fbm({0.7, 0, 0}, 10, 1.0), std::invalid_argument);
}

TEST_CASE("fgn autocovariance matches the fbm covariance") {
  for (double H : {0.55, 0.75, 0.9})
    for (std::size_t k : {0u, 1u, 5u, 100u}) {
      const double kk = double(k);
      const double expect = oracle::fbm_covariance(H, kk + 1.0, 1.0) - oracle::fbm_covariance(H, kk + 1.0, 0.0) -
                            oracle::fbm_covariance(H, kk, 1.0) + oracle::fbm_covariance(H, kk, 0.0);
      CHECK(fgn_autocovariance(H, k) == Approx(expect).margin(1e-12));
    }
}

TEST_CASE("Brownian case has unit-rate increments") {
  // H = 1/2 reduces the covariance to min(s, t): increments are i.i.d. with variance Δ.
  const std::size_t n = 1025;
  const auto x = generate_fbm({0.5, 1, 3}, n, 1.0, FbmMethod::Cholesky);
  std::vector<double> inc;
  for (std::size_t i = 1; i < n; ++i) inc.push_back(x(i) - x(i - 1));
  double s2 = 0.0;
  for (double v : inc) s2 += v * v;
  s2 /= double(inc.size());
  const double dt = 1.0 / double(n - 1);
  CHECK(std::abs(s2 / dt - 1.0) < 4.0 * std::sqrt(2.0 / double(inc.size())));
}

TEST_CASE("fbm covariance over seeds, both methods") {
  const std::size_t n = 129, seeds = 3000;
  const double H = 0.75;
  const std::vector<std::pair<std::size_t, std::size_t>> pairs = {{64, 128}, {16, 32}, {128, 128}, {1, 127}};
  for (auto method : {FbmMethod::Cholesky, FbmMethod::Circulant}) {
    const FbmGenerator gen(H, n, 1.0, method);
    std::vector<std::vector<double>> prod(pairs.size());
    for (std::uint64_t s = 0; s < seeds; ++s) {
      const auto x = gen.sample(s);
      for (std::size_t p = 0; p < pairs.size(); ++p) prod[p].push_back(x(pairs[p].first) * x(pairs[p].second));
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const double s = double(pairs[p].first) / double(n - 1), t = double(pairs[p].second) / double(n - 1);
      const auto est = oracle::mean_estimate(prod[p]);
      CHECK(std::abs(est.mean - oracle::fbm_covariance(H, s, t)) <= 4.0 * est.stderr_);
    }
  }
}

TEST_CASE("components are independent with variance d|t−s|^{2H} in total") {
  const std::size_t n = 65, seeds = 3000, d = 3;
  const double H = 0.6;
  const FbmGenerator gen(H, n, 1.0);
  std::vector<double> cross, total;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    const auto x = gen.sample(s, d);
    cross.push_back(x(n - 1, 0) * x(n - 1, 1));
    double r2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) r2 += (x(48, k) - x(16, k)) * (x(48, k) - x(16, k));
    total.push_back(r2);
  }
  const auto c = oracle::mean_estimate(cross);
  CHECK(std::abs(c.mean) <= 4.0 * c.stderr_);
  const auto v = oracle::mean_estimate(total);
  CHECK(std::abs(v.mean - double(d) * std::pow(0.5, 2.0 * H)) <= 4.0 * v.stderr_);
}

TEST_CASE("holder norm examples") {
  const auto lin = GridPath::from_function(1.0, 101, [](double t) { return t; });
  CHECK(holder_norm(lin, 0.5).norm == Approx(1.0));
  const std::vector<double> c{2.0};
  CHECK(holder_norm(GridPath::constant(1.0, 50, c), 0.7).norm == 0.0);
  CHECK_THROWS(holder_norm(lin, 1.0));
  CHECK_THROWS(holder_norm(lin, 0.5, 101));
}

TEST_CASE("holder norm equals the brute-force scan and is monotone in the window") {
  const auto x = generate_fbm({0.75, 2, 4}, 257, 1.0);
  const double full = holder_norm(x, 0.7).norm;
  CHECK(full == Approx(oracle::brute_holder(x, 0.7)).epsilon(1e-15));
  CHECK(serial::holder_norm(x, 0.7).norm == full);
  CHECK(holder_norm(x, 0.7, 256).norm == full);
  double prev = 0.0;
  for (std::size_t lag : {1u, 2u, 8u, 32u, 128u, 256u}) {
    const double v = holder_norm(x, 0.7, lag).norm;
    CHECK(v == Approx(oracle::brute_holder(x, 0.7, lag)).epsilon(1e-15));
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("holder norm scales exactly with the path") {
  const auto x = generate_fbm({0.7, 1, 8}, 300, 1.0);
  for (double c : {-3.0, 0.5, 2.0})
    CHECK(holder_norm(x.scaled(c), 0.6).norm == Approx(std::abs(c) * holder_norm(x, 0.6).norm).epsilon(1e-15));
}

TEST_CASE("roughness modulus examples") {
  const auto lin = GridPath::from_function(1.0, 1025, [](double t) { return t; });
  const std::vector<double> half{0.5};
  CHECK(roughness_modulus(lin, 0.9, half).modulus >= 0.25 / std::pow(0.5, 0.9));
  const std::vector<double> zero{1.0};
  CHECK(roughness_modulus(GridPath::constant(1.0, 65, zero), 0.9, half).modulus == 0.0);

  const auto x = generate_fbm({0.7, 1, 2}, 4097, 1.0);
  const std::vector<double> scales{0.5, 0.25, 0.125, 0.0625};
  const auto r = roughness_modulus(x, 0.72, scales);
  CHECK(r.modulus > 0.0);
  REQUIRE(r.modulus_per_scale.size() == scales.size());
  for (double m : r.modulus_per_scale) CHECK(m >= r.modulus);
}

TEST_CASE("roughness modulus is symmetric under negation") {
  for (std::size_t d : {1u, 2u}) {
    const auto x = generate_fbm({0.7, d, 5}, 513, 1.0);
    const std::vector<double> scales{0.25, 0.1};
    CHECK(roughness_modulus(x, 0.75, scales).modulus == roughness_modulus(x.scaled(-1.0), 0.75, scales).modulus);
  }
}

TEST_CASE("roughness modulus is monotone in the exponent") {
  // The modulus is the largest c with |δx| > c·ε^{γ̂}: on scales below 1 a larger
  // γ̂ weakens the requirement, and on scales above 1 it strengthens it.
  const auto x = generate_fbm({0.7, 1, 6}, 1025, 1.0);
  const std::vector<double> scales{0.5, 0.2, 0.05};
  double prev = 0.0;
  for (double g : {0.6, 0.7, 0.8, 0.9}) {
    const double m = roughness_modulus(x, g, scales).modulus;
    CHECK(m >= prev);
    prev = m;
  }
  const auto big = generate_fbm({0.7, 1, 6}, 1025, 8.0);
  const std::vector<double> large{4.0, 2.0};
  prev = std::numeric_limits<double>::infinity();
  for (double g : {0.6, 0.7, 0.8, 0.9}) {
    const double m = roughness_modulus(big, g, large).modulus;
    CHECK(m <= prev);
    prev = m;
  }
}

TEST_CASE("roughness modulus rejects bad inputs") {
  const auto x = generate_fbm({0.7, 1, 6}, 9, 1.0);
  CHECK_THROWS_AS(roughness_modulus(x, 0.7, std::vector<double>{0.75}), std::invalid_argument);
  CHECK_THROWS_AS(roughness_modulus(x, 0.7, std::vector<double>{0.01}), ResolutionError);
  CHECK_THROWS_AS(roughness_modulus(x, 0.7, std::vector<double>{0.25}, {{2.0}}), std::invalid_argument);
}

TEST_CASE("default directions are unit vectors closed under negation") {
  for (std::size_t d : {1u, 2u, 3u}) {
    const auto dirs = default_directions(d);
    CHECK(dirs.size() == (d == 1 ? 2 : 16 * d));
    for (const auto& v : dirs) {
      double s = 0.0;
      for (double c : v) s += c * c;
      CHECK(s == Approx(1.0));
      bool found = false;
      for (const auto& w : dirs) {
        bool neg = true;
        for (std::size_t k = 0; k < d; ++k) neg = neg && w[k] == -v[k];
        found = found || neg;
      }
      CHECK(found);
    }
  }
}

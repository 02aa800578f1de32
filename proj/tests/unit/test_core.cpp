#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "yp/grid_path.hpp"
#include "yp/path_io.hpp"
#include "yp/rng.hpp"
#include "yp/stats.hpp"

using namespace yp;
using Catch::Approx;

namespace {

GridPath random_path(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n * d);
  for (auto& x : v) x = rng.normal() * std::pow(10.0, rng.uniform(-300.0, 300.0));
  return GridPath(0.7, n, d, v);
}

}  // namespace

TEST_CASE("grid times are derived from the index") {
  const GridPath p(3.0, 7, 1, std::vector<double>(7, 0.0));
  CHECK(p.step() == 0.5);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.time(i) == 3.0 * double(i) / 6.0);
  CHECK(p.time(6) == 3.0);
}

TEST_CASE("grid path invariants are enforced") {
  CHECK_THROWS(GridPath(1.0, 1, 1, {0.0}));
  CHECK_THROWS(GridPath(1.0, 2, 0, {}));
  CHECK_THROWS(GridPath(0.0, 2, 1, {0.0, 1.0}));
  CHECK_THROWS(GridPath(1.0, 2, 1, {0.0, std::nan("")}));
  CHECK_THROWS(GridPath(1.0, 3, 1, {0.0, 1.0}));
}

TEST_CASE("subsample keeps every stride-th point") {
  const auto p = GridPath::from_function(1.0, 9, [](double t) { return t * t; });
  const auto s = p.subsample(4);
  REQUIRE(s.size() == 3);
  CHECK(s(1) == p(4));
  CHECK(s(2) == p(8));
  CHECK_THROWS(p.subsample(3));
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double x = rng.normal() * std::pow(10.0, rng.uniform(-300.0, 300.0));
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK_THROWS(parse_double("1.0x"));
  CHECK_THROWS(parse_double(""));
}

TEST_CASE("CSV round trip is bit-exact") {
  for (std::size_t d : {1u, 3u}) {
    const auto p = random_path(257, d, d);
    std::stringstream ss;
    write_csv(ss, p, {"a comment"});
    const std::string text = ss.str();
    CHECK(text.rfind("# a comment\nt,x1", 0) == 0);
    CHECK(read_csv(ss) == p);
  }
}

TEST_CASE("CSV reader rejects malformed input") {
  std::stringstream missing("t,x1\n0,1\n");
  CHECK_THROWS(read_csv(missing));
  std::stringstream uneven("t,x1\n0,1\n0.3,2\n1,3\n");
  CHECK_THROWS(read_csv(uneven));
  std::stringstream ragged("t,x1\n0,1\n1\n");
  CHECK_THROWS(read_csv(ragged));
}

TEST_CASE("binary round trip and header layout") {
  const auto p = random_path(100, 2, 9);
  std::stringstream ss;
  write_binary(ss, p);
  const std::string bytes = ss.str();
  REQUIRE(bytes.size() == 4 + 2 + 2 + 4 + 8 + 8 + 100 * 2 * 8);
  CHECK(bytes.substr(0, 4) == "YPGP");
  CHECK(static_cast<unsigned char>(bytes[4]) == kBinaryVersion);
  CHECK(read_binary(ss) == p);

  std::string bad = bytes;
  bad[0] = 'X';
  std::stringstream bs(bad);
  CHECK_THROWS(read_binary(bs));
  std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS(read_binary(truncated));
}

TEST_CASE("atomic write leaves exactly the target file") {
  const auto dir = std::filesystem::temp_directory_path() / "yp_atomic_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto target = (dir / "out.txt").string();
  write_file_atomic(target, "first");
  write_file_atomic(target, "second");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  std::ifstream in(target);
  std::string s;
  std::getline(in, s);
  CHECK(s == "second");
  std::filesystem::remove_all(dir);
}

TEST_CASE("pairwise summation is accurate and order-fixed") {
  std::vector<double> v(1 << 20, 0.1);
  CHECK(pairwise_sum(v) == Approx(0.1 * double(v.size())).epsilon(1e-14));
  std::vector<double> w{1e16, 1.0, -1e16, 1.0};
  CHECK(pairwise_sum(w) == pairwise_sum(w));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("least squares recovers an exact line") {
  std::vector<double> x{0, 1, 2, 3, 4}, y;
  for (double t : x) y.push_back(2.0 - 0.5 * t);
  const auto f = fit_line(x, y);
  CHECK(f.slope == Approx(-0.5));
  CHECK(f.intercept == Approx(2.0));
  CHECK(f.residual_rms == Approx(0.0).margin(1e-14));
  CHECK_THROWS(fit_line(std::vector<double>{1, 1}, std::vector<double>{0, 1}));
}

TEST_CASE("split streams are reproducible and distinct") {
  Rng a(42), b(42);
  auto a1 = a.split(1), b1 = b.split(1), a2 = a.split(2);
  const double x = a1.normal();
  CHECK(x == b1.normal());
  CHECK(x != a2.normal());
}

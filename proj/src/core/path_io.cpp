#include "yp/path_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace yp {

namespace {

template <typename T>
void put_le(std::ostream& os, T v) {
  std::array<char, sizeof(T)> b;
  std::memcpy(b.data(), &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
  os.write(b.data(), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  std::array<char, sizeof(T)> b;
  if (!is.read(b.data(), sizeof(T))) throw std::runtime_error("read_binary: truncated input");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
  T v;
  std::memcpy(&v, b.data(), sizeof(T));
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  if (first < last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

void write_csv(std::ostream& os, const GridPath& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& column_names) {
  for (const auto& c : comments) os << "# " << c << '\n';
  os << 't';
  for (std::size_t k = 0; k < path.dim(); ++k) {
    if (k < column_names.size())
      os << ',' << column_names[k];
    else
      os << ",x" << (k + 1);
  }
  os << '\n';
  for (std::size_t i = 0; i < path.size(); ++i) {
    os << format_double(path.time(i));
    for (std::size_t k = 0; k < path.dim(); ++k) os << ',' << format_double(path(i, k));
    os << '\n';
  }
}

GridPath read_csv(std::istream& is) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    header = split_csv_line(line);
    break;
  }
  if (header.size() < 2 || header[0] != "t") throw std::runtime_error("read_csv: expected header t,x1,...");
  const std::size_t d = header.size() - 1;
  std::vector<double> times, values;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (cells.size() != d + 1) throw std::runtime_error("read_csv: ragged row");
    times.push_back(parse_double(cells[0]));
    for (std::size_t k = 0; k < d; ++k) values.push_back(parse_double(cells[k + 1]));
  }
  if (times.size() < 2) throw std::runtime_error("read_csv: need at least 2 rows");
  if (times.front() != 0.0) throw std::runtime_error("read_csv: grid must start at t=0");
  const std::size_t n = times.size();
  const double T = times.back();
  const double h = T / double(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(times[i] - T * double(i) / double(n - 1)) > 1e-9 * h)
      throw std::runtime_error("read_csv: grid is not uniform");
  }
  return GridPath(T, n, d, std::move(values));
}

void write_binary(std::ostream& os, const GridPath& path) {
  os.write("YPGP", 4);
  put_le<std::uint16_t>(os, static_cast<std::uint16_t>(kBinaryVersion));
  put_le<std::uint16_t>(os, 0);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(path.dim()));
  put_le<std::uint64_t>(os, static_cast<std::uint64_t>(path.size()));
  put_le<double>(os, path.horizon());
  for (std::size_t k = 0; k < path.dim(); ++k)
    for (std::size_t i = 0; i < path.size(); ++i) put_le<double>(os, path(i, k));
}

GridPath read_binary(std::istream& is) {
  std::array<char, 4> magic;
  if (!is.read(magic.data(), 4) || std::memcmp(magic.data(), "YPGP", 4) != 0)
    throw std::runtime_error("read_binary: bad magic");
  const auto version = get_le<std::uint16_t>(is);
  if (version != kBinaryVersion) throw std::runtime_error("read_binary: unsupported version");
  (void)get_le<std::uint16_t>(is);
  const auto d = get_le<std::uint32_t>(is);
  const auto n = get_le<std::uint64_t>(is);
  const double T = get_le<double>(is);
  if (d == 0 || n < 2 || n > (std::uint64_t(1) << 40)) throw std::runtime_error("read_binary: bad shape");
  std::vector<double> v(std::size_t(n) * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < n; ++i) v[i * d + k] = get_le<double>(is);
  return GridPath(T, std::size_t(n), d, std::move(v));
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), std::streamsize(contents.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace yp

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "yp/grid_path.hpp"

namespace yp {

/// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);
double parse_double(const std::string& s);

/// CSV with header `t,x1,...,xd`. Lines starting with '#' are comments;
/// `comments` are emitted before the header, each prefixed with "# ".
void write_csv(std::ostream& os, const GridPath& path, const std::vector<std::string>& comments = {},
               const std::vector<std::string>& column_names = {});
GridPath read_csv(std::istream& is);

/// Binary layout: "YPGP", u16 version, u16 reserved, u32 dim, u64 n_points,
/// f64 horizon, then dim columns of n_points f64 values. All little-endian.
inline constexpr unsigned kBinaryVersion = 1;
void write_binary(std::ostream& os, const GridPath& path);
GridPath read_binary(std::istream& is);

/// Write-to-temp then rename, so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace yp

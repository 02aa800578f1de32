#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "yp/grid_path.hpp"

namespace yp::cli {

using Json = nlohmann::ordered_json;

struct Column {
  std::string name;
  std::string unit;  // unit and definition, one line
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
};

/// Self-description carried by every output file.
struct Provenance {
  std::string command;
  std::uint64_t config_hash = 0;
  std::string seed;  // one seed, or the seed list of an aggregate file
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::pair<std::string, std::string>> results;
};

/// Comment lines (without the leading "# ") for the provenance block and the
/// per-column unit rows.
std::vector<std::string> header_lines(const Provenance& p, const std::vector<Column>& columns);
Json provenance_json(const Provenance& p, const std::vector<Column>& columns);

std::string table_csv(const Provenance& p, const Table& t);
std::string table_json(const Provenance& p, const Table& t);
/// Path in the `t,x1..xd` layout; `names` and `units` describe the value columns.
std::string path_csv(const Provenance& p, const GridPath& path, const std::vector<Column>& value_columns);
std::string path_json(const Provenance& p, const GridPath& path, const std::vector<Column>& value_columns);
std::string dump(const Json& j);

/// Atomic write of out_dir/name (creating out_dir); returns the full path.
std::string write_output(const std::string& out_dir, const std::string& name, const std::string& contents);

}  // namespace yp::cli

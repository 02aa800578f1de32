#include "output.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "yp/cli.hpp"
#include "yp/path_io.hpp"

namespace yp::cli {

namespace {

Column time_column() { return {"t", "time on the uniform grid t_i = i·T/(n−1)"}; }

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string csv_cell(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

}  // namespace

std::vector<std::string> header_lines(const Provenance& p, const std::vector<Column>& columns) {
  std::vector<std::string> out;
  out.push_back(std::string("yp ") + YP_VERSION);
  out.push_back("command: " + p.command);
  out.push_back("config_hash: fnv1a64:" + hex64(p.config_hash));
  out.push_back("seed: " + p.seed);
  for (const auto& [k, v] : p.parameters) out.push_back("param " + k + " = " + v);
  for (const auto& [k, v] : p.results) out.push_back("result " + k + " = " + v);
  for (const auto& c : columns) out.push_back("unit " + c.name + ": " + c.unit);
  return out;
}

Json provenance_json(const Provenance& p, const std::vector<Column>& columns) {
  Json j;
  j["tool"] = "yp";
  j["version"] = YP_VERSION;
  j["command"] = p.command;
  j["config_hash"] = "fnv1a64:" + hex64(p.config_hash);
  j["seed"] = p.seed;
  Json params = Json::object();
  for (const auto& [k, v] : p.parameters) params[k] = v;
  j["parameters"] = params;
  if (!p.results.empty()) {
    Json res = Json::object();
    for (const auto& [k, v] : p.results) res[k] = v;
    j["results"] = res;
  }
  Json units = Json::object();
  for (const auto& c : columns) units[c.name] = c.unit;
  j["units"] = units;
  return j;
}

std::string table_csv(const Provenance& p, const Table& t) {
  std::ostringstream os;
  for (const auto& l : header_lines(p, t.columns)) os << "# " << l << '\n';
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c].name;
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
    os << '\n';
  }
  return os.str();
}

std::string table_json(const Provenance& p, const Table& t) {
  Json j;
  j["provenance"] = provenance_json(p, t.columns);
  Json cols = Json::array();
  for (const auto& c : t.columns) cols.push_back(c.name);
  j["columns"] = cols;
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::object();
    for (std::size_t c = 0; c < row.size(); ++c) r[t.columns[c].name] = number(row[c]);
    rows.push_back(r);
  }
  j["rows"] = rows;
  return dump(j);
}

std::string path_csv(const Provenance& p, const GridPath& path, const std::vector<Column>& value_columns) {
  std::vector<Column> cols{time_column()};
  cols.insert(cols.end(), value_columns.begin(), value_columns.end());
  std::vector<std::string> names;
  for (const auto& c : value_columns) names.push_back(c.name);
  std::ostringstream os;
  write_csv(os, path, header_lines(p, cols), names);
  return os.str();
}

std::string path_json(const Provenance& p, const GridPath& path, const std::vector<Column>& value_columns) {
  std::vector<Column> cols{time_column()};
  cols.insert(cols.end(), value_columns.begin(), value_columns.end());
  Json j;
  j["provenance"] = provenance_json(p, cols);
  j["horizon"] = path.horizon();
  j["n_points"] = path.size();
  j["dim"] = path.dim();
  Json t = Json::array();
  for (std::size_t i = 0; i < path.size(); ++i) t.push_back(path.time(i));
  j["t"] = t;
  for (std::size_t k = 0; k < path.dim(); ++k) {
    Json col = Json::array();
    for (std::size_t i = 0; i < path.size(); ++i) col.push_back(number(path(i, k)));
    j[value_columns[k].name] = col;
  }
  return dump(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string write_output(const std::string& out_dir, const std::string& name, const std::string& contents) {
  std::filesystem::create_directories(out_dir);
  const std::string full = (std::filesystem::path(out_dir) / name).string();
  write_file_atomic(full, contents);
  return full;
}

}  // namespace yp::cli

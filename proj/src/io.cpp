#include "qpavg/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qpavg/errors.hpp"

namespace qpavg {

using nlohmann::json;

const char* version() { return QPAVG_VERSION; }

std::string RunConfig::to_json() const {
  json j;
  j["command"] = command;
  j["system"] = system;
  j["ic"] = ic;
  j["params"] = params;
  j["n"] = n;
  j["kernel"] = kernel;
  j["precision"] = precision;
  j["burn_in"] = burn_in;
  j["kmax"] = kmax;
  j["jmax"] = jmax;
  j["points"] = points;
  j["n_grid"] = n_grid;
  j["step"] = step;
  j["tol"] = tol;
  j["format"] = format;
  j["out"] = out;
  return j.dump();
}

RunConfig RunConfig::from_json(const std::string& text) {
  RunConfig c;
  try {
    const json j = json::parse(text);
    c.command = j.value("command", "");
    c.system = j.value("system", "");
    c.ic = j.value("ic", std::vector<std::string>{});
    c.params = j.value("params", std::map<std::string, std::string>{});
    c.n = j.value("n", std::size_t{0});
    c.kernel = j.value("kernel", "exp");
    c.precision = j.value("precision", "double");
    c.burn_in = j.value("burn_in", -1LL);
    c.kmax = j.value("kmax", 0);
    c.jmax = j.value("jmax", 0);
    c.points = j.value("points", std::size_t{0});
    c.n_grid = j.value("n_grid", std::vector<std::size_t>{});
    c.step = j.value("step", "");
    c.tol = j.value("tol", "");
    c.format = j.value("format", "csv");
    c.out = j.value("out", "");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
  return c;
}

Precision parse_precision(const std::string& s) {
  if (s == "double") return Precision::double_;
  if (s == "dd") return Precision::dd;
  throw ConfigError("unknown precision '" + s + "' (expected double or dd)");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  if (s == "gnuplot") return OutputFormat::gnuplot;
  throw ConfigError("unknown format '" + s + "' (expected csv, json or gnuplot)");
}

void ResultTable::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw Error("result table: row width does not match the header");
  rows.push_back(std::move(row));
}

namespace {

// JSON number when the text is a plain double that loses nothing (at most
// 17 significant digits); otherwise keep the decimal string.
json cell(const std::string& s) {
  const char* b = s.data();
  const char* e = b + s.size();
  long long i = 0;
  if (auto [p, ec] = std::from_chars(b, e, i); ec == std::errc{} && p == e) return i;
  double v = 0.0;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || p != e) return s;
  int digits = 0;
  for (const char* q = b; q < e && *q != 'e' && *q != 'E'; ++q) {
    if (*q >= '0' && *q <= '9' && (digits > 0 || *q != '0')) ++digits;
  }
  if (digits > 17) return s;
  return v;
}

void write_csv(std::ostream& os, const RunConfig& cfg, const ResultTable& t) {
  os << "# qpavg " << version() << "\n";
  os << "# config " << cfg.to_json() << "\n";
  for (const auto& [k, v] : t.scalars) os << "# " << k << " = " << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "\n";
  }
}

void write_json(std::ostream& os, const RunConfig& cfg, const ResultTable& t) {
  json j;
  j["version"] = version();
  j["config"] = json::parse(cfg.to_json());
  json res = json::object();
  for (const auto& [k, v] : t.scalars) res[k] = cell(v);
  j["results"] = res;
  j["columns"] = t.columns;
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row = json::array();
    for (const auto& c : r) row.push_back(cell(c));
    rows.push_back(row);
  }
  j["rows"] = rows;
  os << j.dump(2) << "\n";
}

void write_gnuplot(std::ostream& os, const RunConfig& cfg, const ResultTable& t) {
  os << "# qpavg " << version() << "\n";
  os << "# config " << cfg.to_json() << "\n";
  for (const auto& [k, v] : t.scalars) os << "# " << k << " = " << v << "\n";
  std::size_t g = t.columns.size();
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == t.group_column) g = i;
  }
  auto header = [&] {
    os << "#";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (i != g) os << " " << t.columns[i];
    }
    os << "\n";
  };
  std::string current;
  bool first = true;
  for (const auto& r : t.rows) {
    if (g < r.size() && (first || r[g] != current)) {
      if (!first) os << "\n\n";
      current = r[g];
      os << "# " << t.group_column << " " << current << "\n";
      header();
    } else if (first) {
      header();
    }
    first = false;
    bool sep = false;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i == g) continue;
      os << (sep ? " " : "") << r[i];
      sep = true;
    }
    os << "\n";
  }
}

}  // namespace

void write_result(std::ostream& os, const RunConfig& cfg, const ResultTable& t, OutputFormat fmt) {
  switch (fmt) {
    case OutputFormat::csv: write_csv(os, cfg, t); break;
    case OutputFormat::json: write_json(os, cfg, t); break;
    case OutputFormat::gnuplot: write_gnuplot(os, cfg, t); break;
  }
}

void emit(const RunConfig& cfg, const ResultTable& t) {
  const OutputFormat fmt = parse_format(cfg.format);
  if (cfg.out.empty() || cfg.out == "-") {
    write_result(std::cout, cfg, t, fmt);
    std::cout.flush();
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw ConfigError("cannot open output file '" + cfg.out + "'");
  write_result(f, cfg, t, fmt);
}

RunConfig read_embedded_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  const std::string tag = "# config ";
  const auto pos = text.find(tag);
  if (pos != std::string::npos) {
    const auto end = text.find('\n', pos);
    return RunConfig::from_json(text.substr(pos + tag.size(), end - pos - tag.size()));
  }
  try {
    const json j = json::parse(text);
    if (j.contains("config")) return RunConfig::from_json(j["config"].dump());
  } catch (const json::exception&) {
  }
  throw ConfigError("no embedded run config in '" + path + "'");
}

}  // namespace qpavg

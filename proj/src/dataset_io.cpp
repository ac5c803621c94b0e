#include "gqed/dataset_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace gqed::io {

namespace {

using sweeps::CellStatus;
using sweeps::HeaderEntry;
using sweeps::SweepDataset;

CellStatus parse_status(const std::string& s) {
  if (s == "divergent") return CellStatus::Divergent;
  if (s == "decoupled") return CellStatus::Decoupled;
  return CellStatus::Ok;
}

std::string header_value(const HeaderEntry& e) {
  return e.numeric ? format_double(e.number) : e.text;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string to_csv(const SweepDataset& d) {
  std::string out;
  for (const auto& e : d.header) out += "# " + e.key + " = " + header_value(e) + "\n";
  out += "# status = " + d.dataset_status + "\n";

  const bool with_status = !d.row_status.empty();
  for (std::size_t c = 0; c < d.columns.size(); ++c) {
    if (c) out += ',';
    out += d.columns[c];
  }
  if (with_status) out += ",status";
  out += '\n';

  for (std::size_t r = 0; r < d.rows.size(); ++r) {
    for (std::size_t c = 0; c < d.rows[r].size(); ++c) {
      if (c) out += ',';
      out += format_double(d.rows[r][c]);
    }
    if (with_status) {
      out += ',';
      out += sweeps::to_string(d.row_status[r]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const SweepDataset& d) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& e : d.header) {
    if (e.numeric)
      params[e.key] = e.number;
    else
      params[e.key] = e.text;
  }
  params["status"] = d.dataset_status;
  j["params"] = std::move(params);

  nlohmann::ordered_json columns = nlohmann::ordered_json::array();
  for (const auto& c : d.columns) columns.push_back(c);
  const bool with_status = !d.row_status.empty();
  if (with_status) columns.push_back("status");
  j["columns"] = std::move(columns);

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < d.rows.size(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (double v : d.rows[r]) row.push_back(v);
    if (with_status) row.push_back(sweeps::to_string(d.row_status[r]));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

void write_dataset(const SweepDataset& d, const std::string& path, Format format) {
  const std::string payload = format == Format::Csv ? to_csv(d) : to_json(d);
  if (path.empty()) {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << payload;
}

SweepDataset read_csv(std::istream& in) {
  SweepDataset d;
  std::string line;
  bool columns_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      std::string value = line.substr(eq + 1);
      const auto trim = [](std::string& s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t\r");
        s = a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      trim(key);
      trim(value);
      if (key == "status")
        d.dataset_status = value;
      else
        d.header.push_back(HeaderEntry::str(key, value));
      continue;
    }

    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      if (!cell.empty() && cell.back() == '\r') cell.pop_back();
      cells.push_back(cell);
    }
    if (!columns_seen) {
      d.columns = cells;
      columns_seen = true;
      continue;
    }

    const bool with_status = !d.columns.empty() && d.columns.back() == "status";
    std::vector<double> values;
    for (std::size_t c = 0; c + (with_status ? 1 : 0) < cells.size(); ++c)
      values.push_back(std::strtod(cells[c].c_str(), nullptr));
    d.rows.push_back(std::move(values));
    if (with_status) d.row_status.push_back(parse_status(cells.back()));
  }
  if (!d.columns.empty() && d.columns.back() == "status") d.columns.pop_back();
  return d;
}

}  // namespace gqed::io

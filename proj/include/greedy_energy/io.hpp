#pragma once

// Tabular export (CSV and JSON) and the run manifest written next to every
// data file. Requires nlohmann/json and OpenSSL's libcrypto.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <openssl/evp.h>

#include <json.hpp>

#include "greedy_energy/circle_exact.hpp"
#include "greedy_energy/greedy_numeric.hpp"

namespace greedy::io {

using Cell = std::variant<std::uint64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest "%.17g" rendering; always round-trips through strtod.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string to_text(const Cell& c) {
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return std::to_string(*u);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

inline void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << to_text(row[i]);
    out << '\n';
  }
}

/// {"columns": [...], "rows": [[...], ...]} with numbers kept numeric.
inline nlohmann::json to_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) std::visit([&](const auto& v) { r.push_back(v); }, c);
    rows.push_back(std::move(r));
  }
  return {{"columns", t.columns}, {"rows", std::move(rows)}};
}

inline void write_json(std::ostream& out, const Table& t) { out << to_json(t).dump(1) << '\n'; }

/// Reads a CSV written by write_csv back as text cells.
inline Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (!s.empty() && s.back() == ',') parts.emplace_back();
    return parts;
  };
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: missing header");
  t.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto parts = split(line);
    if (parts.size() != t.columns.size()) throw std::runtime_error("read_csv: ragged row");
    std::vector<Cell> row(parts.begin(), parts.end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Column index by name.
inline std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return i;
  }
  throw std::out_of_range("no column " + name);
}

/// Numeric value of a cell; text cells are parsed with strtod.
inline double as_double(const Cell& c) {
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return static_cast<double>(*u);
  if (const auto* d = std::get_if<double>(&c)) return *d;
  const auto& s = std::get<std::string>(c);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::runtime_error("not a number: " + s);
  return v;
}

/// index, x0, x1, turn, potential, energy for the canonical circle sequence.
/// `potential` is U_n(a_n) (0 for n = 0) and `energy` is H of a_0..a_n.
inline Table exact_sequence_table(Lambda lambda, std::uint64_t n_points) {
  detail::require_below_two(lambda, "exact_sequence_table");
  if (n_points < 1) throw std::domain_error("exact_sequence_table: n must be >= 1");
  Table t;
  t.columns = {"index", "x0", "x1", "turn", "potential", "energy"};
  const DyadicEnergyTable<long double> table(lambda, DyadicEnergyTable<>::required_level(n_points));
  for (std::uint64_t n = 0; n < n_points; ++n) {
    const DyadicAngle a = canonical_point(n);
    const double theta = 2.0 * std::numbers::pi * a.turns();
    const double u = n == 0 ? 0.0 : static_cast<double>(table.extremal_potential(n));
    const double h = n == 0 ? 0.0 : static_cast<double>(table.energy(n + 1));
    t.rows.push_back({n, std::cos(theta), std::sin(theta), a.to_string(), u, h});
  }
  return t;
}

/// index, x0..xd, potential, energy for a numerically generated sequence.
inline Table numeric_sequence_table(std::span<const SpherePoint> points, Lambda lambda) {
  if (points.empty()) throw std::domain_error("numeric_sequence_table: empty sequence");
  Table t;
  const int d = points.front().dimension();
  t.columns.push_back("index");
  for (int i = 0; i <= d; ++i) t.columns.push_back("x" + std::to_string(i));
  t.columns.push_back("potential");
  t.columns.push_back("energy");
  const auto pot = extremal_potentials(points, lambda);
  double h = 0.0;
  for (std::size_t n = 0; n < points.size(); ++n) {
    h += 2.0 * pot[n];
    std::vector<Cell> row{static_cast<std::uint64_t>(n)};
    for (int i = 0; i <= d; ++i) row.emplace_back(points[n][i]);
    row.emplace_back(pot[n]);
    row.emplace_back(h);
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// N, H_minus = H - N^2 I, H_normalized = H_minus / kappa(N), U_minus = U_N(a_N) - N I.
inline Table second_order_table(const std::vector<SequenceRecord>& records) {
  Table t;
  t.columns = {"N", "H_minus", "H_normalized", "U_minus"};
  for (const auto& r : records) t.rows.push_back({r.index, r.energy_deficit, r.second_order, r.potential_excess});
  return t;
}

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::string version;
  std::string output_file;
  std::string checksum;  // sha256 of the data file bytes

  nlohmann::json to_json() const {
    return {{"command", command},   {"parameters", parameters}, {"version", version},
            {"output", output_file}, {"sha256", checksum}};
  }
};

enum class Format { csv, json };

inline std::string render(const Table& t, Format f) {
  std::ostringstream out;
  if (f == Format::csv) write_csv(out, t);
  else write_json(out, t);
  return out.str();
}

/// Writes the table to `path` and the manifest to `path + ".manifest.json"`.
inline RunManifest write_with_manifest(const std::string& path, const Table& t, Format f, RunManifest manifest) {
  const std::string body = render(t, f);
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << body;
  }
  manifest.output_file = path;
  manifest.checksum = sha256_hex(body);
  std::ofstream side(path + ".manifest.json", std::ios::binary);
  if (!side) throw std::runtime_error("cannot open " + path + ".manifest.json");
  side << manifest.to_json().dump(2) << '\n';
  return manifest;
}

}  // namespace greedy::io

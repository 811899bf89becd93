// Result serialization (CSV, JSON), the flat binary field format, and
// plain-text key-value configuration with round-trip parsing.
#ifndef MOMENTLAB_IO_HPP
#define MOMENTLAB_IO_HPP

#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"
#include "momentlab/field.hpp"
#include "momentlab/scaling.hpp"

namespace momentlab {

// ---------------------------------------------------------------------------
// Ladder / fit serialization
// ---------------------------------------------------------------------------

inline std::string ladder_csv(const LadderResult& ladder) {
  std::ostringstream os;
  os.precision(17);
  os << "delta,value,stderr\n";
  for (const auto& row : ladder.rows)
    os << row.delta << ',' << row.value << ',' << row.stderr_ << '\n';
  return os.str();
}

inline nlohmann::json fit_json(const ScalingFit& fit, double target,
                               bool verdict) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"r_squared", fit.r_squared},
          {"slope_stderr", fit.slope_stderr},
          {"target", target},
          {"verdict", verdict ? "PASS" : "FAIL"}};
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ComputationError("cannot open for writing: " + path);
  out << content;
  if (!out) throw ComputationError("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Field binary format: little-endian header
//   magic "MLF1" (4 bytes), int64 d, int64 shape[d],
//   float64 box_lo[d], float64 box_hi[d], float64 spacing[d],
// then row-major float32 values.
// ---------------------------------------------------------------------------

inline void save_field(const ScalarField& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ComputationError("cannot open for writing: " + path);
  out.write("MLF1", 4);
  auto put_i64 = [&](std::int64_t v) {
    out.write(reinterpret_cast<const char*>(&v), 8);
  };
  auto put_f64 = [&](double v) {
    out.write(reinterpret_cast<const char*>(&v), 8);
  };
  std::int64_t d = f.dim();
  put_i64(d);
  for (auto s : f.shape) put_i64(s);
  for (auto v : f.box.lo) put_f64(v);
  for (auto v : f.box.hi) put_f64(v);
  for (auto v : f.spacing) put_f64(v);
  out.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(float)));
  if (!out) throw ComputationError("write failed: " + path);
}

inline ScalarField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ComputationError("cannot open: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "MLF1", 4) != 0)
    throw ComputationError("bad field file header: " + path);
  auto get_i64 = [&]() {
    std::int64_t v;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  auto get_f64 = [&]() {
    double v;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  ScalarField f;
  auto d = get_i64();
  if (d < 2 || d > 16) throw ComputationError("bad field dimension: " + path);
  f.shape.resize(d);
  for (auto& s : f.shape) s = get_i64();
  f.box.lo.resize(d);
  f.box.hi.resize(d);
  f.spacing.resize(d);
  for (auto& v : f.box.lo) v = get_f64();
  for (auto& v : f.box.hi) v = get_f64();
  for (auto& v : f.spacing) v = get_f64();
  f.values.resize(static_cast<std::size_t>(f.size()));
  in.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(float)));
  if (!in) throw ComputationError("truncated field file: " + path);
  return f;
}

// ---------------------------------------------------------------------------
// Key-value configuration: one `key = value` per line, '#' comments.
// ---------------------------------------------------------------------------

using Config = std::map<std::string, std::string>;

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline Config parse_config(std::istream& in) {
  Config cfg;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidConfiguration("config line missing '=': " + line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw InvalidConfiguration("config line with empty key");
    cfg[key] = value;
  }
  return cfg;
}

inline Config parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfiguration("cannot open config: " + path);
  return parse_config(in);
}

inline std::string serialize_config(const Config& cfg) {
  std::ostringstream os;
  for (const auto& [k, v] : cfg) os << k << " = " << v << '\n';
  return os.str();
}

inline std::uint64_t config_hash(const Config& cfg) {
  return fnv1a(serialize_config(cfg));
}

// Comma-separated delta list; entries are decimals or dyadics like 2^-5.
inline std::vector<double> parse_delta_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    auto caret = item.find('^');
    if (caret != std::string::npos) {
      double base = std::stod(item.substr(0, caret));
      double exp = std::stod(item.substr(caret + 1));
      out.push_back(std::pow(base, exp));
    } else {
      out.push_back(std::stod(item));
    }
  }
  if (out.empty()) throw InvalidConfiguration("empty delta list");
  return out;
}

}  // namespace momentlab

#endif  // MOMENTLAB_IO_HPP

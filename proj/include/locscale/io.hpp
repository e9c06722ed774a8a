#pragma once

// File intake and emission: 1-D field CSV (x,value), ASCII PGM images,
// curve/point-set CSV with optional JSON sidecar, and the result files
// (scales.csv, decay.csv). Numbers are written with the shortest decimal
// representation that round-trips, so outputs are diff-stable.

#include <Eigen/Dense>

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "locscale/geometry.hpp"
#include "locscale/scalespace.hpp"
#include "locscale/signal.hpp"

namespace locscale {
namespace io {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) {
    // trim
    const auto b = cur.find_first_not_of(" \t\r");
    const auto e = cur.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  return out;
}

inline double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw FormatError("trailing junk in number: " + s);
    return v;
  } catch (const std::invalid_argument&) {
    throw FormatError("not a number: " + s);
  }
}

// Two-column CSV with header `x,value`, uniform spacing.
inline SampledField read_field_csv(const std::string& path,
                                   Boundary boundary = Boundary::periodic) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty file: " + path);
  auto header = split_csv_line(line);
  if (header.size() != 2 || header[0] != "x" || header[1] != "value")
    throw FormatError("field CSV must have header x,value: " + path);
  std::vector<double> xs, vs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != 2) throw FormatError("bad field CSV row: " + line);
    xs.push_back(parse_double(cells[0]));
    vs.push_back(parse_double(cells[1]));
  }
  if (xs.size() < 2) throw FormatError("field CSV needs >= 2 rows: " + path);
  const double h = xs[1] - xs[0];
  if (!(h > 0.0)) throw FormatError("x must be strictly increasing: " + path);
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (std::abs(xs[i] - xs[0] - i * h) > 1e-9 * std::max(1.0, std::abs(xs[i])))
      throw FormatError("x must be uniformly spaced: " + path);
  SampledField f;
  f.dims = 1;
  f.shape = {static_cast<int>(xs.size()), 1};
  f.h = h;
  f.boundary = boundary;
  f.values = Eigen::Map<Eigen::VectorXd>(vs.data(), static_cast<long>(vs.size()));
  f.validate();
  return f;
}

inline void write_field_csv(const std::string& path, const SampledField& f) {
  if (f.dims != 1) throw std::invalid_argument("write_field_csv: 1-D only");
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << "x,value\n";
  for (int i = 0; i < f.size(); ++i)
    out << format_double(i * f.h) << "," << format_double(f.values[i]) << "\n";
}

// ASCII PGM (magic P2); gray levels rescaled to [0,1]. Pixel spacing is
// 1/max(width,height).
inline SampledField read_pgm(const std::string& path,
                             Boundary boundary = Boundary::clamp) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::string token;
  auto next_token = [&]() -> std::string {
    std::string t;
    while (in >> t) {
      if (t[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return t;
    }
    throw FormatError("truncated PGM: " + path);
  };
  if (next_token() != "P2") throw FormatError("PGM must be ASCII P2: " + path);
  const int w = std::stoi(next_token());
  const int h = std::stoi(next_token());
  const int maxval = std::stoi(next_token());
  if (w < 1 || h < 1 || maxval < 1) throw FormatError("bad PGM header: " + path);
  SampledField f;
  f.dims = 2;
  f.shape = {w, h};
  f.h = 1.0 / std::max(w, h);
  f.boundary = boundary;
  f.values.resize(static_cast<long>(w) * h);
  for (long i = 0; i < f.values.size(); ++i)
    f.values[i] = std::stod(next_token()) / maxval;
  f.validate();
  return f;
}

struct CurveSidecar {
  int d = 1;
  int n = 2;
  bool closed = false;
  SurfaceKind kind = SurfaceKind::general_parametric;
};

// Curve/surface CSV with header `r1,...,rd,x1,...,xn[,w]`, rows in
// lattice-major order. The optional w column activates explicit weights.
struct CurveData {
  ParamSurface surface;
  std::optional<Eigen::VectorXd> explicit_weights;
};

inline CurveData read_curve_csv(const std::string& path,
                                const CurveSidecar& meta) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty file: " + path);
  auto header = split_csv_line(line);
  const int d = meta.d, n = meta.n;
  bool has_w = false;
  if (static_cast<int>(header.size()) == d + n + 1 && header.back() == "w")
    has_w = true;
  else if (static_cast<int>(header.size()) != d + n)
    throw FormatError("curve CSV header/sidecar mismatch: " + path);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) != d + n + (has_w ? 1 : 0))
      throw FormatError("bad curve CSV row: " + line);
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_double(c));
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw FormatError("curve CSV needs >= 2 rows: " + path);

  CurveData data;
  ParamSurface& s = data.surface;
  s.d = d;
  s.n = n;
  s.kind = meta.kind;
  s.closed = meta.closed;
  // Lattice extents from the parameter columns: axis 0 varies fastest.
  const long M = static_cast<long>(rows.size());
  if (d == 1) {
    s.extents = {static_cast<int>(M)};
    s.h_r = rows[1][0] - rows[0][0];
  } else {
    int e0 = 1;
    while (e0 < static_cast<int>(M) && rows[e0][0] != rows[0][0]) ++e0;
    if (e0 < 2 || M % e0 != 0)
      throw FormatError("curve CSV rows are not lattice-major: " + path);
    s.extents.assign(d, 0);
    s.extents[0] = e0;
    long rest = M / e0;
    for (int ax = 1; ax < d - 1; ++ax) {
      // only d <= 2 is produced by the tools; deeper lattices would need
      // more header metadata
      throw FormatError("curve CSV supports d <= 2");
    }
    if (d == 2) s.extents[1] = static_cast<int>(rest);
    s.h_r = rows[1][0] - rows[0][0];
  }
  if (!(s.h_r > 0.0)) throw FormatError("parameter spacing must be > 0: " + path);
  s.samples.resize(n, M);
  if (has_w) data.explicit_weights = Eigen::VectorXd(M);
  for (long i = 0; i < M; ++i) {
    for (int j = 0; j < n; ++j) s.samples(j, i) = rows[i][d + j];
    if (has_w) (*data.explicit_weights)[i] = rows[i][d + n];
  }
  s.validate();
  return data;
}

inline void write_curve_csv(const std::string& path, const ParamSurface& s) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  for (int i = 0; i < s.d; ++i) out << "r" << (i + 1) << ",";
  for (int j = 0; j < s.n; ++j) out << "x" << (j + 1) << (j + 1 < s.n ? "," : "\n");
  std::vector<int> c;
  for (long idx = 0; idx < s.num_points(); ++idx) {
    s.unravel(idx, c);
    for (int i = 0; i < s.d; ++i) out << format_double(c[i] * s.h_r) << ",";
    for (int j = 0; j < s.n; ++j)
      out << format_double(s.samples(j, idx)) << (j + 1 < s.n ? "," : "\n");
  }
}

// 2-D point set CSV with header `x,y` (beta-number intake).
inline std::vector<Eigen::Vector2d> read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty file: " + path);
  auto header = split_csv_line(line);
  if (header.size() != 2) throw FormatError("point CSV must have 2 columns");
  std::vector<Eigen::Vector2d> pts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != 2) throw FormatError("bad point CSV row: " + line);
    pts.emplace_back(parse_double(cells[0]), parse_double(cells[1]));
  }
  return pts;
}

inline void write_points_csv(const std::string& path,
                             const std::vector<Eigen::Vector2d>& pts) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << "x,y\n";
  for (const auto& p : pts)
    out << format_double(p.x()) << "," << format_double(p.y()) << "\n";
}

// scales.csv: one row per detected local scale of every point.
inline void write_scales_csv(const std::string& path,
                             const std::vector<LocalScaleSet>& sets) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << "point_id,tau,t,S,d2S,visible,separated\n";
  for (const auto& set : sets)
    for (const auto& e : set.entries)
      out << set.point << "," << format_double(e.tau) << ","
          << format_double(e.t) << "," << format_double(e.value) << ","
          << format_double(e.curvature) << "," << (e.visible ? 1 : 0) << ","
          << (e.separated ? 1 : 0) << "\n";
}

inline void write_decay_csv(const std::string& path,
                            const std::vector<std::pair<int, double>>& rows) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << "N,measure\n";
  for (const auto& [n, m] : rows)
    out << n << "," << format_double(m) << "\n";
}

}  // namespace io
}  // namespace locscale

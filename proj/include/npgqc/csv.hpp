#pragma once

// CSV output: comma separated, '.' decimal, header row, LF endings, floats
// at 17 significant digits so rewrites are byte-identical.

#include "npgqc/metrics.hpp"
#include "npgqc/report.hpp"
#include "npgqc/types.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace npgqc {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_csv(const std::string& path, const Series& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (size_t i = 0; i < s.columns.size(); ++i) {
    if (i) out << ',';
    out << s.columns[i];
  }
  out << '\n';
  for (const auto& row : s.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

/// Sweep grid as CSV: first axis down the rows, second across the columns
/// (1-D grids become a two-column table).
inline void write_csv(const std::string& path, const SweepGrid& g) {
  Series s;
  if (g.axis_values.size() == 1) {
    s.columns = {g.axis_names[0], "F1"};
    for (size_t i = 0; i < g.axis_values[0].size(); ++i)
      s.rows.push_back({g.axis_values[0][i], g.values[i]});
  } else {
    s.columns.push_back(g.axis_names[0] + "\\" + g.axis_names[1]);
    for (double v : g.axis_values[1]) s.columns.push_back(format_double(v));
    const size_t ne = g.axis_values[1].size();
    for (size_t i = 0; i < g.axis_values[0].size(); ++i) {
      std::vector<double> row;
      row.push_back(g.axis_values[0][i]);
      for (size_t j = 0; j < ne; ++j) row.push_back(g.values[i * ne + j]);
      s.rows.push_back(std::move(row));
    }
  }
  write_csv(path, s);
}

/// Complex matrix as row-major (row, col, re, im) records.
inline void write_csv(const std::string& path, const MatX& m) {
  Series s;
  s.columns = {"row", "col", "re", "im"};
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      s.rows.push_back({static_cast<double>(i), static_cast<double>(j), m(i, j).real(),
                        m(i, j).imag()});
  write_csv(path, s);
}

/// Control field sampled on a uniform grid: (t, Delta, Re Omega, Im Omega).
inline Series control_series(const ControlField& c, int samples = 1001) {
  Series s;
  s.columns = {"t", "delta", "re_omega", "im_omega"};
  for (int k = 0; k < samples; ++k) {
    const double t = c.tau * k / (samples - 1);
    const cplx om = c.omega(t);
    s.rows.push_back({t, c.delta(t), om.real(), om.imag()});
  }
  return s;
}

} // namespace npgqc

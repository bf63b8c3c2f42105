#pragma once

#include <map>
#include <string>
#include <vector>

namespace npgqc {

/// Column-labelled numeric table (time series, matrices, sweep rows).
struct Series {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Result container for one simulated gate: named fidelity/diagnostic
/// scalars plus named tables, everything CSV-serializable.
struct GateReport {
  std::map<std::string, double> scalars;
  std::map<std::string, Series> series;
};

} // namespace npgqc

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kent/measures.hpp"
#include "kent/states.hpp"

namespace kent {

/// Which measure a scan or curve evaluates: E^(k,n) over the full register,
/// or the sub-partition measure when `context` is set.
struct MeasureSpec {
  int k = 2;
  std::optional<Partition> context;

  std::string label() const;
};

struct ScanSpec {
  NoisyFamily family;  // p is ignored; the scan drives it
  MeasureSpec measure;
  double p_lo = 0.0;
  double p_hi = 1.0;
  double p_tol = 1e-7;
};

struct ThresholdResult {
  double low = 0.0;   // measure still zero here
  double high = 1.0;  // measure positive here
  int iterations = 0;
};

double measure_at(const NoisyFamily& family, double p, const Database& db,
                  const MeasureSpec& measure);
bool detected_at(const NoisyFamily& family, double p, const Database& db,
                 const MeasureSpec& measure);

/// Bisect the single zero-crossing of the (convex piecewise-linear) noisy
/// family measure. The bracket is verified first: the measure must be zero
/// at p_lo and positive at p_hi.
ThresholdResult threshold_bisect(const ScanSpec& spec, const Database& db);

struct Curve {
  std::vector<std::string> labels;          // column labels after "p"
  std::vector<double> grid;                 // ascending p values
  std::vector<std::vector<double>> values;  // values[row][column]
};

Curve curve(const NoisyFamily& family, const std::vector<MeasureSpec>& measures,
            const Database& db, const std::vector<double>& p_grid);

/// CSV emission: header "p,<labels>", 17-significant-digit floats, LF endings.
void write_curve_csv(const Curve& c, std::ostream& out);

std::vector<double> parse_grid(const std::string& spec);  // "lo:hi:step"

}  // namespace kent

#include "kent/scan.hpp"

#include <cmath>
#include <cstdio>

namespace kent {

std::string MeasureSpec::label() const {
  std::string s = "k=" + std::to_string(k);
  if (context) s += "@" + canonical_key(*context);
  return s;
}

double measure_at(const NoisyFamily& family, double p, const Database& db,
                  const MeasureSpec& measure) {
  NoisyFamily at = family;
  at.p = p;
  const Matrix rho = family_state(at);
  const MeasureResult r = measure.context
                              ? e_w_subpartition(rho, db, *measure.context, measure.k)
                              : e_w_k(rho, db, measure.k);
  return r.value;
}

bool detected_at(const NoisyFamily& family, double p, const Database& db,
                 const MeasureSpec& measure) {
  return measure_at(family, p, db, measure) > 0.0;
}

ThresholdResult threshold_bisect(const ScanSpec& spec, const Database& db) {
  if (!(spec.p_lo >= 0.0 && spec.p_lo < spec.p_hi && spec.p_hi <= 1.0))
    throw InvalidParameter("bracket must satisfy 0 <= p_lo < p_hi <= 1");
  if (spec.p_tol <= 0.0) throw InvalidParameter("p_tol must be positive");

  if (detected_at(spec.family, spec.p_lo, db, spec.measure))
    throw BracketError("measure is already positive at p_lo");
  if (!detected_at(spec.family, spec.p_hi, db, spec.measure))
    throw BracketError("measure is still zero at p_hi");

  ThresholdResult out;
  out.low = spec.p_lo;
  out.high = spec.p_hi;
  while (out.high - out.low > spec.p_tol) {
    const double mid = 0.5 * (out.low + out.high);
    if (mid <= out.low || mid >= out.high) break;  // resolution floor
    if (detected_at(spec.family, mid, db, spec.measure))
      out.high = mid;
    else
      out.low = mid;
    ++out.iterations;
  }
  return out;
}

Curve curve(const NoisyFamily& family, const std::vector<MeasureSpec>& measures,
            const Database& db, const std::vector<double>& p_grid) {
  if (measures.empty()) throw InvalidParameter("curve needs at least one measure");
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    if (p_grid[i] < 0.0 || p_grid[i] > 1.0) throw InvalidParameter("grid point outside [0,1]");
    if (i > 0 && p_grid[i] <= p_grid[i - 1])
      throw InvalidParameter("grid must be strictly ascending");
  }

  Curve c;
  c.grid = p_grid;
  for (const auto& m : measures) c.labels.push_back(m.label());
  c.values.reserve(p_grid.size());
  for (double p : p_grid) {
    std::vector<double> row;
    row.reserve(measures.size());
    for (const auto& m : measures) row.push_back(measure_at(family, p, db, m));
    c.values.push_back(std::move(row));
  }
  return c;
}

void write_curve_csv(const Curve& c, std::ostream& out) {
  out << "p";
  for (const auto& label : c.labels) out << "," << label;
  out << "\n";
  char buf[64];
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", c.grid[i]);
    out << buf;
    for (double v : c.values[i]) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << "," << buf;
    }
    out << "\n";
  }
}

std::vector<double> parse_grid(const std::string& spec) {
  double lo = 0.0, hi = 0.0, step = 0.0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0)
    throw InvalidParameter("grid spec must be lo:hi:step with step > 0");
  std::vector<double> grid;
  // fixed count avoids drift deciding whether hi lands on the grid
  const int steps = static_cast<int>(std::round((hi - lo) / step));
  for (int i = 0; i <= steps; ++i) {
    double p = lo + step * i;
    if (p > hi) p = hi;
    grid.push_back(p);
  }
  if (grid.empty() || std::abs(grid.back() - hi) > 1e-12) grid.push_back(hi);
  return grid;
}

}  // namespace kent

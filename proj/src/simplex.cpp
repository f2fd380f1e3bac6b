#include "banachlab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "banachlab/errors.hpp"

namespace banachlab {

LpSolution solve_lp_max(std::span<const double> c, const std::vector<std::vector<double>>& rows,
                        std::span<const double> rhs) {
  const std::size_t n = c.size();
  const std::size_t m = rows.size();
  if (rhs.size() != m) throw ArgumentError("LP: rhs size mismatch");
  for (std::size_t k = 0; k < m; ++k) {
    if (rows[k].size() != n) throw ArgumentError("LP: row width mismatch");
    if (rhs[k] < 0.0) throw ArgumentError("LP: rhs must be nonnegative");
  }

  constexpr double kCostEps = 1e-12;
  constexpr double kPivotEps = 1e-9;
  const std::size_t width = n + m + 1;
  std::vector<double> t((m + 1) * width, 0.0);
  auto at = [&](std::size_t r, std::size_t col) -> double& { return t[r * width + col]; };
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) at(r, j) = rows[r][j];
    at(r, n + r) = 1.0;
    at(r, width - 1) = rhs[r];
  }
  for (std::size_t j = 0; j < n; ++j) at(m, j) = -c[j];
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;

  LpSolution out;
  const std::size_t max_pivots = 50 * (n + m) + 1000;
  std::size_t degenerate_run = 0;
  for (std::size_t pivot = 0; pivot < max_pivots; ++pivot) {
    // Dantzig's rule; Bland's rule after a run of degenerate pivots.
    const bool bland = degenerate_run > 2 * (n + m);
    std::size_t enter = width;
    double most_negative = -kCostEps;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (at(m, j) < most_negative) {
        enter = j;
        if (bland) break;
        most_negative = at(m, j);
      }
    }
    if (enter == width) break;

    // Two-pass ratio test: smallest ratio with a small feasibility tolerance,
    // then the largest pivot among rows within it.
    double min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double a = at(r, enter);
      if (a > kPivotEps) min_ratio = std::min(min_ratio, (std::max(at(r, width - 1), 0.0) + 1e-13) / a);
    }
    if (!std::isfinite(min_ratio)) {
      out.bounded = false;
      return out;
    }
    std::size_t leave = m;
    for (std::size_t r = 0; r < m; ++r) {
      const double a = at(r, enter);
      if (a <= kPivotEps || std::max(at(r, width - 1), 0.0) / a > min_ratio) continue;
      if (leave == m || (bland ? basis[r] < basis[leave] : a > at(leave, enter))) leave = r;
    }

    const double step = std::max(at(leave, width - 1), 0.0) / at(leave, enter);
    degenerate_run = step <= 1e-15 ? degenerate_run + 1 : 0;
    const double piv = at(leave, enter);
    for (std::size_t j = 0; j < width; ++j) at(leave, j) /= piv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double factor = at(r, enter);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) at(r, j) -= factor * at(leave, j);
    }
    basis[leave] = enter;
  }

  out.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) out.x[basis[r]] = std::max(0.0, at(r, width - 1));
  }
  out.duals.assign(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) out.duals[r] = std::max(0.0, at(m, n + r));
  out.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.objective += c[j] * out.x[j];
  return out;
}

}  // namespace banachlab

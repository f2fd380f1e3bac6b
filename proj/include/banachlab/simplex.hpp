#ifndef BANACHLAB_SIMPLEX_HPP
#define BANACHLAB_SIMPLEX_HPP

#include <span>
#include <vector>

namespace banachlab {

struct LpSolution {
  std::vector<double> x;
  std::vector<double> duals;  // one per row, clipped at 0
  double objective = 0.0;
  bool bounded = true;
};

// maximize c.x subject to rows[k].x <= rhs[k], x >= 0, with rhs >= 0 so the
// origin is feasible. Dense tableau; meant for a few dozen variables and a few
// hundred rows. Callers that need rigorous bounds should certify x and duals
// themselves (weak duality), since the tableau accumulates rounding.
LpSolution solve_lp_max(std::span<const double> c, const std::vector<std::vector<double>>& rows,
                        std::span<const double> rhs);

}  // namespace banachlab

#endif  // BANACHLAB_SIMPLEX_HPP

#include "banachlab/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "banachlab/errors.hpp"
#include "banachlab/seq_vector.hpp"

namespace banachlab {

GaugeFunction::GaugeFunction(std::function<double(double)> fn, std::string label)
    : fn_(std::move(fn)), label_(std::move(label)) {}

GaugeFunction GaugeFunction::log2p1() {
  return {[](double x) { return std::log2(x + 1.0); }, "log2p1"};
}

GaugeFunction GaugeFunction::sqrt() {
  return {[](double x) { return std::sqrt(x); }, "sqrt"};
}

GaugeFunction GaugeFunction::one() {
  return {[](double) { return 1.0; }, "one"};
}

GaugeFunction GaugeFunction::power(double a) {
  if (!(a >= 0.0)) throw DomainError("pow gauge needs a >= 0");
  return {[a](double x) { return std::pow(x, a); }, "pow:" + format_real(a)};
}

double GaugeFunction::operator()(double x) const {
  if (!(x >= 1.0)) throw DomainError("gauge argument must be >= 1");
  return fn_(x);
}

GaugeFunction parse_gauge(std::string_view name) {
  if (name == "log2p1") return GaugeFunction::log2p1();
  if (name == "sqrt") return GaugeFunction::sqrt();
  if (name == "one") return GaugeFunction::one();
  if (name.substr(0, 4) == "pow:") {
    const std::string arg(name.substr(4));
    char* end = nullptr;
    const double a = std::strtod(arg.c_str(), &end);
    if (arg.empty() || end != arg.c_str() + arg.size()) throw ArgumentError("bad pow gauge exponent '" + arg + "'");
    return GaugeFunction::power(a);
  }
  throw ArgumentError("unknown gauge '" + std::string(name) + "' (log2p1, sqrt, one, pow:<a>)");
}

double eval_gauge(const GaugeFunction& f, double x) { return f(x); }

std::vector<double> geometric_grid(int octaves, int steps_per_octave) {
  std::vector<double> grid;
  const int n = octaves * steps_per_octave;
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) grid.push_back(std::exp2(static_cast<double>(k) / steps_per_octave));
  return grid;
}

std::vector<double> default_gauge_grid() { return geometric_grid(20, 8); }
std::vector<double> default_prop5_grid() { return geometric_grid(40, 8); }

GaugeClassReport check_gauge_class(const GaugeFunction& f, const std::vector<double>& grid, double tolerance) {
  if (grid.size() < 3) throw ArgumentError("gauge grid needs at least 3 points");
  if (grid.front() != 1.0) throw ArgumentError("gauge grid must start at 1");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw ArgumentError("gauge grid must be strictly increasing");
  }

  GaugeClassReport report;
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) values[k] = f(grid[k]);

  auto note = [&](double violation, double& slot, bool& flag, double x) {
    slot = std::max(slot, violation);
    if (violation > tolerance) {
      if (flag) report.witness.push_back(x);
      flag = false;
    }
  };

  // (1) f(1) = 1; the strict inequality f(x) < x is enforced with a 2*tol margin
  // so that f(x) = x registers as a violation above tolerance.
  note(std::fabs(values[0] - 1.0), report.condition1_violation, report.condition1_ok, grid[0]);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    note(values[k] - grid[k] + 2.0 * tolerance, report.condition1_violation, report.condition1_ok, grid[k]);
    note(values[k - 1] - values[k], report.condition1_violation, report.condition1_ok, grid[k]);
    note(1.0 - values[k], report.condition1_violation, report.condition1_ok, grid[k]);
  }

  // (2) second divided differences of x / f(x) are <= 0
  for (std::size_t k = 0; k + 2 < grid.size(); ++k) {
    const double x0 = grid[k], x1 = grid[k + 1], x2 = grid[k + 2];
    const double h0 = x0 / values[k], h1 = x1 / values[k + 1], h2 = x2 / values[k + 2];
    const double dd = ((h2 - h1) / (x2 - x1) - (h1 - h0) / (x1 - x0)) / (x2 - x0);
    note(dd, report.condition2_violation, report.condition2_ok, x1);
  }

  // (3) f(xy) <= f(x) f(y) on grid pairs with xy inside the grid range
  const double top = grid.back();
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = a; b < grid.size(); ++b) {
      const double xy = grid[a] * grid[b];
      if (xy > top) break;
      note(f(xy) - values[a] * values[b], report.condition3_violation, report.condition3_ok, xy);
    }
  }

  report.worst_violation =
      std::max({report.condition1_violation, report.condition2_violation, report.condition3_violation});
  return report;
}

Prop5Result check_prop5_hypothesis(const GaugeFunction& f, double a, const std::vector<double>& grid) {
  if (!(a > 0.0)) throw DomainError("decay exponent must be positive");
  if (grid.size() < 3) throw ArgumentError("decay grid needs at least 3 points");
  Prop5Result result;
  result.trend.name = "decay-trend";
  result.trend.columns = {"x", "f(x)x^-a"};
  result.trend.metadata["gauge"] = f.label();
  result.trend.metadata["a"] = a;

  const double tail_start = std::sqrt(grid.back());
  bool decreasing = true;
  bool any_tail = false;
  double previous = 0.0;
  bool have_previous = false;
  for (double x : grid) {
    const double v = f(x) * std::pow(x, -a);
    result.trend.add_row({x, v});
    if (x < tail_start) continue;
    if (have_previous && !(v < previous)) decreasing = false;
    previous = v;
    have_previous = true;
    any_tail = true;
  }
  result.holds = any_tail && decreasing;
  result.trend.metadata["holds"] = result.holds;
  return result;
}

}  // namespace banachlab

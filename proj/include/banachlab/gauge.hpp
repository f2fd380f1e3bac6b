#ifndef BANACHLAB_GAUGE_HPP
#define BANACHLAB_GAUGE_HPP

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "banachlab/report.hpp"

namespace banachlab {

// An increasing function f : [1, inf) -> [1, inf) used as the lower-estimate weight.
class GaugeFunction {
 public:
  GaugeFunction(std::function<double(double)> fn, std::string label);

  // log2(x + 1)
  static GaugeFunction log2p1();
  static GaugeFunction sqrt();
  static GaugeFunction one();
  static GaugeFunction power(double a);

  // Throws DomainError for x < 1.
  double operator()(double x) const;
  const std::string& label() const noexcept { return label_; }

 private:
  std::function<double(double)> fn_;
  std::string label_;
};

// Accepts the CLI names `log2p1`, `sqrt`, `one`, `pow:<a>`.
GaugeFunction parse_gauge(std::string_view name);

double eval_gauge(const GaugeFunction& f, double x);

inline constexpr double kGaugeCheckTolerance = 1e-10;

struct GaugeClassReport {
  bool condition1_ok = true;  // f(1) = 1, f(x) < x for x > 1, f nondecreasing
  bool condition2_ok = true;  // x / f(x) concave
  bool condition3_ok = true;  // f(xy) <= f(x) f(y)
  bool condition_prop5_ok = true;
  double worst_violation = 0.0;
  double condition1_violation = 0.0;
  double condition2_violation = 0.0;
  double condition3_violation = 0.0;
  std::vector<double> witness;

  bool all_ok() const noexcept { return condition1_ok && condition2_ok && condition3_ok; }
};

// Geometric grid 2^(k/steps_per_octave), k = 0 .. octaves * steps_per_octave.
std::vector<double> geometric_grid(int octaves, int steps_per_octave);
// Ratio 2^(1/8) from 1 to 2^20.
std::vector<double> default_gauge_grid();

GaugeClassReport check_gauge_class(const GaugeFunction& f, const std::vector<double>& grid,
                                   double tolerance = kGaugeCheckTolerance);

struct Prop5Result {
  bool holds = false;
  ExperimentReport trend;  // columns x, f(x) x^-a
};

// Whether f(x) x^(-a) is strictly decreasing along the upper half of the grid
// (x >= sqrt(max grid)). The limit itself cannot be certified from samples.
Prop5Result check_prop5_hypothesis(const GaugeFunction& f, double a, const std::vector<double>& grid);
// Ratio 2^(1/8) from 1 to 2^40.
std::vector<double> default_prop5_grid();

}  // namespace banachlab

#endif  // BANACHLAB_GAUGE_HPP

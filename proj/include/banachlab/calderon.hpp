#ifndef BANACHLAB_CALDERON_HPP
#define BANACHLAB_CALDERON_HPP

#include <span>
#include <vector>

#include "banachlab/gauge.hpp"
#include "banachlab/norm.hpp"
#include "banachlab/seq_vector.hpp"
#include "banachlab/space.hpp"

namespace banachlab {

// |z| = x^(1-theta) y^theta with x, y >= 0 supported on supp(z).
struct Factorization {
  SeqVector x;
  SeqVector y;
  double x_norm = 0.0;
  double y_norm = 0.0;
  double achieved_value = 0.0;  // max(x_norm, y_norm)
};

struct CalderonResult {
  double value = 0.0;  // == factorization.achieved_value
  double lower = 0.0;  // from a dual-feasible pairing
  double upper = 0.0;
  Factorization factorization;
  std::size_t evaluations = 0;
};

// inf { max(||x||_X, ||y||_Y) : |z| = |x|^(1-theta) |y|^theta }.
// Minimized over x = |z| e^(theta s), y = |z| e^(-(1-theta) s), which satisfies the
// constraint identically; the log-norms are convex in s.
CalderonResult calderon_norm(const SpacePtr& x_space, const SpacePtr& y_space, double theta, const SeqVector& z,
                             const EvalOptions& options = {});

// S_{p,r}: conv(S, p) for r = inf, otherwise l_t^(1-theta) S^theta with
// theta = 1/p - 1/r and t = (1 - theta) r. (p, r) = (1, inf) gives S itself.
SpacePtr space_spr(double p, double r, const GaugeFunction& f);

// p with 1/p = (1-theta)/p0 + theta/p1 (1/inf = 0).
double lp_product_oracle(double p0, double p1, double theta);

struct SummingIdentity {
  double expected = 0.0;  // n^(1/p) f(n)^(1/r - 1/p)
  double computed = 0.0;
  double difference = 0.0;
};

SummingIdentity spr_summing_identity(std::size_t n, double p, double r, const GaugeFunction& f,
                                     const EvalOptions& options = {});

namespace detail {

struct DenseCalderon {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> x;
  std::vector<double> y;
  double x_norm = 0.0;
  double y_norm = 0.0;
  std::vector<double> dual_pairing;  // a^(1-theta) b^theta, a norming functional of the product
  std::size_t evaluations = 0;
};

// z must be strictly positive (support order).
DenseCalderon calderon_dense(const Space& x_space, const Space& y_space, double theta, std::span<const double> z,
                             const EvalOptions& options);

}  // namespace detail

}  // namespace banachlab

#endif  // BANACHLAB_CALDERON_HPP

#ifndef BANACHLAB_NORM_HPP
#define BANACHLAB_NORM_HPP

#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "banachlab/schlumprecht.hpp"
#include "banachlab/seq_vector.hpp"
#include "banachlab/space.hpp"

namespace banachlab {

struct EvalOptions {
  double closed_form_tol = 1e-12;
  double dp_tol = 1e-9;
  double iterative_tol = 1e-6;  // relative bracket width for Calderon products and dual LPs
  std::size_t dp_cap = kDefaultDpCap;
  std::size_t budget = 100000;  // norm evaluations per iterative solve
};

// Value with a two-sided bracket. Closed forms and the DP have lower == upper.
// For iterative branches `value` is attained by a witness (a factorization or a
// feasible maximizer) and lies in [lower, upper].
struct NormValue {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool analytic = false;
};

// Evaluates one descriptor. Results are cached per canonical vector; the
// cache is mutex-guarded so an evaluator can be shared across workers.
class NormEvaluator {
 public:
  explicit NormEvaluator(SpacePtr space, EvalOptions options = {});

  double norm(const SeqVector& x) const { return evaluate(x).value; }
  NormValue evaluate(const SeqVector& x) const;

  const Space& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  const EvalOptions& options() const noexcept { return options_; }
  // Width allowed for this descriptor: closed-form, DP or iterative tolerance.
  double tolerance() const;

 private:
  SpacePtr space_;
  EvalOptions options_;
  mutable std::mutex mutex_;
  mutable std::map<SeqVector::Entries, NormValue> cache_;
};

NormValue evaluate_norm(const Space& space, const SeqVector& x, const EvalOptions& options = {});

// ||base(|x|^p)||^(1/p)
double convexified_norm(const SpacePtr& base, double p, const SeqVector& x, const EvalOptions& options = {});

namespace detail {

// Piece of a lattice norm: P(w) = (sum_i weights_i w_i^power)^(1/power), with
// P(w) <= ||w|| for every w >= 0 and equality (up to the bracket) at the point
// where it was produced.
struct Piece {
  std::vector<double> weights;
  double power = 1.0;
};

struct DenseEval {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool analytic = false;
  Piece piece;
};

// Lattice norm of a nonnegative vector given in support order. Every lattice
// descriptor here is invariant under spreading, so compressed coordinates are exact.
DenseEval eval_dense(const Space& space, std::span<const double> w, const EvalOptions& options);

// Linear norming functional of a piece at w: a_i = c_i w_i^(q-1) / P(w)^(q-1),
// so <w, a> = P(w) and <w', a> <= P(w') for all w' >= 0.
std::vector<double> linear_functional(const Piece& piece, std::span<const double> w);
double piece_value(const Piece& piece, std::span<const double> w);

// Rewrites Dual(X) into an equivalent descriptor evaluable by eval_dense:
// l_p -> l_q, Dual(Dual X) -> X, Dual(X^(1-t) Y^t) -> (X*)^(1-t) (Y*)^t,
// Dual(conv(B,p)) -> (B*)^(1/p) l_1^(1-1/p). Dual(S) stays (solved by LP).
SpacePtr dual_rewrite(const SpacePtr& base);

double conjugate_exponent(double p);

}  // namespace detail

}  // namespace banachlab

#endif  // BANACHLAB_NORM_HPP

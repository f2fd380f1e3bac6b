#ifndef BANACHLAB_DUALITY_HPP
#define BANACHLAB_DUALITY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "banachlab/gauge.hpp"
#include "banachlab/norm.hpp"
#include "banachlab/report.hpp"
#include "banachlab/seq_vector.hpp"
#include "banachlab/space.hpp"

namespace banachlab {

// sup { <x, g> : ||x||_X <= 1 } with the maximizer that attains `value`.
// [lower, upper] brackets the true dual norm; lower == <maximizer, g>.
struct DualEvaluation {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  SeqVector maximizer;
};

DualEvaluation dual_norm(const SpacePtr& space, const SeqVector& g, const EvalOptions& options = {});

// For random nonnegative z of dimension 1..dim, compares the Calderon product
// X^(1/2) (X*)^(1/2) against ||z||_2. Rows: sample, dim, product, l2, rel_dev.
ExperimentReport lozanovskii_check(const SpacePtr& space, std::size_t samples, std::size_t dim, std::uint64_t seed,
                                   const EvalOptions& options = {});

struct BlockBound {
  double lhs = 0.0;  // ||sum u_i*||_{X*}
  double rhs = 0.0;  // f(n) (sum ||u_i*||_{X*}^q)^(1/q)
  bool ok = false;
};

// Upper block estimate for dual blocks with q conjugate to p. Blocks must have
// successive disjoint interval supports.
BlockBound dual_block_bound(const SpacePtr& space, double p, const GaugeFunction& f,
                            const std::vector<SeqVector>& blocks, const EvalOptions& options = {});

namespace detail {

struct DenseDualS {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> maximizer;  // ||maximizer||_S <= 1
};

// ||g||_{S*} for g >= 0 by a linear program over the tree functionals of S,
// generated lazily: each LP solution is checked with the DP and the violated
// certificate is added as a constraint.
DenseDualS dual_s_dense(std::span<const double> g, const GaugeFunction& f, const EvalOptions& options);

// All tree functionals on n coordinates (leaves and splits over contiguous
// covers). Grows very fast; intended for n <= 5.
std::vector<std::vector<double>> enumerate_tree_functionals(std::size_t n, const GaugeFunction& f);

}  // namespace detail

}  // namespace banachlab

#endif  // BANACHLAB_DUALITY_HPP

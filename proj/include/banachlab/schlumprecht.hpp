#ifndef BANACHLAB_SCHLUMPRECHT_HPP
#define BANACHLAB_SCHLUMPRECHT_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "banachlab/gauge.hpp"
#include "banachlab/report.hpp"
#include "banachlab/seq_vector.hpp"

namespace banachlab {

inline constexpr std::size_t kDefaultDpCap = 64;

// Tree of interval splits witnessing an S(f) norm value. A leaf picks one
// coordinate (the sup-norm term); a split with n >= 2 children carries weight
// 1/f(n). Read as a linear functional it has dual norm at most one.
struct PartitionCertificate {
  enum class Kind { kLeaf, kSplit };

  Kind kind = Kind::kLeaf;
  Interval interval{1, 1};
  std::size_t coordinate = 1;  // leaf only
  int sign = 1;                // leaf only
  std::size_t block_count = 0; // split only
  double weight = 1.0;         // split only: 1 / f(block_count)
  std::vector<PartitionCertificate> children;

  // Coefficients of the induced functional: product of split weights along the
  // root-leaf path times the leaf sign.
  SeqVector functional() const;
  double apply(const SeqVector& y) const;
  // One node per line, two-space indent per level, e.g. `split n=3 w=0.5 [1..4]`.
  std::string render() const;
};

struct SNormResult {
  double value = 0.0;
  PartitionCertificate certificate;
  bool analytic = false;  // n/f(n) identity used instead of the DP
};

// Interval DP over a dense array of magnitudes (zeros allowed), 0-based.
//   best(i,j)       = max(max_{i<=k<=j} a_k, max_{n>=2} partition(i,j,n) / f(n))
//   partition(i,j,n) = max over contiguous splits of [i,j] into n blocks of sum best(block)
// Blocks at a split are strictly shorter, so one pass in increasing length is exact.
class DpTable {
 public:
  DpTable(std::span<const double> magnitudes, const GaugeFunction& f);

  std::size_t size() const noexcept { return n_; }
  double best(std::size_t i, std::size_t j) const { return best_[idx(i, j)]; }
  // n in [1, j - i + 1]; partition(i, j, 1) == best(i, j).
  double partition(std::size_t i, std::size_t j, std::size_t n) const;
  double gauge_at(std::size_t n) const { return fvals_[n]; }

  // Maximizing contiguous blocks of [i,j] into n pieces, as 0-based [lo, hi] pairs.
  std::vector<std::pair<std::size_t, std::size_t>> blocks(std::size_t i, std::size_t j, std::size_t n) const;
  // Certificate for best(i,j); `index_of` maps 0-based positions to coordinates, `signs` gives leaf signs.
  PartitionCertificate certificate(std::size_t i, std::size_t j, std::span<const std::size_t> index_of,
                                   std::span<const int> signs) const;

 private:
  std::size_t idx(std::size_t i, std::size_t j) const { return i * n_ + j; }
  std::size_t pidx(std::size_t i, std::size_t j, std::size_t n) const { return (i * n_ + j) * (n_ + 1) + n; }

  std::size_t n_;
  std::vector<double> a_;
  std::vector<double> fvals_;
  std::vector<double> best_;
  std::vector<std::size_t> best_blocks_;  // 0 = leaf
  std::vector<std::size_t> leaf_of_;
  std::vector<double> part_;
  std::vector<std::size_t> split_;  // end of first block
};

// ||x||_{S(f)}. Support sizes above `cap` are accepted only for vectors whose
// nonzero magnitudes are all equal (analytic n/f(n) path); otherwise SizeCapError.
SNormResult s_norm(const SeqVector& x, const GaugeFunction& f, std::size_t cap = kDefaultDpCap);

struct BestPartition {
  double value = 0.0;
  std::vector<Interval> blocks;
};

// max over E_1 < ... < E_n inside E of f(n)^-1 sum ||E_i x||_S; blocks cover E contiguously.
BestPartition best_partition(const SeqVector& x, const GaugeFunction& f, const Interval& e, std::size_t n,
                             std::size_t cap = kDefaultDpCap);

// Applies the defining max once to claimed values on every interval of the
// support and returns the largest absolute change.
double fixed_point_check(const SeqVector& x, const GaugeFunction& f,
                         const std::function<double(const SeqVector&)>& value_fn);

// Iterates the defining map from the sup-norm seed until the interval table is
// stable; returns the root value after each application (entry 0 is the seed).
std::vector<double> iterate_defining_map(const SeqVector& x, const GaugeFunction& f, std::size_t max_steps = 1000);

// Rows (n, dp_value, n/f(n), abs_diff) for n = 1 .. n_max.
ExperimentReport summing_norm_table(std::size_t n_max, const GaugeFunction& f, std::size_t cap = kDefaultDpCap);

namespace detail {

struct DenseSNorm {
  double value = 0.0;
  std::vector<double> functional;  // nonnegative, same length as the input
  bool analytic = false;
};

// Norm and norming functional of a dense magnitude vector.
DenseSNorm s_norm_dense(std::span<const double> magnitudes, const GaugeFunction& f, std::size_t cap);

}  // namespace detail

}  // namespace banachlab

#endif  // BANACHLAB_SCHLUMPRECHT_HPP

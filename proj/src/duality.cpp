#include "banachlab/duality.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "banachlab/calderon.hpp"
#include "banachlab/errors.hpp"
#include "banachlab/parallel.hpp"
#include "banachlab/simplex.hpp"

namespace banachlab {

namespace detail {

DenseDualS dual_s_dense(std::span<const double> g, const GaugeFunction& f, const EvalOptions& options) {
  const std::size_t n = g.size();
  DenseDualS out;
  out.maximizer.assign(n, 0.0);
  if (n == 0) return out;

  // Leaves bound every coordinate by 1; the remaining facets come from the DP.
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < n; ++i) {
    rows.emplace_back(n, 0.0);
    rows.back()[i] = 1.0;
    rhs.push_back(1.0);
  }

  // Both ends are certified independently of the LP's rounding: the lower end
  // by normalizing the primal point with the DP, the upper end by weak duality
  // after repairing the duals with leaf rows.
  const double target = 1e-12;
  std::size_t evaluations = 0;
  out.upper = kInf;
  while (true) {
    const auto lp = solve_lp_max(g, rows, rhs);
    if (!lp.bounded) throw ConvergenceError("dual LP unbounded", out.lower, kInf);

    std::vector<double> covered(n, 0.0);
    double dual_value = 0.0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (lp.duals[k] == 0.0) continue;
      dual_value += lp.duals[k] * rhs[k];
      for (std::size_t i = 0; i < n; ++i) covered[i] += lp.duals[k] * rows[k][i];
    }
    for (std::size_t i = 0; i < n; ++i) dual_value += std::max(0.0, g[i] - covered[i]);
    out.upper = std::min(out.upper, dual_value);

    auto dp = s_norm_dense(lp.x, f, options.dp_cap);
    ++evaluations;
    const double scale = std::max(1.0, dp.value);
    double paired = 0.0;
    for (std::size_t i = 0; i < n; ++i) paired += g[i] * lp.x[i];
    if (paired / scale > out.lower) {
      out.lower = paired / scale;
      for (std::size_t i = 0; i < n; ++i) out.maximizer[i] = lp.x[i] / scale;
    }
    if (out.upper - out.lower <= target * out.upper) break;
    if (dp.value <= 1.0) break;
    const bool known = std::any_of(rows.begin(), rows.end(), [&](const std::vector<double>& r) { return r == dp.functional; });
    if (known) break;
    if (evaluations >= options.budget) {
      throw ConvergenceError("dual LP exceeded its evaluation budget", out.lower, out.upper);
    }
    rows.push_back(std::move(dp.functional));
    rhs.push_back(1.0);
  }
  out.upper = std::max(out.upper, out.lower);
  return out;
}

namespace {

using Functional = std::vector<double>;

struct TreeEnumerator {
  std::size_t n;
  const GaugeFunction& f;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Functional>> memo;

  static void insert_unique(std::vector<Functional>& set, Functional v) {
    for (const auto& w : set) {
      bool same = true;
      for (std::size_t i = 0; i < v.size() && same; ++i) same = std::fabs(v[i] - w[i]) <= 1e-15;
      if (same) return;
    }
    set.push_back(std::move(v));
  }

  // Functionals supported in [i, j] (0-based, inclusive).
  const std::vector<Functional>& on(std::size_t i, std::size_t j) {
    const auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Functional> set;
    for (std::size_t k = i; k <= j; ++k) {
      Functional e(n, 0.0);
      e[k] = 1.0;
      insert_unique(set, std::move(e));
    }
    // sums over covers of [i, j] by m >= 2 consecutive intervals
    cover(i, j, Functional(n, 0.0), 0, set);
    memo.emplace(key, set);
    return memo.at(key);
  }

  void cover(std::size_t start, std::size_t end, const Functional& acc, std::size_t blocks,
             std::vector<Functional>& set) {
    if (start > end) {
      if (blocks >= 2) {
        Functional v = acc;
        const double w = 1.0 / f(static_cast<double>(blocks));
        for (auto& e : v) e *= w;
        insert_unique(set, std::move(v));
      }
      return;
    }
    for (std::size_t stop = start; stop <= end; ++stop) {
      if (blocks == 0 && stop == end) continue;  // a single block is not a split
      // copy: the recursive call may grow the memo
      const std::vector<Functional> pieces = on(start, stop);
      for (const auto& piece : pieces) {
        Functional next = acc;
        for (std::size_t t = 0; t < n; ++t) next[t] += piece[t];
        cover(stop + 1, end, next, blocks + 1, set);
      }
    }
  }
};

}  // namespace

std::vector<std::vector<double>> enumerate_tree_functionals(std::size_t n, const GaugeFunction& f) {
  if (n == 0) return {};
  if (n > 6) throw SizeCapError(n, 6);
  TreeEnumerator en{n, f, {}};
  return en.on(0, n - 1);
}

}  // namespace detail

DualEvaluation dual_norm(const SpacePtr& space, const SeqVector& g, const EvalOptions& options) {
  if (!space) throw ArgumentError("dual_norm needs a space");
  DualEvaluation out;
  if (g.empty()) return out;
  if (!is_lattice(*space)) throw UnsupportedSpaceError("dual norms of non-lattice descriptors are not supported");
  const auto dual = dual_space(space);
  const auto w = g.compressed_abs();
  const auto r = detail::eval_dense(*dual, w, options);
  const auto m = detail::linear_functional(r.piece, w);

  SeqVector maximizer;
  const auto index_of = g.support();
  for (std::size_t k = 0; k < index_of.size(); ++k) {
    if (m[k] != 0.0) maximizer.set(index_of[k], g[index_of[k]] < 0.0 ? -m[k] : m[k]);
  }
  if (!maximizer.empty()) {
    const double feasibility = evaluate_norm(*space, maximizer, options).upper;
    if (feasibility > 1.0) maximizer = maximizer.scaled(1.0 / feasibility);
  }
  out.maximizer = maximizer;
  out.value = pairing(maximizer, g);
  out.lower = out.value;
  out.upper = std::max(r.upper, out.value);
  return out;
}

ExperimentReport lozanovskii_check(const SpacePtr& space, std::size_t samples, std::size_t dim, std::uint64_t seed,
                                   const EvalOptions& options) {
  if (!space) throw ArgumentError("lozanovskii_check needs a space");
  if (dim == 0) throw ArgumentError("lozanovskii_check needs dim >= 1");
  if (dim > options.dp_cap) throw SizeCapError(dim, options.dp_cap);
  const auto dual = dual_space(space);

  struct Row {
    std::size_t d = 0;
    double product = 0.0;
    double l2 = 0.0;
  };
  std::vector<Row> rows(samples);
  parallel_for(samples, [&](std::size_t s) {
    auto rng = sample_rng(seed, s);
    std::uniform_int_distribution<std::size_t> pick_dim(1, dim);
    std::uniform_real_distribution<double> value(0.05, 1.0);
    const std::size_t d = pick_dim(rng);
    std::vector<double> z(d);
    for (auto& v : z) v = value(rng);
    rows[s].d = d;
    rows[s].product = calderon_norm(space, dual, 0.5, SeqVector::from_dense(z), options).value;
    rows[s].l2 = lp_norm(std::span<const double>(z), 2.0);
  });

  ExperimentReport report;
  report.name = "lozanovskii";
  report.columns = {"sample", "dim", "product", "l2", "rel_dev"};
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double dev = std::fabs(rows[s].product - rows[s].l2) / rows[s].l2;
    worst = std::max(worst, dev);
    report.add_row({static_cast<double>(s), static_cast<double>(rows[s].d), rows[s].product, rows[s].l2, dev});
  }
  report.metadata["space"] = to_string(*space);
  report.metadata["samples"] = samples;
  report.metadata["dim"] = dim;
  report.metadata["seed"] = seed;
  report.metadata["max_deviation"] = worst;
  return report;
}

BlockBound dual_block_bound(const SpacePtr& space, double p, const GaugeFunction& f,
                            const std::vector<SeqVector>& blocks, const EvalOptions& options) {
  if (blocks.empty()) throw ArgumentError("dual_block_bound needs at least one block");
  if (!(p >= 1.0)) throw DomainError("p must be >= 1");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].empty()) throw ArgumentError("blocks must be nonzero");
    if (i > 0 && !(blocks[i - 1].max_index() < blocks[i].min_index())) {
      throw ArgumentError("blocks must have successive disjoint supports");
    }
  }
  const double q = detail::conjugate_exponent(p);
  SeqVector sum;
  std::vector<double> norms;
  for (const auto& b : blocks) {
    sum += b;
    norms.push_back(dual_norm(space, b, options).upper);
  }
  BlockBound out;
  out.lhs = dual_norm(space, sum, options).lower;
  out.rhs = f(static_cast<double>(blocks.size())) * lp_norm(std::span<const double>(norms), q);
  out.ok = out.lhs <= out.rhs * (1.0 + options.iterative_tol) + options.closed_form_tol;
  return out;
}

}  // namespace banachlab

#include "banachlab/schlumprecht.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "banachlab/errors.hpp"

namespace banachlab {

// ---------------------------------------------------------------------------
// certificate

namespace {

void accumulate_functional(const PartitionCertificate& node, double scale, SeqVector& out) {
  if (node.kind == PartitionCertificate::Kind::kLeaf) {
    out.set(node.coordinate, out[node.coordinate] + scale * node.sign);
    return;
  }
  for (const auto& child : node.children) accumulate_functional(child, scale * node.weight, out);
}

void render_node(const PartitionCertificate& node, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(2 * depth), ' ');
  char buf[160];
  if (node.kind == PartitionCertificate::Kind::kLeaf) {
    std::snprintf(buf, sizeof buf, "leaf i=%zu sign=%c [%zu..%zu]\n", node.coordinate, node.sign < 0 ? '-' : '+',
                  node.interval.lo(), node.interval.hi());
    out += buf;
    return;
  }
  std::snprintf(buf, sizeof buf, "split n=%zu w=%.6g [%zu..%zu]\n", node.block_count, node.weight,
                node.interval.lo(), node.interval.hi());
  out += buf;
  for (const auto& child : node.children) render_node(child, depth + 1, out);
}

}  // namespace

SeqVector PartitionCertificate::functional() const {
  SeqVector out;
  accumulate_functional(*this, 1.0, out);
  return out;
}

double PartitionCertificate::apply(const SeqVector& y) const { return pairing(functional(), y); }

std::string PartitionCertificate::render() const {
  std::string out;
  render_node(*this, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// DP table

DpTable::DpTable(std::span<const double> magnitudes, const GaugeFunction& f)
    : n_(magnitudes.size()), a_(magnitudes.begin(), magnitudes.end()) {
  for (double& v : a_) v = std::fabs(v);
  fvals_.assign(n_ + 1, 1.0);
  for (std::size_t n = 1; n <= n_; ++n) fvals_[n] = f(static_cast<double>(n));
  best_.assign(n_ * n_, 0.0);
  best_blocks_.assign(n_ * n_, 0);
  leaf_of_.assign(n_ * n_, 0);
  part_.assign(n_ * n_ * (n_ + 1), 0.0);
  split_.assign(n_ * n_ * (n_ + 1), 0);

  for (std::size_t len = 1; len <= n_; ++len) {
    for (std::size_t i = 0; i + len <= n_; ++i) {
      const std::size_t j = i + len - 1;
      // leaf: earliest coordinate of maximal magnitude
      std::size_t leaf = j;
      if (len > 1) {
        const std::size_t prev = leaf_of_[idx(i, j - 1)];
        leaf = a_[j] > a_[prev] ? j : prev;
      }
      leaf_of_[idx(i, j)] = leaf;
      double best = a_[leaf];
      std::size_t best_n = 0;

      for (std::size_t n = 2; n <= len; ++n) {
        double top = -1.0;
        std::size_t arg = i;
        for (std::size_t k = i; k + n - 1 <= j; ++k) {
          const double rest = n == 2 ? best_[idx(k + 1, j)] : part_[pidx(k + 1, j, n - 1)];
          const double v = best_[idx(i, k)] + rest;
          if (v > top) {
            top = v;
            arg = k;
          }
        }
        part_[pidx(i, j, n)] = top;
        split_[pidx(i, j, n)] = arg;
        const double candidate = top / fvals_[n];
        if (candidate > best) {
          best = candidate;
          best_n = n;
        }
      }
      best_[idx(i, j)] = best;
      best_blocks_[idx(i, j)] = best_n;
      part_[pidx(i, j, 1)] = best;
    }
  }
}

double DpTable::partition(std::size_t i, std::size_t j, std::size_t n) const {
  if (i > j || j >= n_ || n < 1 || n > j - i + 1) throw ArgumentError("partition index out of range");
  return part_[pidx(i, j, n)];
}

std::vector<std::pair<std::size_t, std::size_t>> DpTable::blocks(std::size_t i, std::size_t j, std::size_t n) const {
  if (i > j || j >= n_ || n < 1 || n > j - i + 1) throw ArgumentError("partition index out of range");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t cur = i;
  for (std::size_t m = n; m >= 2; --m) {
    const std::size_t k = split_[pidx(cur, j, m)];
    out.emplace_back(cur, k);
    cur = k + 1;
  }
  out.emplace_back(cur, j);
  return out;
}

PartitionCertificate DpTable::certificate(std::size_t i, std::size_t j, std::span<const std::size_t> index_of,
                                          std::span<const int> signs) const {
  PartitionCertificate node;
  node.interval = Interval(index_of[i], index_of[j]);
  const std::size_t n = best_blocks_[idx(i, j)];
  if (n == 0) {
    const std::size_t leaf = leaf_of_[idx(i, j)];
    node.kind = PartitionCertificate::Kind::kLeaf;
    node.coordinate = index_of[leaf];
    node.sign = signs[leaf];
    return node;
  }
  node.kind = PartitionCertificate::Kind::kSplit;
  node.block_count = n;
  node.weight = 1.0 / fvals_[n];
  for (const auto& [lo, hi] : blocks(i, j, n)) node.children.push_back(certificate(lo, hi, index_of, signs));
  return node;
}

// ---------------------------------------------------------------------------
// norm

namespace {

bool all_equal(std::span<const double> a) {
  return std::all_of(a.begin(), a.end(), [&](double v) { return v == a.front(); });
}

PartitionCertificate flat_certificate(std::span<const std::size_t> index_of, std::span<const int> signs, double weight) {
  PartitionCertificate node;
  const std::size_t n = index_of.size();
  node.interval = Interval(index_of.front(), index_of.back());
  if (n == 1) {
    node.coordinate = index_of.front();
    node.sign = signs.front();
    return node;
  }
  node.kind = PartitionCertificate::Kind::kSplit;
  node.block_count = n;
  node.weight = weight;
  for (std::size_t k = 0; k < n; ++k) {
    PartitionCertificate leaf;
    leaf.interval = Interval(index_of[k], index_of[k]);
    leaf.coordinate = index_of[k];
    leaf.sign = signs[k];
    node.children.push_back(leaf);
  }
  return node;
}

}  // namespace

namespace detail {

DenseSNorm s_norm_dense(std::span<const double> magnitudes, const GaugeFunction& f, std::size_t cap) {
  DenseSNorm out;
  const std::size_t n = magnitudes.size();
  out.functional.assign(n, 0.0);
  if (n == 0) return out;
  if (n > cap) {
    if (!all_equal(magnitudes)) throw SizeCapError(n, cap);
    const double fn = f(static_cast<double>(n));
    out.value = std::fabs(magnitudes.front()) * static_cast<double>(n) / fn;
    out.functional.assign(n, 1.0 / fn);
    out.analytic = true;
    return out;
  }
  DpTable table(magnitudes, f);
  out.value = table.best(0, n - 1);
  std::vector<std::size_t> index_of(n);
  std::iota(index_of.begin(), index_of.end(), std::size_t{1});
  const std::vector<int> signs(n, 1);
  const auto cert = table.certificate(0, n - 1, index_of, signs);
  const auto functional = cert.functional();
  for (const auto& [i, v] : functional.entries()) out.functional[i - 1] = v;
  return out;
}

}  // namespace detail

SNormResult s_norm(const SeqVector& x, const GaugeFunction& f, std::size_t cap) {
  if (x.empty()) throw ArgumentError("s_norm needs a nonempty support");
  const auto index_of = x.support();
  const auto magnitudes = x.compressed_abs();
  std::vector<int> signs;
  signs.reserve(index_of.size());
  for (double v : x.compressed()) signs.push_back(v < 0 ? -1 : 1);

  SNormResult result;
  const std::size_t n = index_of.size();
  if (n > cap) {
    if (!all_equal(magnitudes)) throw SizeCapError(n, cap);
    const double fn = f(static_cast<double>(n));
    result.value = magnitudes.front() * static_cast<double>(n) / fn;
    result.certificate = flat_certificate(index_of, signs, 1.0 / fn);
    result.analytic = true;
    return result;
  }
  DpTable table(magnitudes, f);
  result.value = table.best(0, n - 1);
  result.certificate = table.certificate(0, n - 1, index_of, signs);
  return result;
}

BestPartition best_partition(const SeqVector& x, const GaugeFunction& f, const Interval& e, std::size_t n,
                             std::size_t cap) {
  if (n < 2) throw ArgumentError("best_partition needs n >= 2");
  if (n > e.length()) throw ArgumentError("best_partition needs n <= |E|");
  if (e.length() > cap) throw SizeCapError(e.length(), cap);
  std::vector<double> dense(e.length(), 0.0);
  const SeqVector inside = restrict(x, e);
  for (const auto& [i, v] : inside.entries()) dense[i - e.lo()] = std::fabs(v);
  DpTable table(dense, f);
  BestPartition out;
  out.value = table.partition(0, dense.size() - 1, n) / table.gauge_at(n);
  for (const auto& [lo, hi] : table.blocks(0, dense.size() - 1, n)) out.blocks.emplace_back(e.lo() + lo, e.lo() + hi);
  return out;
}

// ---------------------------------------------------------------------------
// validation helpers

namespace {

// One application of the defining map to an interval table `v` (row-major n x n).
std::vector<double> apply_defining_map(std::span<const double> a, std::span<const double> v,
                                       std::span<const double> fvals) {
  const std::size_t n = a.size();
  std::vector<double> out(n * n, 0.0);
  // part[(i*n + j)*(n+1) + m] for the current j; reuse DpTable layout semantics.
  std::vector<double> part(n * n * (n + 1), 0.0);
  for (std::size_t len = 1; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t j = i + len - 1;
      double best = 0.0;
      for (std::size_t k = i; k <= j; ++k) best = std::max(best, a[k]);
      part[(i * n + j) * (n + 1) + 1] = v[i * n + j];
      for (std::size_t m = 2; m <= len; ++m) {
        double top = -1.0;
        for (std::size_t k = i; k + m - 1 <= j; ++k) {
          top = std::max(top, v[i * n + k] + part[((k + 1) * n + j) * (n + 1) + m - 1]);
        }
        part[(i * n + j) * (n + 1) + m] = top;
        best = std::max(best, top / fvals[m]);
      }
      out[i * n + j] = best;
    }
  }
  return out;
}

std::vector<double> gauge_values(const GaugeFunction& f, std::size_t n) {
  std::vector<double> fvals(n + 1, 1.0);
  for (std::size_t m = 1; m <= n; ++m) fvals[m] = f(static_cast<double>(m));
  return fvals;
}

}  // namespace

double fixed_point_check(const SeqVector& x, const GaugeFunction& f,
                         const std::function<double(const SeqVector&)>& value_fn) {
  const auto index_of = x.support();
  const auto a = x.compressed_abs();
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  std::vector<double> claimed(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) claimed[i * n + j] = value_fn(restrict(x, Interval(index_of[i], index_of[j])));
  }
  const auto stepped = apply_defining_map(a, claimed, gauge_values(f, n));
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) residual = std::max(residual, std::fabs(stepped[i * n + j] - claimed[i * n + j]));
  }
  return residual;
}

std::vector<double> iterate_defining_map(const SeqVector& x, const GaugeFunction& f, std::size_t max_steps) {
  const auto a = x.compressed_abs();
  const std::size_t n = a.size();
  if (n == 0) return {0.0};
  const auto fvals = gauge_values(f, n);
  std::vector<double> table(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double m = 0.0;
    for (std::size_t j = i; j < n; ++j) {
      m = std::max(m, a[j]);
      table[i * n + j] = m;
    }
  }
  std::vector<double> roots{table[n - 1]};
  for (std::size_t step = 0; step < max_steps; ++step) {
    auto next = apply_defining_map(a, table, fvals);
    if (next == table) break;
    table = std::move(next);
    roots.push_back(table[n - 1]);
  }
  return roots;
}

ExperimentReport summing_norm_table(std::size_t n_max, const GaugeFunction& f, std::size_t cap) {
  ExperimentReport report;
  report.name = "summing";
  report.columns = {"n", "dp_value", "n/f(n)", "abs_diff"};
  report.metadata["gauge"] = f.label();
  report.metadata["dp_cap"] = cap;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto r = s_norm(SeqVector::constant_block(1, n), f, cap);
    const double closed = static_cast<double>(n) / f(static_cast<double>(n));
    report.add_row({static_cast<double>(n), r.value, closed, std::fabs(r.value - closed)});
  }
  return report;
}

}  // namespace banachlab

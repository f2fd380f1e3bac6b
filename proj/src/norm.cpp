#include "banachlab/norm.hpp"

#include <algorithm>
#include <cmath>

#include "banachlab/calderon.hpp"
#include "banachlab/duality.hpp"
#include "banachlab/errors.hpp"

namespace banachlab {

namespace detail {

double conjugate_exponent(double p) {
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

double piece_value(const Piece& piece, std::span<const double> w) {
  const double q = piece.power;
  double s = 0.0;
  if (q == 1.0) {
    for (std::size_t i = 0; i < w.size(); ++i) s += piece.weights[i] * w[i];
    return s;
  }
  double m = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (piece.weights[i] > 0.0) m = std::max(m, w[i]);
  }
  if (m == 0.0) return 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (piece.weights[i] > 0.0) s += piece.weights[i] * std::pow(w[i] / m, q);
  }
  return m * std::pow(s, 1.0 / q);
}

std::vector<double> linear_functional(const Piece& piece, std::span<const double> w) {
  if (piece.power == 1.0) return piece.weights;
  std::vector<double> a(w.size(), 0.0);
  const double value = piece_value(piece, w);
  if (value == 0.0) return a;
  const double q = piece.power;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (piece.weights[i] > 0.0 && w[i] > 0.0) a[i] = piece.weights[i] * std::pow(w[i] / value, q - 1.0);
  }
  return a;
}

SpacePtr dual_rewrite(const SpacePtr& base) {
  return std::visit(
      [&](const auto& s) -> SpacePtr {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LpSpace>) {
          return lp_space(conjugate_exponent(s.p));
        } else if constexpr (std::is_same_v<T, SchlumprechtSpace>) {
          return dual_space(base);
        } else if constexpr (std::is_same_v<T, DualSpace>) {
          return s.base;
        } else if constexpr (std::is_same_v<T, CalderonSpace>) {
          return calderon_space(dual_rewrite(s.x), dual_rewrite(s.y), s.theta);
        } else if constexpr (std::is_same_v<T, ConvexifiedSpace>) {
          if (s.p == 1.0) return dual_rewrite(s.base);
          // conv(B, p) = B^(1/p) l_inf^(1-1/p), so its dual is (B*)^(1/p) l_1^(1-1/p).
          return calderon_space(dual_rewrite(s.base), lp_space(1.0), 1.0 - 1.0 / s.p);
        } else {
          throw UnsupportedSpaceError("dual of a non-lattice descriptor is not supported: " + to_string(*base));
        }
      },
      base->node);
}

namespace {

DenseEval exact(double v) {
  DenseEval out;
  out.value = out.lower = out.upper = v;
  return out;
}

}  // namespace

DenseEval eval_dense(const Space& space, std::span<const double> w, const EvalOptions& options) {
  if (w.empty()) return exact(0.0);
  return std::visit(
      [&](const auto& s) -> DenseEval {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LpSpace>) {
          DenseEval out = exact(lp_norm(w, s.p));
          if (s.p == kInf) {
            const auto it = std::max_element(w.begin(), w.end());
            out.piece.weights.assign(w.size(), 0.0);
            out.piece.weights[static_cast<std::size_t>(it - w.begin())] = 1.0;
            out.piece.power = 1.0;
          } else {
            out.piece.weights.assign(w.size(), 1.0);
            out.piece.power = s.p;
          }
          return out;
        } else if constexpr (std::is_same_v<T, SchlumprechtSpace>) {
          auto r = s_norm_dense(w, s.gauge, options.dp_cap);
          DenseEval out = exact(r.value);
          out.analytic = r.analytic;
          out.piece.weights = std::move(r.functional);
          out.piece.power = 1.0;
          return out;
        } else if constexpr (std::is_same_v<T, ConvexifiedSpace>) {
          std::vector<double> powered(w.size());
          for (std::size_t i = 0; i < w.size(); ++i) powered[i] = std::pow(w[i], s.p);
          auto inner = eval_dense(*s.base, powered, options);
          DenseEval out;
          const double inv = 1.0 / s.p;
          out.value = std::pow(inner.value, inv);
          out.lower = std::pow(inner.lower, inv);
          out.upper = std::pow(inner.upper, inv);
          out.analytic = inner.analytic;
          out.piece.weights = std::move(inner.piece.weights);
          out.piece.power = inner.piece.power * s.p;
          return out;
        } else if constexpr (std::is_same_v<T, CalderonSpace>) {
          auto r = calderon_dense(*s.x, *s.y, s.theta, w, options);
          DenseEval out;
          out.value = r.value;
          out.lower = r.lower;
          out.upper = r.upper;
          out.piece.weights = std::move(r.dual_pairing);
          out.piece.power = 1.0;
          return out;
        } else if constexpr (std::is_same_v<T, DualSpace>) {
          if (const auto* sch = std::get_if<SchlumprechtSpace>(&s.base->node)) {
            auto r = dual_s_dense(w, sch->gauge, options);
            DenseEval out;
            out.lower = r.lower;
            out.upper = r.upper;
            out.value = r.lower;
            out.piece.weights = std::move(r.maximizer);
            out.piece.power = 1.0;
            return out;
          }
          return eval_dense(*dual_rewrite(s.base), w, options);
        } else {
          throw UnsupportedSpaceError("lattice evaluation of a non-lattice descriptor");
        }
      },
      space.node);
}

}  // namespace detail

namespace {

double distortion_norm(const FunctionalFamily& family, const SeqVector& x) {
  double best = 0.0;
  for (const auto& z : family.members) best = std::max(best, std::fabs(pairing(x, z)));
  return std::max(lp_norm(x, 2.0), family.r * best);
}

}  // namespace

NormValue evaluate_norm(const Space& space, const SeqVector& x, const EvalOptions& options) {
  NormValue out;
  if (x.empty()) return out;
  if (const auto* yd = std::get_if<YDistortionSpace>(&space.node)) {
    out.value = out.lower = out.upper = distortion_norm(yd->family, x);
    return out;
  }
  if (!is_lattice(space)) throw UnsupportedSpaceError("non-lattice descriptor nested inside a lattice construction");
  const auto w = x.compressed_abs();
  const auto r = detail::eval_dense(space, w, options);
  out.value = r.value;
  out.lower = r.lower;
  out.upper = r.upper;
  out.analytic = r.analytic;
  return out;
}

NormEvaluator::NormEvaluator(SpacePtr space, EvalOptions options) : space_(std::move(space)), options_(options) {
  if (!space_) throw ArgumentError("NormEvaluator needs a space");
}

NormValue NormEvaluator::evaluate(const SeqVector& x) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(x.entries());
    if (it != cache_.end()) return it->second;
  }
  const NormValue v = evaluate_norm(*space_, x, options_);
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(x.entries(), v);
  return v;
}

double NormEvaluator::tolerance() const {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LpSpace> || std::is_same_v<T, YDistortionSpace>) {
          return options_.closed_form_tol;
        } else if constexpr (std::is_same_v<T, SchlumprechtSpace>) {
          return options_.dp_tol;
        } else if constexpr (std::is_same_v<T, ConvexifiedSpace>) {
          return NormEvaluator(s.base, options_).tolerance();
        } else {
          return options_.iterative_tol;
        }
      },
      space_->node);
}

double convexified_norm(const SpacePtr& base, double p, const SeqVector& x, const EvalOptions& options) {
  if (!(p >= 1.0)) throw DomainError("convexification exponent must be >= 1");
  return std::pow(evaluate_norm(*base, pointwise_power(x, p), options).value, 1.0 / p);
}

}  // namespace banachlab

#include "banachlab/calderon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "banachlab/errors.hpp"

namespace banachlab {

namespace detail {

namespace {

// log-domain piece G(s) = (1/q) log sum_k exp(logw_k + q * alpha * s[idx_k])
struct LogPiece {
  std::vector<std::size_t> idx;
  std::vector<double> logw;
  double q = 1.0;
  Piece source;
};

LogPiece make_log_piece(const Piece& piece, std::span<const double> z) {
  LogPiece lp;
  lp.q = piece.power;
  lp.source = piece;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (piece.weights[i] > 0.0) {
      lp.idx.push_back(i);
      lp.logw.push_back(std::log(piece.weights[i]) + lp.q * std::log(z[i]));
    }
  }
  return lp;
}

bool same_piece(const Piece& a, const Piece& b) {
  if (a.power != b.power) return false;
  for (std::size_t i = 0; i < a.weights.size(); ++i) {
    if (std::fabs(a.weights[i] - b.weights[i]) > 1e-14 * (1.0 + std::fabs(a.weights[i]))) return false;
  }
  return true;
}

struct PieceState {
  double value = 0.0;
  std::vector<double> pi;  // softmax weights over idx
};

PieceState eval_piece(const LogPiece& p, double alpha, std::span<const double> s) {
  PieceState st;
  const std::size_t m = p.idx.size();
  st.pi.resize(m);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < m; ++k) {
    st.pi[k] = p.logw[k] + p.q * alpha * s[p.idx[k]];
    top = std::max(top, st.pi[k]);
  }
  double sum = 0.0;
  for (auto& e : st.pi) {
    e = std::exp(e - top);
    sum += e;
  }
  for (auto& e : st.pi) e /= sum;
  st.value = (top + std::log(sum)) / p.q;
  return st;
}

// minimize (1-theta) u + theta v  s.t.  G_k(s) <= u,  H_l(s) <= v,  s_0 = 0.
// Primal-dual interior point: slacks and multipliers are iterates, so active
// multipliers stay accurate where u - G_k(s) would cancel.
class RestrictedProblem {
 public:
  RestrictedProblem(std::size_t n, double theta, const std::vector<LogPiece>& xs, const std::vector<LogPiece>& ys)
      : n_(n), theta_(theta), xs_(xs), ys_(ys), dim_(n + 1), m_(xs.size() + ys.size()) {}

  struct Solution {
    std::vector<double> s;
    // Normalized multipliers; each set gives a valid lower bound.
    std::vector<std::vector<double>> x_mult;
    std::vector<std::vector<double>> y_mult;
  };

  Solution solve(const std::vector<double>& s0, double gap_target) const {
    const auto d = static_cast<Eigen::Index>(dim_);
    const auto m = static_cast<Eigen::Index>(m_);
    Eigen::VectorXd xi(d);
    for (std::size_t i = 1; i < n_; ++i) xi[static_cast<Eigen::Index>(i - 1)] = s0[i];
    xi[d - 2] = 0.0;
    xi[d - 1] = 0.0;
    Linearization lin = linearize(xi);
    xi[d - 2] = lin.c.head(static_cast<Eigen::Index>(xs_.size())).maxCoeff() + 1.0;
    xi[d - 1] = lin.c.tail(static_cast<Eigen::Index>(ys_.size())).maxCoeff() + 1.0;
    lin = linearize(xi);

    Eigen::VectorXd sigma = -lin.c;
    Eigen::VectorXd lambda(m);
    for (Eigen::Index k = 0; k < m; ++k) {
      lambda[k] = k < static_cast<Eigen::Index>(xs_.size()) ? (1.0 - theta_) / static_cast<double>(xs_.size())
                                                           : theta_ / static_cast<double>(ys_.size());
    }
    Eigen::VectorXd cobj = Eigen::VectorXd::Zero(d);
    cobj[d - 2] = 1.0 - theta_;
    cobj[d - 1] = theta_;

    auto residuals = [&](const Linearization& l, const Eigen::VectorXd& sg, const Eigen::VectorXd& lm, double mu,
                         Eigen::VectorXd& rd, Eigen::VectorXd& rp, Eigen::VectorXd& rc) {
      rd = cobj + l.jac.transpose() * lm;
      rp = l.c + sg;
      rc = sg.cwiseProduct(lm).array() - mu;
    };

    Eigen::VectorXd rd, rp, rc;
    double centering = 0.1;
    for (int iter = 0; iter < 200; ++iter) {
      const double gap = sigma.dot(lambda);
      residuals(lin, sigma, lambda, 0.0, rd, rp, rc);
      const double scale = 1.0 + std::fabs(xi[d - 2]) + std::fabs(xi[d - 1]);
      if (gap <= gap_target && rd.lpNorm<Eigen::Infinity>() <= 1e-13 && rp.lpNorm<Eigen::Infinity>() <= 1e-14 * scale) {
        break;
      }
      const double mu = std::max(centering * gap, 0.1 * gap_target) / static_cast<double>(m);
      residuals(lin, sigma, lambda, mu, rd, rp, rc);

      // Augmented system [H J^T; J -D] with D = sigma/lambda; better conditioned
      // than eliminating lambda when D spans many orders of magnitude.
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(d + m, d + m);
      kkt.topLeftCorner(d, d) = lin.hess_weighted(lambda);
      kkt.topRightCorner(d, m) = lin.jac.transpose();
      kkt.bottomLeftCorner(m, d) = lin.jac;
      kkt.bottomRightCorner(m, m).diagonal() = -sigma.cwiseQuotient(lambda);
      Eigen::VectorXd rhs(d + m);
      rhs.head(d) = -rd;
      rhs.tail(m) = -rp + rc.cwiseQuotient(lambda);
      Eigen::VectorXd sol_step = kkt.partialPivLu().solve(rhs);
      if (!sol_step.allFinite()) {
        sol_step = kkt.fullPivLu().solve(rhs);
        if (!sol_step.allFinite()) break;
      }
      const Eigen::VectorXd dxi = sol_step.head(d);
      const Eigen::VectorXd dlambda = sol_step.tail(m);
      const Eigen::VectorXd dsigma = -rp - lin.jac * dxi;

      double step = 1.0;
      for (Eigen::Index k = 0; k < m; ++k) {
        if (dsigma[k] < 0.0) step = std::min(step, -0.995 * sigma[k] / dsigma[k]);
        if (dlambda[k] < 0.0) step = std::min(step, -0.995 * lambda[k] / dlambda[k]);
      }
      Linearization trial_lin;
      Eigen::VectorXd t_xi, t_sigma, t_lambda;
      t_xi = xi + step * dxi;
      t_sigma = sigma + step * dsigma;
      t_lambda = lambda + step * dlambda;
      trial_lin = linearize(t_xi);
      centering = step > 0.8 ? 0.01 : (step > 0.3 ? 0.1 : 0.5);
      xi = t_xi;
      sigma = t_sigma;
      lambda = t_lambda;
      lin = std::move(trial_lin);
    }

    Solution sol;
    sol.s = unpack_s(xi);
    const auto nx = static_cast<Eigen::Index>(xs_.size());
    const Eigen::VectorXd lx = lambda.head(nx);
    const Eigen::VectorXd ly = lambda.tail(m - nx);
    sol.x_mult.emplace_back(lx.data(), lx.data() + lx.size());
    sol.y_mult.emplace_back(ly.data(), ly.data() + ly.size());

    // The interior-point multipliers carry the conditioning of lambda/sigma;
    // re-fit stationarity on the active set by nonnegative least squares.
    std::vector<Eigen::Index> active;
    for (Eigen::Index k = 0; k < m; ++k) {
      if (lambda[k] >= sigma[k]) active.push_back(k);
    }
    for (int pass = 0; pass < 2 * static_cast<int>(m_) && !active.empty(); ++pass) {
      Eigen::MatrixXd a(d, static_cast<Eigen::Index>(active.size()));
      for (std::size_t j = 0; j < active.size(); ++j) a.col(static_cast<Eigen::Index>(j)) = lin.jac.row(active[j]).transpose();
      const Eigen::VectorXd fit = a.completeOrthogonalDecomposition().solve(-cobj);
      Eigen::Index worst = 0;
      if (fit.minCoeff(&worst) < 0.0) {
        active.erase(active.begin() + worst);
        continue;
      }
      std::vector<double> px(xs_.size(), 0.0), py(ys_.size(), 0.0);
      for (std::size_t j = 0; j < active.size(); ++j) {
        const auto k = static_cast<std::size_t>(active[j]);
        if (k < xs_.size()) {
          px[k] = fit[static_cast<Eigen::Index>(j)];
        } else {
          py[k - xs_.size()] = fit[static_cast<Eigen::Index>(j)];
        }
      }
      sol.x_mult.push_back(std::move(px));
      sol.y_mult.push_back(std::move(py));
      break;
    }
    for (auto& w : sol.x_mult) normalize(w);
    for (auto& w : sol.y_mult) normalize(w);
    return sol;
  }

 private:
  // Constraint values c_k = G_k(s) - level, their Jacobian, and the pieces'
  // softmax weights for curvature.
  struct Linearization {
    Eigen::VectorXd c;
    Eigen::MatrixXd jac;
    std::vector<PieceState> states;
    std::vector<const LogPiece*> pieces;
    std::vector<double> alphas;
    std::size_t n = 0;

    Eigen::MatrixXd hess_weighted(const Eigen::VectorXd& lambda) const {
      const auto d = jac.cols();
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
      for (std::size_t k = 0; k < pieces.size(); ++k) {
        const auto& p = *pieces[k];
        const auto& pi = states[k].pi;
        const double c = lambda[static_cast<Eigen::Index>(k)] * p.q * alphas[k] * alphas[k];
        for (std::size_t a = 0; a < p.idx.size(); ++a) {
          if (p.idx[a] == 0) continue;
          const auto ea = static_cast<Eigen::Index>(p.idx[a] - 1);
          h(ea, ea) += c * pi[a];
          for (std::size_t b = 0; b < p.idx.size(); ++b) {
            if (p.idx[b] == 0) continue;
            h(ea, static_cast<Eigen::Index>(p.idx[b] - 1)) -= c * pi[a] * pi[b];
          }
        }
      }
      return h;
    }
  };

  Linearization linearize(const Eigen::VectorXd& xi) const {
    const auto d = static_cast<Eigen::Index>(dim_);
    Linearization lin;
    lin.n = n_;
    lin.c.resize(static_cast<Eigen::Index>(m_));
    lin.jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m_), d);
    const auto s = unpack_s(xi);
    Eigen::Index row = 0;
    auto add = [&](const LogPiece& p, double alpha, Eigen::Index level) {
      auto st = eval_piece(p, alpha, s);
      lin.c[row] = st.value - xi[level];
      for (std::size_t k = 0; k < p.idx.size(); ++k) {
        if (p.idx[k] > 0) lin.jac(row, static_cast<Eigen::Index>(p.idx[k] - 1)) += alpha * st.pi[k];
      }
      lin.jac(row, level) = -1.0;
      lin.states.push_back(std::move(st));
      lin.pieces.push_back(&p);
      lin.alphas.push_back(alpha);
      ++row;
    };
    for (const auto& p : xs_) add(p, theta_, d - 2);
    for (const auto& p : ys_) add(p, -(1.0 - theta_), d - 1);
    return lin;
  }

  std::vector<double> unpack_s(const Eigen::VectorXd& xi) const {
    std::vector<double> s(n_, 0.0);
    for (std::size_t i = 1; i < n_; ++i) s[i] = xi[static_cast<Eigen::Index>(i - 1)];
    return s;
  }

  static void normalize(std::vector<double>& w) {
    double total = 0.0;
    for (auto& e : w) {
      e = std::max(e, 0.0);
      total += e;
    }
    if (total > 0.0) {
      for (auto& e : w) e /= total;
    }
  }

  std::size_t n_;
  double theta_;
  const std::vector<LogPiece>& xs_;
  const std::vector<LogPiece>& ys_;
  std::size_t dim_;
  std::size_t m_;
};

std::vector<double> combined_functional(const std::vector<LogPiece>& pieces, const std::vector<double>& mult,
                                        std::span<const double> point) {
  std::vector<double> out(point.size(), 0.0);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (mult[k] == 0.0) continue;
    const auto a = linear_functional(pieces[k].source, point);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += mult[k] * a[i];
  }
  return out;
}

Piece coordinate_piece(std::size_t n, std::size_t i, double scale) {
  Piece p;
  p.weights.assign(n, 0.0);
  p.weights[i] = scale;
  p.power = 1.0;
  return p;
}

}  // namespace

DenseCalderon calderon_dense(const Space& x_space, const Space& y_space, double theta, std::span<const double> z_in,
                             const EvalOptions& options) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("Calderon product needs 0 < theta < 1");
  if (!is_lattice(x_space) || !is_lattice(y_space)) {
    throw UnsupportedSpaceError("Calderon product needs lattice-norm factors");
  }

  // Zero coordinates force x_i = y_i = 0; solve on the positive part.
  std::vector<std::size_t> keep;
  std::vector<double> z;
  for (std::size_t i = 0; i < z_in.size(); ++i) {
    if (z_in[i] > 0.0) {
      keep.push_back(i);
      z.push_back(z_in[i]);
    }
  }
  DenseCalderon out;
  out.x.assign(z_in.size(), 0.0);
  out.y.assign(z_in.size(), 0.0);
  out.dual_pairing.assign(z_in.size(), 0.0);
  if (z.empty()) return out;
  const std::size_t n = z.size();
  const double alpha_x = theta;
  const double alpha_y = -(1.0 - theta);

  std::size_t evaluations = 0;
  auto eval_x = [&](std::span<const double> w) {
    ++evaluations;
    return eval_dense(x_space, w, options);
  };
  auto eval_y = [&](std::span<const double> w) {
    ++evaluations;
    return eval_dense(y_space, w, options);
  };

  std::vector<LogPiece> xs, ys;
  {
    const std::vector<double> unit{1.0};
    const double ex = eval_x(unit).lower;
    const double ey = eval_y(unit).lower;
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back(make_log_piece(coordinate_piece(n, i, ex), z));
      ys.push_back(make_log_piece(coordinate_piece(n, i, ey), z));
    }
  }
  auto add_piece = [&](std::vector<LogPiece>& pieces, const Piece& piece) {
    for (const auto& p : pieces) {
      if (same_piece(p.source, piece)) return false;
    }
    pieces.push_back(make_log_piece(piece, z));
    return true;
  };

  auto factors = [&](std::span<const double> s, std::vector<double>& x, std::vector<double>& y) {
    x.resize(n);
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = z[i] * std::exp(alpha_x * s[i]);
      y[i] = z[i] * std::exp(alpha_y * s[i]);
    }
  };

  std::vector<double> s(n, 0.0), x, y;
  factors(s, x, y);
  add_piece(xs, eval_x(x).piece);
  add_piece(ys, eval_y(y).piece);

  const double tol = options.iterative_tol;
  double gap_target = std::max(1e-14, 1e-4 * tol);
  double best_upper = std::numeric_limits<double>::infinity();
  double best_lower = 0.0;
  std::vector<double> best_s = s;
  std::vector<double> best_pairing(n, 0.0);

  for (std::size_t round = 0; round < 1000; ++round) {
    RestrictedProblem problem(n, theta, xs, ys);
    const auto sol = problem.solve(s, gap_target);
    s = sol.s;
    factors(s, x, y);
    const auto a_eval = eval_x(x);
    const auto b_eval = eval_y(y);

    const double upper = std::pow(a_eval.upper, 1.0 - theta) * std::pow(b_eval.upper, theta);
    if (upper < best_upper) {
      best_upper = upper;
      best_s = s;
    }

    double lower = 0.0;
    for (std::size_t j = 0; j < sol.x_mult.size(); ++j) {
      const auto a = combined_functional(xs, sol.x_mult[j], x);
      const auto b = combined_functional(ys, sol.y_mult[j], y);
      std::vector<double> c(n);
      double pair = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        c[i] = std::pow(a[i], 1.0 - theta) * std::pow(b[i], theta);
        pair += z[i] * c[i];
      }
      lower = std::max(lower, pair);
      if (pair > best_lower) {
        best_lower = pair;
        best_pairing = std::move(c);
      }
    }

    if (best_upper - best_lower <= tol * best_upper) break;
    if (evaluations >= options.budget) break;

    double model_x = -std::numeric_limits<double>::infinity();
    for (const auto& p : xs) model_x = std::max(model_x, piece_value(p.source, x));
    double model_y = -std::numeric_limits<double>::infinity();
    for (const auto& p : ys) model_y = std::max(model_y, piece_value(p.source, y));
    bool added = false;
    if (a_eval.value > model_x * (1.0 + 1e-13)) added |= add_piece(xs, a_eval.piece);
    if (b_eval.value > model_y * (1.0 + 1e-13)) added |= add_piece(ys, b_eval.piece);
    if (!added) {
      if (gap_target <= 1e-15) break;
      gap_target = std::max(1e-15, gap_target * 1e-2);
    }
  }

  if (best_upper - best_lower > tol * best_upper) {
    throw ConvergenceError("Calderon product did not reach the requested tolerance", best_lower, best_upper);
  }

  // Balance: shifting s by c rescales ||x|| by e^(theta c) and ||y|| by e^(-(1-theta) c).
  factors(best_s, x, y);
  const double ax = eval_x(x).upper;
  const double by = eval_y(y).upper;
  const double shift = std::log(by) - std::log(ax);
  for (auto& v : best_s) v += shift;
  factors(best_s, x, y);
  const double x_norm = eval_x(x).upper;
  const double y_norm = eval_y(y).upper;

  out.value = std::max(x_norm, y_norm);
  out.upper = out.value;
  out.lower = std::min(best_lower, out.value);
  out.x_norm = x_norm;
  out.y_norm = y_norm;
  for (std::size_t k = 0; k < n; ++k) {
    out.x[keep[k]] = x[k];
    out.y[keep[k]] = y[k];
    out.dual_pairing[keep[k]] = best_pairing[k];
  }
  out.evaluations = evaluations;
  return out;
}

}  // namespace detail

CalderonResult calderon_norm(const SpacePtr& x_space, const SpacePtr& y_space, double theta, const SeqVector& z,
                             const EvalOptions& options) {
  if (!x_space || !y_space) throw ArgumentError("calderon_norm needs two spaces");
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("Calderon product needs 0 < theta < 1");
  if (z.empty()) throw ArgumentError("calderon_norm needs a nonzero vector");
  const auto index_of = z.support();
  const auto w = z.compressed_abs();
  const auto r = detail::calderon_dense(*x_space, *y_space, theta, w, options);
  CalderonResult out;
  out.value = r.value;
  out.lower = r.lower;
  out.upper = r.upper;
  out.evaluations = r.evaluations;
  for (std::size_t k = 0; k < index_of.size(); ++k) {
    out.factorization.x.set(index_of[k], r.x[k]);
    out.factorization.y.set(index_of[k], r.y[k]);
  }
  out.factorization.x_norm = r.x_norm;
  out.factorization.y_norm = r.y_norm;
  out.factorization.achieved_value = r.value;
  return out;
}

SpacePtr space_spr(double p, double r, const GaugeFunction& f) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("S_{p,r} needs finite p >= 1");
  if (!(r > p)) throw ArgumentError("S_{p,r} needs p < r");
  auto s = schlumprecht_space(f);
  if (r == kInf) return p == 1.0 ? s : convexified_space(s, p);
  const double theta = 1.0 / p - 1.0 / r;
  const double t = (1.0 - theta) * r;
  return calderon_space(lp_space(t), s, theta);
}

double lp_product_oracle(double p0, double p1, double theta) {
  if (!(p0 >= 1.0) || !(p1 >= 1.0)) throw DomainError("exponents must be >= 1");
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0,1)");
  const double inv = (1.0 - theta) / p0 + theta / p1;
  return inv == 0.0 ? kInf : 1.0 / inv;
}

SummingIdentity spr_summing_identity(std::size_t n, double p, double r, const GaugeFunction& f,
                                     const EvalOptions& options) {
  if (n == 0) throw ArgumentError("summing identity needs n >= 1");
  SummingIdentity out;
  const double nn = static_cast<double>(n);
  const double inv_r = r == kInf ? 0.0 : 1.0 / r;
  out.expected = std::pow(nn, 1.0 / p) * std::pow(f(nn), inv_r - 1.0 / p);
  out.computed = evaluate_norm(*space_spr(p, r, f), SeqVector::constant_block(1, n), options).value;
  out.difference = std::fabs(out.computed - out.expected);
  return out;
}

}  // namespace banachlab

#ifndef BANACHLAB_EXPERIMENTS_HPP
#define BANACHLAB_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "banachlab/gauge.hpp"
#include "banachlab/norm.hpp"
#include "banachlab/report.hpp"
#include "banachlab/seq_vector.hpp"
#include "banachlab/space.hpp"

namespace banachlab {

// Nonzero vectors with max(supp b_i) < min(supp b_{i+1}).
using BlockSequence = std::vector<SeqVector>;

void validate_blocks(const BlockSequence& seq);
BlockSequence basis_sequence(std::size_t count, std::size_t first = 1);

// c * sum_{i=offset+1}^{offset+m} e_i with c chosen so the X-norm is 1.
SeqVector l1_average(std::size_t m, std::size_t offset, const SpacePtr& x, const EvalOptions& options = {});
// count consecutive disjoint l1_averages of length m starting after `offset`.
BlockSequence l1_average_blocks(std::size_t m, std::size_t count, std::size_t offset, const SpacePtr& x,
                                const EvalOptions& options = {});

// Rows: n, norm (of u_1 + ... + u_n), n_pow (n^(1/p)), ratio.
ExperimentReport block_sum_growth(const SpacePtr& x, double p, const BlockSequence& seq,
                                  const EvalOptions& options = {});

// v_n = 2^(-n/p) sum_{i=2^n+1}^{2^(n+1)} u_i for n = 0..n_max. Rows: n, norm, gap.
ExperimentReport vn_averages(const SpacePtr& x, double p, const BlockSequence& u, std::size_t n_max,
                             const EvalOptions& options = {});

struct EquivalenceResult {
  double k_lower = 1.0;
  ExperimentReport report;  // sample, dim, block_norm, basis_norm, ratio
};

// Largest observed max(||sum d_n w_n|| / ||sum d_n e_n||, its inverse). A lower
// bound for the equivalence constant with the unit vector basis.
EquivalenceResult equivalence_constant(const SpacePtr& x, const BlockSequence& w, std::size_t samples,
                                       std::size_t dim, std::uint64_t seed, const EvalOptions& options = {});

struct ProjectionResult {
  double norm_lower = 0.0;
  double dual_max = 0.0;  // max_n ||g_n||_{X*}
  ExperimentReport report;  // sample, px_norm, x_norm, ratio
};

// P x = sum <x, g_n> w_n, sampled on x supported in the union of supp g_n.
ProjectionResult projection_bound(const SpacePtr& x, const BlockSequence& w, const BlockSequence& g,
                                  std::size_t samples, std::uint64_t seed, const EvalOptions& options = {});

struct BetaEstimate {
  double lower = 0.0;  // n^(1/q)
  double upper = 0.0;  // f(n) n^(1/q)
  double best_found = 0.0;
  SeqVector best_sum;  // the normalized dual block sum attaining best_found
};

// Smallest ||u_1* + ... + u_n*||_{X*} found over `budget` random normalized
// dual block sequences (plus the dual basis itself).
BetaEstimate beta_estimate(const SpacePtr& x, double p, const GaugeFunction& f, std::size_t n, std::size_t budget,
                           std::uint64_t seed, const EvalOptions& options = {});

double distortion_y_norm(const FunctionalFamily& family, const SeqVector& x);

struct UnconditionalityRatio {
  double plus = 0.0;   // ||sum z_i||_Y
  double minus = 0.0;  // ||sum (-1)^i z_i||_Y
  double ratio = 0.0;
};

UnconditionalityRatio unconditionality_ratio(const FunctionalFamily& family, const BlockSequence& z);

struct ModulusOptions {
  std::size_t dim = 4;
  std::uint64_t seed = 1;
  std::size_t refine_steps = 200;
};

// Upper estimate of inf { 1 - ||(x+y)/2|| : ||x|| = ||y|| = 1, ||x-y|| >= eps }.
double modulus_convexity_estimate(const SpacePtr& x, double eps, std::size_t samples,
                                  const ModulusOptions& mopts = {}, const EvalOptions& options = {});
// Lower estimate of sup { (||x+tau y|| + ||x-tau y||)/2 - 1 : ||x|| = ||y|| = 1 }.
double modulus_smoothness_estimate(const SpacePtr& x, double tau, std::size_t samples,
                                   const ModulusOptions& mopts = {}, const EvalOptions& options = {});

struct ClassCheckOptions {
  std::size_t dim = 6;
  std::size_t tuple = 3;  // vectors per convexity/concavity check
  std::uint64_t seed = 1;
  double threshold = 1e-8;
};

// Conditions (4) l_r <= X <= l_p, (5) p-convexity and r-concavity, (6) the lower
// f-estimate. One row per condition: condition, checks, failures, worst_slack,
// passed, witness. Slack is the relative violation computed from the
// conservative ends of every bracket; <= 0 means the inequality held.
ExperimentReport classx_verify(const SpacePtr& x, double p, double r, const GaugeFunction& f, std::size_t samples,
                               const ClassCheckOptions& copts = {}, const EvalOptions& options = {});

// The two power-type parallelogram inequalities with conjugate exponents p <= 2 <= q:
//   (||x+y||^p + ||x-y||^p)/2 <= ||x||^p + ||y||^p
//   (||x+y||^q + ||x-y||^q)/2 >= ||x||^q + ||y||^q
// Rows: inequality, checks, failures, worst_slack, passed.
ExperimentReport theta_hilbertian_check(const SpacePtr& x, double p, std::size_t samples, std::size_t dim,
                                        std::uint64_t seed, const EvalOptions& options = {});

}  // namespace banachlab

#endif  // BANACHLAB_EXPERIMENTS_HPP

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabreg/objectives.hpp"
#include "stabreg/report.hpp"
#include "stabreg/stabreg_convex.hpp"
#include "stabreg/stabreg_rel.hpp"
#include "stabreg/trace.hpp"

namespace stabreg {

// ---------------------------------------------------------------------------
// Empirical uniform-stability estimation

struct StabilityPoint {
    long checkpoint = 0;              // t (epoch wrapper) or T (mirror descent)
    double eps_hat = 0.0;             // max over trials of the pool-max loss difference
    std::vector<double> per_trial;
};

struct StabilityEstimate {
    std::string algorithm;
    // sampled lower bound on the Definition-style sup, never the sup itself
    std::string kind = "estimate_lower_bound";
    long n = 0;
    int trials = 0;
    int pool_size = 0;
    std::uint64_t seed = 0;
    std::vector<StabilityPoint> points;
};

// Algorithm under test: given a dataset and the list of checkpoints, return
// the output vector at each checkpoint. Must be deterministic in the dataset.
using CheckpointRunner =
    std::function<std::vector<Vector>(const Dataset&, const std::vector<long>&)>;

struct StabilityJob {
    std::string algorithm_id;
    CheckpointRunner runner;
    LossKind loss_kind = LossKind::Logistic;
    double loss_delta = 1.0;
    GeneratorSpec generator;      // trial datasets (n, d, bound, geometry, seed base)
    std::vector<long> checkpoints;
    int trials = 10;
    int pool_size = 100;
};

// For each trial: draw S, a replacement index and example, run on S and the
// neighbor S', and take the pool-max per-example loss difference at every
// checkpoint; aggregate the max over trials. Trials are keyed by index, so the
// estimate is invariant to trial order and monotone in trials and pool size.
StabilityEstimate estimate_stability(const StabilityJob& job);

// ---------------------------------------------------------------------------
// Convergence measurement

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms of log-space residuals
    int points = 0;
    std::string window;
};

// least-squares slope of log(y) against log(x) over strictly positive data
SlopeFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

struct ConvergenceCurve {
    std::vector<double> t;
    std::vector<double> gap;
    SlopeFit fit;
    bool clamped = false;          // some gaps fell below the oracle tolerance
    bool superpolynomial = false;  // decay visibly steepens in log-log
};

// Gap curve F_S(x_t) - F* against the oracle optimum. For epoch traces the
// curve is sampled at epoch boundaries and the fit window drops the first two
// epochs; otherwise every step enters and the first tenth is dropped.
ConvergenceCurve measure_convergence(const RunTrace& trace, const EmpiricalRisk& risk,
                                     double f_star, double oracle_tol = tol::kOracleGap);

// ---------------------------------------------------------------------------
// Stability scaling against the theory curve c * t^gamma / n

struct ScalingReport {
    SlopeFit slope_t;  // joint fit exponent in t (or T)
    SlopeFit slope_n;  // joint fit exponent in n
    // eps(2n)/eps(n) per checkpoint, flattened over consecutive n pairs
    std::vector<double> halving_ratios;
    bool trivially_stable = false;  // every estimate was zero
    bool pass = false;
    std::string note;
};

// Fits log eps = c + s_t log t + s_n log n over all strictly positive points.
// pass iff s_t <= gamma + 0.4 and s_n in [-1.4, -0.6]. Needs >= 3 checkpoints
// and >= 2 values of n.
ScalingReport stability_vs_theory(const std::vector<StabilityEstimate>& estimates, double gamma);

// ---------------------------------------------------------------------------
// Consolidated lemma verification

// Deliberate fault injections used to prove the checks can fail.
enum class Sabotage { None, BregmanSign, RelativeConstant, BaseRateConstant };

Sabotage sabotage_from_string(const std::string& name);

struct LemmaReport {
    std::map<std::string, CheckReport> entries;
    bool all_passed() const;
    bool any_inconclusive() const;
};

// Runs every property suite at each dimension in `sizes`:
//   reg_minimizer_distance      minimizers of two anchored regularizations
//   anchor_decomposition        Pythagorean split of the anchor distance
//   minimizer_shift_bound       ||x2 - x1|| <= (2/mu) ||grad h(x1)||*
//   relative_smoothness         two-sided Bregman bounds of the regularized risk
//   mirror_contraction          monotone decrease + linear rate of mirror steps
//   three_point                 the three-point inequality of the mirror step
//   lp_square_not_smooth        the squared-lp-norm smoothness counterexample
LemmaReport verify_all_lemmas(std::uint64_t seed, const std::vector<int>& sizes,
                              Sabotage sabotage = Sabotage::None);

// The counterexample on its own: for each beta find an epsilon > 0 with
// (1 + eps^p)^(2/p) - 1 > beta eps^2 / 2 (p in (1,2), x = e1, y = e1 + eps e2).
CheckReport lp_nonsmoothness_counterexample(double p, const std::vector<double>& betas);

}  // namespace stabreg

#pragma once

#include "stabreg/base_opt.hpp"
#include "stabreg/objectives.hpp"
#include "stabreg/report.hpp"
#include "stabreg/trace.hpp"

namespace stabreg {

// One epoch of the Euclidean wrapper: regularization weight, inner restart
// count, steps per inner call, cumulative step offset.
struct EpochParams {
    int k = 0;
    double lambda = 0.0;   // lambda_k = beta / 2^(k+2)
    long m = 0;            // max{1, ceil(2 log2(lambda_k D n / G))}
    long t_half = 0;       // ceil((4C(1 + beta/lambda_k))^(1/gamma))
    long t_start = 0;
};

struct WrapperConfig {
    BaseOptimizer base = BaseOptimizer::nag();
    double beta = 0.0;
    double lipschitz = 0.0;  // G
    double distance_bound = 0.0;  // D >= ||x_0 - x*||
    long n = 0;
    DomainSpec domain;
    Vector x0;
    long t_max = 0;
    bool record_objective = true;
};

// Schedule record for epoch k; the step counts are ceilings of the real-valued
// schedule (more inner work only tightens the guarantees). Throws
// ScheduleExhausted when lambda_k underflows.
EpochParams epoch_schedule(int k, const WrapperConfig& cfg);

// Runs the wrapper: epochs of m_k inner calls of t_half_k base steps on
// F_S + (lambda_k/2)||x - x0||^2 with smoothness beta + lambda_k, halving the
// regularization between epochs. The returned trace holds x_t for t = 0..t_max
// with x_t constant on [t_k, t_{k+1}) equal to the epoch's starting point.
RunTrace run_stabreg_convex(const WrapperConfig& cfg, const EmpiricalRisk& risk);

// Per-epoch halving of both the regularized objective gap and the squared
// distance to the regularized minimizer:
//   F_k(y_{k+1}) - F_k(x*_k) <= lambda_k ||y_k - x*_k||^2 / 2^(m_k+1)
//   ||y_{k+1} - x*_k||^2     <= ||y_k - x*_k||^2 / 2^(m_k)
CheckReport check_halving(const RunTrace& trace, const EmpiricalRisk& risk,
                          const WrapperConfig& cfg, double slack = tol::kCheckSlack);

// Geometric facts about the epoch sequence, all relative to oracle minimizers:
//   ||y_k - x*_k|| <= ||x0 - x*_k||
//   ||x0 - x*_k||^2 + ||x*_k - x*||^2 <= ||x0 - x*||^2
//   F_S(y_{k+1}) - F_S(x*) <= 3 lambda_k ||x0 - x*||^2 / 4
CheckReport check_epoch_geometry(const RunTrace& trace, const EmpiricalRisk& risk,
                                 const WrapperConfig& cfg, double slack = tol::kCheckSlack);

}  // namespace stabreg

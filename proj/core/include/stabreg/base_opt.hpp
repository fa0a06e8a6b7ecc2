#pragma once

#include <optional>

#include "stabreg/mirror.hpp"
#include "stabreg/objective.hpp"
#include "stabreg/vecspace.hpp"

namespace stabreg {

// Black-box first-order method with a declared guarantee
//   f(x_t) - f(x*) <= C * beta * ||x_0 - x*||^2 / t^gamma.
// The declared constants are configuration data: the epoch wrapper only ever
// consumes (C, gamma).
struct BaseOptimizer {
    enum class Kind { GD, NAG, MD };

    Kind kind = Kind::NAG;
    double rate_c = 2.0;
    double rate_gamma = 2.0;
    std::optional<MirrorMap> map;  // MD only

    static BaseOptimizer gd() { return {Kind::GD, 0.5, 1.0, std::nullopt}; }
    static BaseOptimizer nag() { return {Kind::NAG, 2.0, 2.0, std::nullopt}; }
    static BaseOptimizer md(const MirrorMap& m, double c = 0.5, double gamma = 1.0) {
        return {Kind::MD, c, gamma, m};
    }

    const char* name() const {
        switch (kind) {
            case Kind::GD: return "gd";
            case Kind::NAG: return "nag";
            case Kind::MD: return "md";
        }
        return "?";
    }
};

struct OptimizeRequest {
    const Objective* objective = nullptr;
    double beta_eff = 1.0;  // certified smoothness handed to the method
    DomainSpec domain;
    Vector x0;
    long steps = 0;
};

// Runs the optimizer for req.steps steps and returns the final iterate.
// GD: projected gradient with step 1/beta_eff. NAG: projected accelerated
// scheme with momentum on projected iterates. MD: mirror steps.
Vector run_base(const BaseOptimizer& opt, const OptimizeRequest& req);

// max_{y in dom} <grad, x - y>; an exact upper bound on f(x) - min_dom f for
// convex f. Requires a bounded domain.
double frank_wolfe_gap(const Vector& grad, const Vector& x, const DomainSpec& dom);

struct OracleResult {
    Vector x;
    double certificate = 0.0;  // certified bound on f(x) - f*
    long steps = 0;
};

// High-precision minimizer of a mu-strongly-convex smooth objective, used as
// ground truth by the lemma checks. Restarted accelerated descent, certified
// before returning:
//   - unconstrained: gap <= ||grad||^2 / (2 mu),
//   - bounded domains: the Frank-Wolfe gap.
// Throws OracleFailure when the budget runs out (checks must not silently pass).
OracleResult oracle_minimize(const Objective& f, const DomainSpec& dom, double beta_eff, double mu,
                             double gap_tol = tol::kOracleGap, long budget = 0,
                             std::optional<Vector> warm_start = std::nullopt);

// Mirror-geometry oracle for objectives that are relatively smooth and
// relatively strongly convex w.r.t. the map (the lambda-regularized risks);
// plain mirror descent with the Frank-Wolfe certificate.
OracleResult oracle_minimize_mirror(const Objective& f, const MirrorMap& map, double beta_rel,
                                    double sc_rel, double gap_tol = tol::kOracleGap,
                                    long budget = 0);

}  // namespace stabreg

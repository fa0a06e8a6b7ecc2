#pragma once

#include "stabreg/objective.hpp"
#include "stabreg/report.hpp"
#include "stabreg/vecspace.hpp"

namespace stabreg {

// Reference function R generating the Bregman divergence. Each map is
// 1-strongly convex w.r.t. its own norm:
//   SquaredL2        R(x) = ||x||_2^2 / 2              (l2)
//   SquaredLp        R(x) = ||x||_p^2 / (2(p-1))       (lp, 1 < p <= 2)
//   NegativeEntropy  R(x) = sum_i x_i log x_i          (l1 on the simplex)
struct MirrorMap {
    enum class Kind { SquaredL2, SquaredLp, NegativeEntropy };

    Kind kind = Kind::SquaredL2;
    double p = 2.0;  // SquaredLp only
    DomainSpec domain;

    static MirrorMap squared_l2(const DomainSpec& dom);
    static MirrorMap squared_lp(double p, const DomainSpec& dom);
    static MirrorMap negative_entropy(const DomainSpec& dom);  // dom must be a simplex

    NormSpec geometry() const;  // the norm R is 1-strongly convex against

    double value(const Vector& x) const;
    Vector grad(const Vector& x) const;          // DomainError on entropy boundary
    Vector grad_inverse(const Vector& y) const;  // (grad R)^{-1}, ignores the domain

    // B_R(y, x) = R(y) - R(x) - <grad R(x), y - x>; x must be interior for entropy.
    double bregman(const Vector& y, const Vector& x) const;

    const char* name() const;
};

// argmin of R over its domain (uniform point on the simplex, 0 on balls).
Vector mirror_argmin(const MirrorMap& map);

// argmin_{x in dom} B_R(x, (grad R)^{-1}(y_dual)). Closed form for entropy
// (exponentiate-and-normalize) and SquaredL2 (Euclidean projection); a 1-D
// multiplier bisection for SquaredLp on the lp ball.
Vector bregman_project(const MirrorMap& map, const Vector& y_dual,
                       double bisect_tol = tol::kBisection);

// argmin_{x in dom} { <g, x - x_t> + beta*B_R(x, x_t) + lambda*R(x) }.
// Solved through the reduced form: a plain mirror step on the regularized
// objective with coefficient beta+lambda, i.e.
//   grad R(x+) = (beta*grad R(x_t) - g) / (beta + lambda),
// followed by a Bregman projection onto the domain.
Vector mirror_step(const MirrorMap& map, const Vector& x_t, const Vector& g, double beta,
                   double lambda, double bisect_tol = tol::kBisection);

// Same argmin computed from scratch: per-map KKT conditions of the full
// three-term objective (multiplier bisection where a constraint can bind).
// Kept as an independent path so the two routes can be checked against each
// other.
Vector mirror_step_direct(const MirrorMap& map, const Vector& x_t, const Vector& g, double beta,
                          double lambda, double bisect_tol = tol::kBisection);

// First-order optimality residual of the step objective at x_plus, measured as
// max_{y in dom} <-grad phi(x_plus), y - x_plus> (zero at the exact argmin).
double mirror_step_residual(const MirrorMap& map, const Vector& x_t, const Vector& g, double beta,
                            double lambda, const Vector& x_plus);

// Samples pairs (x, y) from the domain interior and checks the two-sided
// relative smoothness / relative strong convexity inequalities
//   f(x) + <grad f(x), y-x> + sc*B(y,x) <= f(y) <= f(x) + <grad f(x), y-x> + sm*B(y,x).
CheckReport check_relative_smoothness(const Objective& f, const MirrorMap& map, double sc,
                                      double sm, int pairs, std::uint64_t seed,
                                      double slack = 1e-8);

}  // namespace stabreg

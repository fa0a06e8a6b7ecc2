#pragma once

#include <Eigen/Core>

#include "stabreg/errors.hpp"
#include "stabreg/rng.hpp"
#include "stabreg/tolerances.hpp"

namespace stabreg {

using Vector = Eigen::VectorXd;

bool is_finite(const Vector& v);

// ---------------------------------------------------------------------------
// Norms

enum class NormKind { L1, L2, Lp, Linf };

struct NormSpec {
    NormKind kind = NormKind::L2;
    double p = 2.0;  // only meaningful for Lp

    static NormSpec l1() { return {NormKind::L1, 1.0}; }
    static NormSpec l2() { return {NormKind::L2, 2.0}; }
    static NormSpec linf() { return {NormKind::Linf, 0.0}; }
    // Any p in (1, inf); loss/mirror geometry additionally restricts to (1, 2].
    static NormSpec lp(double p);

    bool operator==(const NormSpec& o) const { return kind == o.kind && p == o.p; }
};

// L1 <-> Linf, L2 <-> L2, Lp <-> Lq with 1/p + 1/q = 1.
NormSpec dual(const NormSpec& n);

double norm(const Vector& v, const NormSpec& n);

const char* norm_name(const NormSpec& n);

// ---------------------------------------------------------------------------
// Domains

enum class DomainKind { Unconstrained, L2Ball, LpBall, Simplex };

struct DomainSpec {
    DomainKind kind = DomainKind::Unconstrained;
    int dim = 1;
    double radius = 1.0;  // L2Ball / LpBall
    double p = 2.0;       // LpBall

    static DomainSpec unconstrained(int dim);
    static DomainSpec l2_ball(int dim, double radius);
    static DomainSpec lp_ball(int dim, double p, double radius);
    static DomainSpec simplex(int dim);
};

bool contains(const Vector& v, const DomainSpec& dom, double tolerance = tol::kMembership);

// Euclidean projection. Closed form except LpBall, which is solved by a 1-D
// Lagrange-multiplier bisection on the constraint residual.
Vector project(const Vector& v, const DomainSpec& dom, double bisect_tol = tol::kBisection);

// Largest Euclidean distance between two feasible points; throws ConfigError
// for unbounded domains.
double euclidean_diameter(const DomainSpec& dom);

// Uniform-ish sample from the interior (used by property checks); the margin
// keeps samples away from boundaries where gradients of entropy-like maps blow up.
Vector sample_interior(const DomainSpec& dom, Rng& rng, double margin = 0.0);

const char* domain_name(const DomainSpec& dom);

}  // namespace stabreg

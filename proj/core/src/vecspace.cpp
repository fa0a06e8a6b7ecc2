#include "stabreg/vecspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace stabreg {

bool is_finite(const Vector& v) { return v.allFinite(); }

NormSpec NormSpec::lp(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw ConfigError("Lp norm requires finite p > 1");
    }
    return {NormKind::Lp, p};
}

NormSpec dual(const NormSpec& n) {
    switch (n.kind) {
        case NormKind::L1: return NormSpec::linf();
        case NormKind::Linf: return NormSpec::l1();
        case NormKind::L2: return NormSpec::l2();
        case NormKind::Lp: return NormSpec::lp(n.p / (n.p - 1.0));
    }
    throw ConfigError("unknown norm kind");
}

double norm(const Vector& v, const NormSpec& n) {
    switch (n.kind) {
        case NormKind::L1: return v.lpNorm<1>();
        case NormKind::L2: return v.norm();
        case NormKind::Linf: return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
        case NormKind::Lp: {
            // power-sum with rescaling by the max to avoid overflow
            double m = v.lpNorm<Eigen::Infinity>();
            if (m == 0.0) return 0.0;
            double s = 0.0;
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                s += std::pow(std::abs(v[i]) / m, n.p);
            }
            return m * std::pow(s, 1.0 / n.p);
        }
    }
    throw ConfigError("unknown norm kind");
}

const char* norm_name(const NormSpec& n) {
    switch (n.kind) {
        case NormKind::L1: return "l1";
        case NormKind::L2: return "l2";
        case NormKind::Linf: return "linf";
        case NormKind::Lp: return "lp";
    }
    return "?";
}

DomainSpec DomainSpec::unconstrained(int dim) { return {DomainKind::Unconstrained, dim, 0.0, 2.0}; }

DomainSpec DomainSpec::l2_ball(int dim, double radius) {
    if (!(radius > 0.0)) throw ConfigError("ball radius must be positive");
    return {DomainKind::L2Ball, dim, radius, 2.0};
}

DomainSpec DomainSpec::lp_ball(int dim, double p, double radius) {
    if (!(radius > 0.0)) throw ConfigError("ball radius must be positive");
    if (!(p > 1.0) || !(p <= 2.0)) throw ConfigError("lp ball requires p in (1, 2]");
    return {DomainKind::LpBall, dim, radius, p};
}

DomainSpec DomainSpec::simplex(int dim) {
    if (dim < 1) throw ConfigError("simplex dimension must be >= 1");
    return {DomainKind::Simplex, dim, 1.0, 2.0};
}

bool contains(const Vector& v, const DomainSpec& dom, double tolerance) {
    if (v.size() != dom.dim) return false;
    switch (dom.kind) {
        case DomainKind::Unconstrained: return true;
        case DomainKind::L2Ball: return v.norm() <= dom.radius * (1.0 + tolerance) + tolerance;
        case DomainKind::LpBall:
            return norm(v, NormSpec::lp(dom.p)) <= dom.radius * (1.0 + tolerance) + tolerance;
        case DomainKind::Simplex:
            return v.minCoeff() >= -tolerance && std::abs(v.sum() - 1.0) <= tolerance;
    }
    return false;
}

namespace {

// Sort-and-threshold simplex projection; exact in O(d log d).
Vector project_simplex(const Vector& v) {
    const Eigen::Index d = v.size();
    std::vector<double> u(v.data(), v.data() + d);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0;
    double theta = 0.0;
    int support = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
        css += u[j];
        double candidate = (css - 1.0) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0.0) {
            theta = candidate;
            support = static_cast<int>(j + 1);
        }
    }
    (void)support;
    Vector x(d);
    for (Eigen::Index i = 0; i < d; ++i) x[i] = std::max(v[i] - theta, 0.0);
    return x;
}

// Given mu >= 0 solve t + mu*p*t^(p-1) = a for t in [0, a] (strictly increasing).
double lp_coordinate_root(double a, double mu, double p) {
    if (a <= 0.0) return 0.0;
    double lo = 0.0, hi = a;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        double g = mid + mu * p * std::pow(mid, p - 1.0) - a;
        if (g > 0.0) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
}

Vector lp_point_for_multiplier(const Vector& v, double mu, double p) {
    Vector x(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double t = lp_coordinate_root(std::abs(v[i]), mu, p);
        x[i] = std::copysign(t, v[i]);
    }
    return x;
}

// Euclidean projection onto the lp ball: KKT gives x_i + mu*p*|x_i|^(p-1)sign(x_i) = v_i
// with mu >= 0 picked so the constraint is active. Outer bisection on mu.
Vector project_lp_ball(const Vector& v, const DomainSpec& dom, double bisect_tol) {
    const NormSpec np = NormSpec::lp(dom.p);
    if (norm(v, np) <= dom.radius) return v;

    double lo = 0.0;
    double hi = 1.0;
    while (norm(lp_point_for_multiplier(v, hi, dom.p), np) > dom.radius) {
        hi *= 2.0;
        if (hi > 1e100) throw SolverFailure("lp ball projection: multiplier blow-up", hi);
    }
    Vector x = v;
    double residual = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        x = lp_point_for_multiplier(v, mid, dom.p);
        residual = norm(x, np) - dom.radius;
        if (std::abs(residual) <= bisect_tol) return x;
        if (residual > 0.0) lo = mid; else hi = mid;
    }
    throw SolverFailure("lp ball projection did not converge", residual);
}

}  // namespace

Vector project(const Vector& v, const DomainSpec& dom, double bisect_tol) {
    if (v.size() != dom.dim) throw ConfigError("projection: dimension mismatch");
    if (!is_finite(v)) throw DomainError("projection: non-finite input");
    switch (dom.kind) {
        case DomainKind::Unconstrained: return v;
        case DomainKind::L2Ball: {
            double nv = v.norm();
            if (nv <= dom.radius) return v;
            return v * (dom.radius / nv);
        }
        case DomainKind::LpBall: return project_lp_ball(v, dom, bisect_tol);
        case DomainKind::Simplex: return project_simplex(v);
    }
    throw ConfigError("unknown domain kind");
}

double euclidean_diameter(const DomainSpec& dom) {
    switch (dom.kind) {
        case DomainKind::Unconstrained:
            throw ConfigError("unconstrained domain has no diameter");
        case DomainKind::L2Ball: return 2.0 * dom.radius;
        case DomainKind::LpBall: return 2.0 * dom.radius;  // p <= 2: ||x||_2 <= ||x||_p
        case DomainKind::Simplex: return std::sqrt(2.0);
    }
    throw ConfigError("unknown domain kind");
}

Vector sample_interior(const DomainSpec& dom, Rng& rng, double margin) {
    Vector x(dom.dim);
    switch (dom.kind) {
        case DomainKind::Unconstrained:
            for (int i = 0; i < dom.dim; ++i) x[i] = rng.normal();
            return x;
        case DomainKind::L2Ball:
        case DomainKind::LpBall: {
            for (int i = 0; i < dom.dim; ++i) x[i] = rng.normal();
            const NormSpec n = dom.kind == DomainKind::L2Ball ? NormSpec::l2() : NormSpec::lp(dom.p);
            double nx = norm(x, n);
            if (nx == 0.0) return Vector::Zero(dom.dim);
            double r = dom.radius * (1.0 - margin) * std::pow(rng.uniform(), 1.0 / dom.dim);
            return x * (r / nx);
        }
        case DomainKind::Simplex: {
            // normalized exponentials stay strictly positive
            double s = 0.0;
            for (int i = 0; i < dom.dim; ++i) {
                x[i] = -std::log(1.0 - rng.uniform());
                s += x[i];
            }
            x /= s;
            if (margin > 0.0) {
                Vector u = Vector::Constant(dom.dim, 1.0 / dom.dim);
                x = (1.0 - margin) * x + margin * u;
            }
            return x;
        }
    }
    throw ConfigError("unknown domain kind");
}

const char* domain_name(const DomainSpec& dom) {
    switch (dom.kind) {
        case DomainKind::Unconstrained: return "unconstrained";
        case DomainKind::L2Ball: return "l2ball";
        case DomainKind::LpBall: return "lpball";
        case DomainKind::Simplex: return "simplex";
    }
    return "?";
}

}  // namespace stabreg

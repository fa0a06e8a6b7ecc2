#include "stabreg/mirror.hpp"

#include <cmath>
#include <limits>

namespace stabreg {

MirrorMap MirrorMap::squared_l2(const DomainSpec& dom) {
    return {Kind::SquaredL2, 2.0, dom};
}

MirrorMap MirrorMap::squared_lp(double p, const DomainSpec& dom) {
    if (!(p > 1.0) || !(p <= 2.0)) throw ConfigError("squared lp map requires p in (1, 2]");
    if (dom.kind == DomainKind::LpBall && dom.p != p) {
        throw ConfigError("squared lp map and lp ball must share p");
    }
    if (dom.kind == DomainKind::Simplex) {
        throw ConfigError("squared lp map is not supported over the simplex");
    }
    return {Kind::SquaredLp, p, dom};
}

MirrorMap MirrorMap::negative_entropy(const DomainSpec& dom) {
    if (dom.kind != DomainKind::Simplex) {
        throw ConfigError("negative entropy requires a simplex domain");
    }
    return {Kind::NegativeEntropy, 1.0, dom};
}

NormSpec MirrorMap::geometry() const {
    switch (kind) {
        case Kind::SquaredL2: return NormSpec::l2();
        case Kind::SquaredLp: return NormSpec::lp(p);
        case Kind::NegativeEntropy: return NormSpec::l1();
    }
    throw ConfigError("unknown mirror map");
}

double MirrorMap::value(const Vector& x) const {
    switch (kind) {
        case Kind::SquaredL2: return 0.5 * x.squaredNorm();
        case Kind::SquaredLp: {
            double n = norm(x, NormSpec::lp(p));
            return n * n / (2.0 * (p - 1.0));
        }
        case Kind::NegativeEntropy: {
            double s = 0.0;
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                if (x[i] < 0.0) throw DomainError("entropy: negative coordinate");
                if (x[i] > 0.0) s += x[i] * std::log(x[i]);  // 0 log 0 = 0
            }
            return s;
        }
    }
    throw ConfigError("unknown mirror map");
}

Vector MirrorMap::grad(const Vector& x) const {
    switch (kind) {
        case Kind::SquaredL2: return x;
        case Kind::SquaredLp: {
            double n = norm(x, NormSpec::lp(p));
            Vector g = Vector::Zero(x.size());
            if (n == 0.0) return g;
            double scale = std::pow(n, 2.0 - p) / (p - 1.0);
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                g[i] = scale * std::copysign(std::pow(std::abs(x[i]), p - 1.0), x[i]);
            }
            return g;
        }
        case Kind::NegativeEntropy: {
            Vector g(x.size());
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                if (x[i] <= 0.0) throw DomainError("entropy gradient undefined at the boundary");
                g[i] = 1.0 + std::log(x[i]);
            }
            return g;
        }
    }
    throw ConfigError("unknown mirror map");
}

Vector MirrorMap::grad_inverse(const Vector& y) const {
    switch (kind) {
        case Kind::SquaredL2: return y;
        case Kind::SquaredLp: {
            // inverse via the conjugate pair: grad R(x) = y  <=>  x = grad f*((p-1) y)
            // with f*(w) = ||w||_q^2 / 2, q = p/(p-1).
            double q = p / (p - 1.0);
            Vector w = (p - 1.0) * y;
            double n = norm(w, NormSpec::lp(q));
            Vector x = Vector::Zero(y.size());
            if (n == 0.0) return x;
            double scale = std::pow(n, 2.0 - q);
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                x[i] = scale * std::copysign(std::pow(std::abs(w[i]), q - 1.0), w[i]);
            }
            return x;
        }
        case Kind::NegativeEntropy: {
            Vector x(y.size());
            for (Eigen::Index i = 0; i < y.size(); ++i) x[i] = std::exp(y[i] - 1.0);
            return x;
        }
    }
    throw ConfigError("unknown mirror map");
}

double MirrorMap::bregman(const Vector& y, const Vector& x) const {
    if (kind == Kind::SquaredL2) return 0.5 * (y - x).squaredNorm();
    if (kind == Kind::NegativeEntropy) {
        // sum y_i log(y_i/x_i) - y_i + x_i, finite for y on the boundary
        double s = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            if (x[i] <= 0.0) throw DomainError("bregman: entropy base point on the boundary");
            if (y[i] < 0.0) throw DomainError("bregman: negative coordinate");
            if (y[i] > 0.0) s += y[i] * std::log(y[i] / x[i]);
            s += x[i] - y[i];
        }
        return std::max(s, 0.0);
    }
    double b = value(y) - value(x) - grad(x).dot(y - x);
    return std::max(b, 0.0);
}

const char* MirrorMap::name() const {
    switch (kind) {
        case Kind::SquaredL2: return "squared_l2";
        case Kind::SquaredLp: return "squared_lp";
        case Kind::NegativeEntropy: return "negative_entropy";
    }
    return "?";
}

Vector mirror_argmin(const MirrorMap& map) {
    const DomainSpec& dom = map.domain;
    if (dom.kind == DomainKind::Simplex) {
        return Vector::Constant(dom.dim, 1.0 / dom.dim);
    }
    return Vector::Zero(dom.dim);  // 0 lies in every ball and minimizes both squared maps
}

namespace {

Vector softmax_normalized(const Vector& logits) {
    double m = logits.maxCoeff();
    Vector x(logits.size());
    double s = 0.0;
    for (Eigen::Index i = 0; i < logits.size(); ++i) {
        x[i] = std::exp(logits[i] - m);
        s += x[i];
    }
    return x / s;
}

// Bisection over the extra multiplier s >= 0 in grad R(x) = w / (c0 + s) so that
// ||x||_p hits the ball radius.
Vector lp_dual_bisection(const MirrorMap& map, const Vector& w, double c0, double bisect_tol) {
    const DomainSpec& dom = map.domain;
    const NormSpec np = NormSpec::lp(map.p);
    Vector x = map.grad_inverse(w / c0);
    if (dom.kind != DomainKind::LpBall || norm(x, np) <= dom.radius) return x;

    double lo = 0.0;
    double hi = c0;
    while (norm(map.grad_inverse(w / (c0 + hi)), np) > dom.radius) {
        hi *= 2.0;
        if (hi > 1e100) throw SolverFailure("lp mirror step: multiplier blow-up", hi);
    }
    double residual = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        x = map.grad_inverse(w / (c0 + mid));
        residual = norm(x, np) - dom.radius;
        if (std::abs(residual) <= bisect_tol) return x;
        if (residual > 0.0) lo = mid; else hi = mid;
    }
    throw SolverFailure("lp mirror step bisection did not converge", residual);
}

}  // namespace

Vector bregman_project(const MirrorMap& map, const Vector& y_dual, double bisect_tol) {
    const DomainSpec& dom = map.domain;
    switch (map.kind) {
        case MirrorMap::Kind::SquaredL2:
            return project(map.grad_inverse(y_dual), dom, bisect_tol);
        case MirrorMap::Kind::NegativeEntropy:
            return softmax_normalized(y_dual);
        case MirrorMap::Kind::SquaredLp:
            return lp_dual_bisection(map, y_dual, 1.0, bisect_tol);
    }
    throw ConfigError("unknown mirror map");
}

Vector mirror_step(const MirrorMap& map, const Vector& x_t, const Vector& g, double beta,
                   double lambda, double bisect_tol) {
    if (!(beta > 0.0)) throw ConfigError("mirror step requires beta > 0");
    if (lambda < 0.0) throw ConfigError("mirror step requires lambda >= 0");
    Vector y_dual = (beta * map.grad(x_t) - g) / (beta + lambda);
    return bregman_project(map, y_dual, bisect_tol);
}

Vector mirror_step_direct(const MirrorMap& map, const Vector& x_t, const Vector& g, double beta,
                          double lambda, double bisect_tol) {
    const DomainSpec& dom = map.domain;
    switch (map.kind) {
        case MirrorMap::Kind::SquaredL2: {
            // stationarity of g.(x-x_t) + (beta/2)||x-x_t||^2 + (lambda/2)||x||^2
            Vector u = (beta * x_t - g) / (beta + lambda);
            return project(u, dom, bisect_tol);
        }
        case MirrorMap::Kind::NegativeEntropy: {
            // Lagrangian of the full objective over the simplex:
            // x_i proportional to x_t,i^(beta/(beta+lambda)) * exp(-g_i/(beta+lambda))
            Vector logits(x_t.size());
            for (Eigen::Index i = 0; i < x_t.size(); ++i) {
                if (x_t[i] <= 0.0) throw DomainError("entropy step from boundary point");
                logits[i] = (beta * std::log(x_t[i]) - g[i]) / (beta + lambda);
            }
            return softmax_normalized(logits);
        }
        case MirrorMap::Kind::SquaredLp: {
            // KKT with the ball constraint: grad R(x)(beta+lambda+s) = beta grad R(x_t) - g
            Vector w = beta * map.grad(x_t) - g;
            return lp_dual_bisection(map, w, beta + lambda, bisect_tol);
        }
    }
    throw ConfigError("unknown mirror map");
}

double mirror_step_residual(const MirrorMap& map, const Vector& x_t, const Vector& g, double beta,
                            double lambda, const Vector& x_plus) {
    Vector grad_phi = g + beta * (map.grad(x_plus) - map.grad(x_t)) + lambda * map.grad(x_plus);
    const DomainSpec& dom = map.domain;
    // max_{y in dom} <-grad_phi, y - x_plus>, via the domain's linear minimizer
    switch (dom.kind) {
        case DomainKind::Unconstrained:
            // no constraint to project against: report the (dual) gradient norm
            return norm(grad_phi, dual(map.geometry()));
        case DomainKind::Simplex:
            return grad_phi.dot(x_plus) - grad_phi.minCoeff();
        case DomainKind::L2Ball:
            return grad_phi.dot(x_plus) + dom.radius * grad_phi.norm();
        case DomainKind::LpBall:
            return grad_phi.dot(x_plus) + dom.radius * norm(grad_phi, dual(NormSpec::lp(dom.p)));
    }
    throw ConfigError("unknown domain kind");
}

CheckReport check_relative_smoothness(const Objective& f, const MirrorMap& map, double sc,
                                      double sm, int pairs, std::uint64_t seed, double slack) {
    CheckReport report;
    report.name = "relative_smoothness";
    Rng rng(seed);
    const double margin = map.kind == MirrorMap::Kind::NegativeEntropy ? 1e-3 : 0.0;
    double worst_lower = -std::numeric_limits<double>::infinity();
    double worst_upper = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < pairs; ++i) {
        Vector x = sample_interior(map.domain, rng, margin);
        Vector y = sample_interior(map.domain, rng, margin);
        Vector gx;
        double fx = f.value_and_grad(x, &gx);
        double fy = f.value(y);
        double lin = fx + gx.dot(y - x);
        double b = map.bregman(y, x);
        // relative strong convexity: lin + sc*b <= fy
        worst_lower = std::max(worst_lower, lin + sc * b - fy);
        // relative smoothness: fy <= lin + sm*b
        worst_upper = std::max(worst_upper, fy - (lin + sm * b));
    }
    report.add("relative_strong_convexity", worst_lower, 0.0, slack);
    report.add("relative_smoothness", worst_upper, 0.0, slack);
    return report;
}

}  // namespace stabreg

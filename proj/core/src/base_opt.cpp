#include "stabreg/base_opt.hpp"

#include <cmath>

namespace stabreg {

namespace {

void check_finite(const Vector& g, long step) {
    if (!g.allFinite()) throw NumericError("non-finite gradient", step);
}

Vector run_gd(const OptimizeRequest& req) {
    Vector x = req.x0;
    const double eta = 1.0 / req.beta_eff;
    Vector g;
    for (long t = 0; t < req.steps; ++t) {
        req.objective->value_and_grad(x, &g);
        check_finite(g, t);
        x = project(x - eta * g, req.domain);
    }
    return x;
}

Vector run_nag(const OptimizeRequest& req) {
    Vector x = req.x0;
    Vector x_prev = req.x0;
    Vector y = req.x0;
    double theta = 1.0;
    const double eta = 1.0 / req.beta_eff;
    Vector g;
    for (long t = 0; t < req.steps; ++t) {
        req.objective->value_and_grad(y, &g);
        check_finite(g, t);
        x = project(y - eta * g, req.domain);
        double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
        y = x + ((theta - 1.0) / theta_next) * (x - x_prev);
        x_prev = x;
        theta = theta_next;
    }
    return x;
}

Vector run_md(const OptimizeRequest& req, const MirrorMap& map) {
    Vector x = req.x0;
    Vector g;
    for (long t = 0; t < req.steps; ++t) {
        req.objective->value_and_grad(x, &g);
        check_finite(g, t);
        x = mirror_step(map, x, g, req.beta_eff, 0.0);
    }
    return x;
}

}  // namespace

Vector run_base(const BaseOptimizer& opt, const OptimizeRequest& req) {
    if (!req.objective) throw ConfigError("run_base: missing objective");
    if (req.steps < 0) throw ConfigError("run_base: negative step budget");
    if (!(req.beta_eff > 0.0)) throw ConfigError("run_base: beta must be positive");
    switch (opt.kind) {
        case BaseOptimizer::Kind::GD: return run_gd(req);
        case BaseOptimizer::Kind::NAG: return run_nag(req);
        case BaseOptimizer::Kind::MD:
            if (!opt.map) throw ConfigError("run_base: MD needs a mirror map");
            return run_md(req, *opt.map);
    }
    throw ConfigError("unknown base optimizer");
}

double frank_wolfe_gap(const Vector& grad, const Vector& x, const DomainSpec& dom) {
    switch (dom.kind) {
        case DomainKind::Unconstrained:
            throw ConfigError("frank_wolfe_gap needs a bounded domain");
        case DomainKind::Simplex:
            return grad.dot(x) - grad.minCoeff();
        case DomainKind::L2Ball:
            return grad.dot(x) + dom.radius * grad.norm();
        case DomainKind::LpBall:
            return grad.dot(x) + dom.radius * norm(grad, dual(NormSpec::lp(dom.p)));
    }
    throw ConfigError("unknown domain kind");
}

namespace {

double certificate(const Vector& grad, const Vector& x, const DomainSpec& dom, double mu) {
    if (dom.kind == DomainKind::Unconstrained) {
        if (!(mu > 0.0)) throw ConfigError("unconstrained oracle needs mu > 0");
        return grad.squaredNorm() / (2.0 * mu);
    }
    return frank_wolfe_gap(grad, x, dom);
}

long default_budget(double beta_eff, double mu, double gap_tol) {
    if (!(mu > 0.0)) return 2'000'000;
    double b = 10.0 * std::ceil(std::sqrt(2.0 * beta_eff / mu) * std::log(1.0 / gap_tol));
    return static_cast<long>(std::min(b, 5e7)) + 100;
}

}  // namespace

OracleResult oracle_minimize(const Objective& f, const DomainSpec& dom, double beta_eff, double mu,
                             double gap_tol, long budget, std::optional<Vector> warm_start) {
    if (budget <= 0) budget = default_budget(beta_eff, mu, gap_tol);
    const double eta = 1.0 / beta_eff;

    Vector x = warm_start ? project(*warm_start, dom)
                          : (dom.kind == DomainKind::Simplex
                                 ? Vector::Constant(dom.dim, 1.0 / dom.dim)
                                 : project(Vector::Zero(dom.dim), dom));
    Vector g;
    f.value_and_grad(x, &g);
    double cert = certificate(g, x, dom, mu);
    if (cert <= gap_tol) return {x, cert, 0};

    // accelerated descent with function-value restarts
    Vector x_prev = x;
    Vector y = x;
    double theta = 1.0;
    double best_cert = cert;
    Vector best_x = x;
    double f_prev = f.value(x);
    for (long t = 1; t <= budget; ++t) {
        f.value_and_grad(y, &g);
        check_finite(g, t);
        x = project(y - eta * g, dom);

        double fx = f.value_and_grad(x, &g);
        check_finite(g, t);
        cert = certificate(g, x, dom, mu);
        if (cert < best_cert) {
            best_cert = cert;
            best_x = x;
        }
        if (cert <= gap_tol) return {x, cert, t};

        if (fx > f_prev) {  // restart momentum
            theta = 1.0;
            y = x;
        } else {
            double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
            y = x + ((theta - 1.0) / theta_next) * (x - x_prev);
            theta = theta_next;
        }
        f_prev = fx;
        x_prev = x;
    }
    throw OracleFailure("oracle_minimize: budget exhausted", best_cert, budget);
}

OracleResult oracle_minimize_mirror(const Objective& f, const MirrorMap& map, double beta_rel,
                                    double sc_rel, double gap_tol, long budget) {
    if (map.domain.kind == DomainKind::Unconstrained) {
        throw ConfigError("mirror oracle needs a bounded domain");
    }
    if (budget <= 0) {
        if (sc_rel > 0.0) {
            double b = 20.0 * std::ceil((1.0 + beta_rel / sc_rel) * std::log(1.0 / gap_tol));
            budget = static_cast<long>(std::min(b, 5e7)) + 100;
        } else {
            budget = 2'000'000;
        }
    }
    Vector x = mirror_argmin(map);
    Vector g;
    f.value_and_grad(x, &g);
    double cert = frank_wolfe_gap(g, x, map.domain);
    if (cert <= gap_tol) return {x, cert, 0};

    double best_cert = cert;
    for (long t = 1; t <= budget; ++t) {
        x = mirror_step(map, x, g, beta_rel, 0.0);
        f.value_and_grad(x, &g);
        check_finite(g, t);
        cert = frank_wolfe_gap(g, x, map.domain);
        best_cert = std::min(best_cert, cert);
        if (cert <= gap_tol) return {x, cert, t};
    }
    throw OracleFailure("oracle_minimize_mirror: budget exhausted", best_cert, budget);
}

}  // namespace stabreg

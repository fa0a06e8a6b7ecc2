#include "stabreg/stabreg_convex.hpp"

#include <algorithm>
#include <cmath>

namespace stabreg {

namespace {

// ceil with a snap for values that are integers up to pow/log roundoff
long ceil_count(double v) {
    double r = std::nearbyint(v);
    if (std::abs(v - r) < 1e-9 * std::max(1.0, std::abs(v))) return static_cast<long>(r);
    return static_cast<long>(std::ceil(v));
}

void validate(const WrapperConfig& cfg) {
    if (!(cfg.beta > 0.0)) throw ConfigError("wrapper: beta must be positive");
    if (!(cfg.lipschitz > 0.0)) throw ConfigError("wrapper: G must be positive");
    if (!(cfg.distance_bound > 0.0) || !std::isfinite(cfg.distance_bound)) {
        throw ConfigError("wrapper: D must be positive and finite");
    }
    if (cfg.n < 1) throw ConfigError("wrapper: n must be >= 1");
    if (cfg.t_max < 0) throw ConfigError("wrapper: t_max must be >= 0");
    if (cfg.domain.kind != DomainKind::Unconstrained && cfg.domain.kind != DomainKind::L2Ball) {
        throw ConfigError("wrapper: domain must be unconstrained or an l2 ball");
    }
    if (!contains(cfg.x0, cfg.domain)) throw ConfigError("wrapper: x0 outside the domain");
}

}  // namespace

EpochParams epoch_schedule(int k, const WrapperConfig& cfg) {
    if (k < 0) throw ConfigError("epoch index must be >= 0");
    EpochParams p;
    p.k = k;
    p.lambda = std::ldexp(cfg.beta, -(k + 2));  // beta / 2^(k+2), exact halvings
    if (p.lambda < 1e-300 || cfg.beta / p.lambda > 1e15) {
        throw ScheduleExhausted("regularization underflow at epoch " + std::to_string(k));
    }
    double ratio = p.lambda * cfg.distance_bound * static_cast<double>(cfg.n) / cfg.lipschitz;
    p.m = std::max<long>(1, ceil_count(2.0 * std::log2(ratio)));
    p.t_half = ceil_count(std::pow(4.0 * cfg.base.rate_c * (1.0 + cfg.beta / p.lambda),
                                   1.0 / cfg.base.rate_gamma));
    return p;
}

RunTrace run_stabreg_convex(const WrapperConfig& cfg, const EmpiricalRisk& risk) {
    validate(cfg);

    RunTrace trace;
    trace.algorithm = "stabreg_convex";
    trace.beta = cfg.beta;
    trace.lipschitz = cfg.lipschitz;
    trace.distance_bound = cfg.distance_bound;
    trace.n = cfg.n;
    trace.iterates.assign(static_cast<std::size_t>(cfg.t_max) + 1, cfg.x0);

    Vector y = cfg.x0;
    long t = 0;
    for (int k = 0;; ++k) {
        EpochParams params;
        try {
            params = epoch_schedule(k, cfg);
        } catch (const ScheduleExhausted&) {
            trace.termination = "lambda_underflow";
            break;
        }
        params.t_start = t;
        double span = static_cast<double>(params.m) * static_cast<double>(params.t_half);
        if (static_cast<double>(t) + span > static_cast<double>(cfg.t_max)) {
            trace.termination = "t_max";
            break;
        }
        long t_end = t + params.m * params.t_half;

        EpochRecord rec;
        rec.k = params.k;
        rec.lambda = params.lambda;
        rec.m = params.m;
        rec.t_half = params.t_half;
        rec.t_start = params.t_start;
        rec.t_end = t_end;
        rec.y_start = y;

        for (long u = t; u < t_end; ++u) trace.iterates[static_cast<std::size_t>(u)] = y;

        RegularizedRisk reg = RegularizedRisk::squared_anchor(risk, params.lambda, cfg.x0);
        OptimizeRequest req;
        req.objective = &reg;
        req.beta_eff = cfg.beta + params.lambda;
        req.domain = cfg.domain;
        req.steps = params.t_half;
        for (long j = 0; j < params.m; ++j) {
            req.x0 = y;
            try {
                y = run_base(cfg.base, req);
            } catch (const NumericError& e) {
                throw NumericError("epoch " + std::to_string(k) + ", inner call " +
                                       std::to_string(j) + ": " + e.what(),
                                   e.step());
            }
            rec.inner.push_back(y);
        }
        rec.y_end = y;
        trace.epochs.push_back(std::move(rec));
        t = t_end;
    }
    // anytime output: trailing steps keep the last completed epoch's result
    for (long u = t; u <= cfg.t_max; ++u) trace.iterates[static_cast<std::size_t>(u)] = y;

    if (cfg.record_objective) {
        trace.objective.assign(trace.iterates.size(), 0.0);
        auto same = [](const Vector& a, const Vector& b) {
            return a.size() == b.size() && std::equal(a.data(), a.data() + a.size(), b.data());
        };
        // iterates are piecewise constant; evaluate each distinct block once
        std::size_t i = 0;
        while (i < trace.iterates.size()) {
            double v = risk.value(trace.iterates[i]);
            std::size_t j = i;
            while (j < trace.iterates.size() && same(trace.iterates[j], trace.iterates[i])) {
                trace.objective[j] = v;
                ++j;
            }
            i = j;
        }
    }
    return trace;
}

namespace {

OracleResult epoch_oracle(const EmpiricalRisk& risk, const WrapperConfig& cfg, double lambda,
                          const Vector& warm) {
    RegularizedRisk reg = RegularizedRisk::squared_anchor(risk, lambda, cfg.x0);
    return oracle_minimize(reg, cfg.domain, cfg.beta + lambda, lambda, tol::kOracleGap, 0, warm);
}

}  // namespace

CheckReport check_halving(const RunTrace& trace, const EmpiricalRisk& risk,
                          const WrapperConfig& cfg, double slack) {
    CheckReport report;
    report.name = "epoch_halving";
    if (trace.epochs.empty()) {
        report.note = "no completed epochs; vacuous pass";
        return report;
    }
    for (const EpochRecord& e : trace.epochs) {
        OracleResult star = epoch_oracle(risk, cfg, e.lambda, e.y_end);
        RegularizedRisk reg = RegularizedRisk::squared_anchor(risk, e.lambda, cfg.x0);
        double d0 = (e.y_start - star.x).squaredNorm();
        double d1 = (e.y_end - star.x).squaredNorm();
        double gap = reg.value(e.y_end) - reg.value(star.x);
        std::string tag = "epoch " + std::to_string(e.k);
        report.add(tag + " objective halving", gap,
                   e.lambda * d0 / std::ldexp(1.0, static_cast<int>(e.m) + 1), slack);
        report.add(tag + " distance halving", d1, d0 / std::ldexp(1.0, static_cast<int>(e.m)),
                   slack);
    }
    return report;
}

CheckReport check_epoch_geometry(const RunTrace& trace, const EmpiricalRisk& risk,
                                 const WrapperConfig& cfg, double slack) {
    CheckReport report;
    report.name = "epoch_geometry";
    if (trace.epochs.empty()) {
        report.note = "no completed epochs; vacuous pass";
        return report;
    }
    double mu = strong_convexity_lower_bound(risk, cfg.domain);
    OracleResult star = oracle_minimize(risk, cfg.domain, cfg.beta, mu);
    double d_star_sq = (cfg.x0 - star.x).squaredNorm();

    for (const EpochRecord& e : trace.epochs) {
        OracleResult star_k = epoch_oracle(risk, cfg, e.lambda, e.y_end);
        std::string tag = "epoch " + std::to_string(e.k);
        report.add(tag + " start distance", (e.y_start - star_k.x).norm(),
                   (cfg.x0 - star_k.x).norm(), slack);
        report.add(tag + " anchor decomposition",
                   (cfg.x0 - star_k.x).squaredNorm() + (star_k.x - star.x).squaredNorm(),
                   d_star_sq, slack);
        report.add(tag + " risk gap vs 3*lambda*D^2/4", risk.value(e.y_end) - risk.value(star.x),
                   0.75 * e.lambda * d_star_sq, slack);
    }
    return report;
}

}  // namespace stabreg

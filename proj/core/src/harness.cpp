#include "stabreg/harness.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace stabreg {

// ---------------------------------------------------------------------------
// stability estimation

StabilityEstimate estimate_stability(const StabilityJob& job) {
    if (job.trials < 1) throw ConfigError("estimate_stability: trials must be >= 1");
    if (job.checkpoints.empty()) throw ConfigError("estimate_stability: no checkpoints");
    if (!job.runner) throw ConfigError("estimate_stability: missing runner");

    StabilityEstimate est;
    est.algorithm = job.algorithm_id;
    est.n = job.generator.n;
    est.trials = job.trials;
    est.pool_size = job.pool_size;
    est.seed = job.generator.seed;
    est.points.resize(job.checkpoints.size());
    for (std::size_t c = 0; c < job.checkpoints.size(); ++c) {
        est.points[c].checkpoint = job.checkpoints[c];
    }

    const std::vector<Example> pool = generate_pool(job.generator, job.pool_size);
    const LossModel eval_loss =
        certify_from_bound(job.loss_kind, job.loss_delta, job.generator.geometry,
                           job.generator.feature_bound);

    Rng root(job.generator.seed);
    for (int trial = 0; trial < job.trials; ++trial) {
        Rng rng = root.fork(static_cast<std::uint64_t>(trial) + 1);

        GeneratorSpec gs = job.generator;
        gs.seed = rng.next_u64();
        Dataset s = generate_dataset(gs);

        int replace_at = static_cast<int>(rng.index(static_cast<std::uint64_t>(gs.n)));
        GeneratorSpec gz = job.generator;
        gz.seed = rng.next_u64();
        gz.n = 1;
        Example z_prime = generate_dataset(gz).examples[0];
        Dataset s_prime = make_neighbor(s, replace_at, z_prime);

        std::vector<Vector> out = job.runner(s, job.checkpoints);
        std::vector<Vector> out_prime = job.runner(s_prime, job.checkpoints);
        if (out.size() != job.checkpoints.size() || out_prime.size() != job.checkpoints.size()) {
            throw ConfigError("estimate_stability: runner returned wrong checkpoint count (trial " +
                              std::to_string(trial) + ")");
        }
        for (std::size_t c = 0; c < job.checkpoints.size(); ++c) {
            double worst = 0.0;
            for (const Example& z : pool) {
                double diff = std::abs(loss_value(eval_loss, out[c], z) -
                                       loss_value(eval_loss, out_prime[c], z));
                worst = std::max(worst, diff);
            }
            est.points[c].per_trial.push_back(worst);
            est.points[c].eps_hat = std::max(est.points[c].eps_hat, worst);
        }
    }
    return est;
}

// ---------------------------------------------------------------------------
// slope fitting

SlopeFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    SlopeFit fit;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (xs[i] > 0.0 && ys[i] > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    fit.points = static_cast<int>(lx.size());
    if (fit.points < 2) return fit;
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < fit.points; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= fit.points;
    my /= fit.points;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < fit.points; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (int i = 0; i < fit.points; ++i) {
        double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / fit.points);
    return fit;
}

ConvergenceCurve measure_convergence(const RunTrace& trace, const EmpiricalRisk& risk,
                                     double f_star, double oracle_tol) {
    ConvergenceCurve curve;
    auto value_at = [&](std::size_t t) {
        return trace.objective.size() == trace.iterates.size() ? trace.objective[t]
                                                               : risk.value(trace.iterates[t]);
    };

    std::size_t window_from = 0;
    if (!trace.epochs.empty()) {
        for (const EpochRecord& e : trace.epochs) {
            curve.t.push_back(static_cast<double>(e.t_end));
            curve.gap.push_back(risk.value(e.y_end) - f_star);
            if (e.k < 2) window_from = curve.t.size();  // drop the first two epochs
        }
    } else {
        for (std::size_t t = 1; t < trace.iterates.size(); ++t) {
            curve.t.push_back(static_cast<double>(t));
            curve.gap.push_back(value_at(t) - f_star);
        }
        window_from = curve.t.size() / 10;  // drop the first tenth as burn-in
    }
    for (double& g : curve.gap) {
        if (g < oracle_tol) {
            g = oracle_tol;
            curve.clamped = true;
        }
    }

    std::vector<double> wx(curve.t.begin() + static_cast<long>(window_from), curve.t.end());
    std::vector<double> wy(curve.gap.begin() + static_cast<long>(window_from), curve.gap.end());
    curve.fit = fit_loglog(wx, wy);
    curve.fit.window = trace.epochs.empty() ? "steps after 10% burn-in" : "epochs 3+";

    // steepening in log-log marks faster-than-power-law decay
    if (wx.size() >= 6) {
        std::size_t half = wx.size() / 2;
        SlopeFit first = fit_loglog({wx.begin(), wx.begin() + static_cast<long>(half)},
                                    {wy.begin(), wy.begin() + static_cast<long>(half)});
        SlopeFit second = fit_loglog({wx.begin() + static_cast<long>(half), wx.end()},
                                     {wy.begin() + static_cast<long>(half), wy.end()});
        curve.superpolynomial = second.slope <= first.slope - 1.0;
    }
    return curve;
}

ScalingReport stability_vs_theory(const std::vector<StabilityEstimate>& estimates, double gamma) {
    ScalingReport report;
    std::set<long> ts;
    std::set<long> ns;
    for (const StabilityEstimate& e : estimates) {
        ns.insert(e.n);
        for (const StabilityPoint& p : e.points) ts.insert(p.checkpoint);
    }
    if (ts.size() < 3 || ns.size() < 2) {
        throw ConfigError("stability_vs_theory: need >= 3 checkpoints and >= 2 values of n");
    }

    struct Row {
        double t, n, eps;
    };
    std::vector<Row> rows;
    for (const StabilityEstimate& e : estimates) {
        for (const StabilityPoint& p : e.points) {
            rows.push_back({static_cast<double>(p.checkpoint), static_cast<double>(e.n), p.eps_hat});
        }
    }
    std::vector<Row> positive;
    for (const Row& r : rows) {
        if (r.eps > 0.0) positive.push_back(r);
    }
    if (positive.empty()) {
        report.trivially_stable = true;
        report.pass = true;
        report.note = "all estimates are zero (trivially stable); fit undefined";
        return report;
    }
    if (positive.size() < 4) {
        report.note = "too few positive estimates for a joint fit";
        report.pass = false;
        return report;
    }

    // joint fit log eps = c + s_t log t + s_n log n
    Eigen::MatrixXd x(positive.size(), 3);
    Eigen::VectorXd y(positive.size());
    for (std::size_t i = 0; i < positive.size(); ++i) {
        x(static_cast<Eigen::Index>(i), 0) = 1.0;
        x(static_cast<Eigen::Index>(i), 1) = std::log(positive[i].t);
        x(static_cast<Eigen::Index>(i), 2) = std::log(positive[i].n);
        y[static_cast<Eigen::Index>(i)] = std::log(positive[i].eps);
    }
    Eigen::Vector3d coef = (x.transpose() * x).ldlt().solve(x.transpose() * y);
    Eigen::VectorXd resid = y - x * coef;
    report.slope_t.slope = coef[1];
    report.slope_t.points = static_cast<int>(positive.size());
    report.slope_t.residual = std::sqrt(resid.squaredNorm() / static_cast<double>(positive.size()));
    report.slope_n.slope = coef[2];
    report.slope_n.points = static_cast<int>(positive.size());
    report.slope_n.residual = report.slope_t.residual;

    // eps(2n)/eps(n) per checkpoint over consecutive doubled n
    std::vector<long> sorted_n(ns.begin(), ns.end());
    auto eps_of = [&](long n, long t) -> double {
        for (const StabilityEstimate& e : estimates) {
            if (e.n != n) continue;
            for (const StabilityPoint& p : e.points) {
                if (p.checkpoint == t) return p.eps_hat;
            }
        }
        return -1.0;
    };
    for (std::size_t i = 0; i + 1 < sorted_n.size(); ++i) {
        if (sorted_n[i + 1] != 2 * sorted_n[i]) continue;
        for (long t : ts) {
            double lo = eps_of(sorted_n[i], t);
            double hi = eps_of(sorted_n[i + 1], t);
            if (lo > 0.0 && hi >= 0.0) report.halving_ratios.push_back(hi / lo);
        }
    }

    report.pass = report.slope_t.slope <= gamma + 0.4 && report.slope_n.slope >= -1.4 &&
                  report.slope_n.slope <= -0.6;
    return report;
}

// ---------------------------------------------------------------------------
// lemma suites

Sabotage sabotage_from_string(const std::string& name) {
    if (name.empty() || name == "none") return Sabotage::None;
    if (name == "bregman_sign") return Sabotage::BregmanSign;
    if (name == "relative_constant") return Sabotage::RelativeConstant;
    if (name == "base_rate") return Sabotage::BaseRateConstant;
    throw ConfigError("unknown sabotage: " + name);
}

bool LemmaReport::all_passed() const {
    for (const auto& [name, report] : entries) {
        if (!report.passed()) return false;
    }
    return true;
}

bool LemmaReport::any_inconclusive() const {
    for (const auto& [name, report] : entries) {
        if (report.status == CheckStatus::Inconclusive) return true;
    }
    return false;
}

namespace {

Eigen::MatrixXd random_spd(int d, Rng& rng, double ridge) {
    Eigen::MatrixXd a(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) a(i, j) = rng.normal();
    }
    return a.transpose() * a / d + ridge * Eigen::MatrixXd::Identity(d, d);
}

Vector random_vec(int d, Rng& rng, double scale) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v[i] = scale * rng.normal();
    return v;
}

// argmin of (1/2)(x-c)'Q(x-c) + (lambda/2)||x-x0||^2
Vector anchored_quadratic_min(const Eigen::MatrixXd& q, const Vector& c, double lambda,
                              const Vector& x0) {
    Eigen::MatrixXd lhs = q + lambda * Eigen::MatrixXd::Identity(q.rows(), q.cols());
    return lhs.ldlt().solve(q * c + lambda * x0);
}

// Minimizers of two anchored regularizations of the same convex quadratic.
void suite_reg_minimizer_distance(CheckReport& report, const std::vector<int>& sizes, Rng& rng) {
    const int cases = 1000;
    double worst = -std::numeric_limits<double>::infinity();
    for (int d : sizes) {
        for (int rep = 0; rep < cases / std::max<int>(1, static_cast<int>(sizes.size())); ++rep) {
            bool zero_l2 = rep % 3 == 0;
            Eigen::MatrixXd q = random_spd(d, rng, zero_l2 ? 0.05 + rng.uniform() : 0.0);
            Vector c = random_vec(d, rng, 2.0);
            Vector x0 = random_vec(d, rng, 2.0);
            double l2 = zero_l2 ? 0.0 : std::exp(rng.uniform(-3.0, 1.0));
            double l1 = l2 + std::exp(rng.uniform(-3.0, 1.0));
            Vector m1 = anchored_quadratic_min(q, c, l1, x0);
            Vector m2 = anchored_quadratic_min(q, c, l2, x0);
            double lhs = (m1 - m2).squaredNorm();
            double rhs = (l1 - l2) / (l1 + l2) *
                         ((m2 - x0).squaredNorm() - (m1 - x0).squaredNorm());
            worst = std::max(worst, lhs - rhs);
        }
        // 1-D instances
        for (int rep = 0; rep < 50; ++rep) {
            Eigen::MatrixXd q(1, 1);
            q(0, 0) = rng.uniform(0.1, 3.0);
            Vector c = random_vec(1, rng, 2.0);
            Vector x0 = random_vec(1, rng, 2.0);
            double l2 = rep % 2 == 0 ? 0.0 : rng.uniform(0.0, 1.0);
            double l1 = l2 + rng.uniform(0.01, 2.0);
            Vector m1 = anchored_quadratic_min(q, c, l1, x0);
            Vector m2 = anchored_quadratic_min(q, c, l2, x0);
            worst = std::max(worst, (m1 - m2).squaredNorm() -
                                        (l1 - l2) / (l1 + l2) *
                                            ((m2 - x0).squaredNorm() - (m1 - x0).squaredNorm()));
        }
    }
    report.add("worst violation over random anchored quadratics", worst, 0.0, tol::kPropertySlack);
}

// ||x0 - x*_l||^2 + ||x*_l - x*||^2 <= ||x0 - x*||^2
void suite_anchor_decomposition(CheckReport& report, const std::vector<int>& sizes, Rng& rng) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int d : sizes) {
        for (int rep = 0; rep < 400; ++rep) {
            Eigen::MatrixXd q = random_spd(d, rng, 0.05 + rng.uniform());
            Vector c = random_vec(d, rng, 2.0);
            Vector x0 = random_vec(d, rng, 2.0);
            double lambda = std::exp(rng.uniform(-3.0, 1.5));
            Vector star = c;  // unregularized minimizer of the quadratic
            Vector star_l = anchored_quadratic_min(q, c, lambda, x0);
            double lhs = (x0 - star_l).squaredNorm() + (star_l - star).squaredNorm();
            worst = std::max(worst, lhs - (x0 - star).squaredNorm());
        }
    }
    report.add("worst violation of the anchor split", worst, 0.0, tol::kPropertySlack);
}

// ||x2 - x1|| <= (2/mu) ||grad (f2 - f1)(x1)||
void suite_minimizer_shift(CheckReport& report, const std::vector<int>& sizes, Rng& rng) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int d : sizes) {
        for (int rep = 0; rep < 400; ++rep) {
            Eigen::MatrixXd q1 = random_spd(d, rng, rep % 2 == 0 ? 0.0 : 0.3);
            Eigen::MatrixXd q2 = random_spd(d, rng, 0.05 + rng.uniform());
            Vector c1 = random_vec(d, rng, 2.0);
            Vector c2 = random_vec(d, rng, 2.0);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q2);
            double mu = es.eigenvalues().minCoeff();
            Vector grad_h = q2 * (c1 - c2);  // grad f2(c1) - grad f1(c1), f1 minimized at c1
            worst = std::max(worst, (c2 - c1).norm() - 2.0 / mu * grad_h.norm());
        }
    }
    // the 1-D closed-form pair f1 = x^2/2, f2 = (x-a)^2/2
    for (int rep = 0; rep < 100; ++rep) {
        double a = rng.uniform(-5.0, 5.0);
        worst = std::max(worst, std::abs(a) - 2.0 * std::abs(a));
    }
    report.add("worst violation of the shift bound", worst, 0.0, tol::kPropertySlack);
}

// collapse a sub-report into one aggregated row of the parent
void add_aggregate(CheckReport& parent, const std::string& label, const CheckReport& sub) {
    double worst = -std::numeric_limits<double>::infinity();
    bool ok = true;
    for (const CheckRow& row : sub.rows) {
        worst = std::max(worst, row.lhs - row.rhs);
        ok = ok && row.ok;
    }
    parent.rows.push_back({label, worst, 0.0, ok});
    parent.worst_slack = std::max(parent.worst_slack, worst);
    if (!ok) parent.status = CheckStatus::Fail;
    if (sub.status == CheckStatus::Inconclusive) parent.status = CheckStatus::Inconclusive;
}

struct MirrorFixture {
    MirrorMap map;
    Dataset data;
    LossModel loss;
};

std::vector<MirrorFixture> mirror_fixtures(int d, std::uint64_t seed) {
    std::vector<MirrorFixture> out;
    {
        GeneratorSpec gs{seed, 40, d, 1.0, NormSpec::l1(), true, 3.0, 1.0};
        MirrorFixture f{MirrorMap::negative_entropy(DomainSpec::simplex(d)), generate_dataset(gs), {}};
        f.loss = certify_constants(LossKind::Logistic, 1.0, f.data);
        out.push_back(std::move(f));
    }
    {
        GeneratorSpec gs{seed + 1, 40, d, 1.0, NormSpec::lp(1.5), true, 3.0, 1.0};
        MirrorFixture f{MirrorMap::squared_lp(1.5, DomainSpec::lp_ball(d, 1.5, 1.0)),
                        generate_dataset(gs), {}};
        f.loss = certify_constants(LossKind::Logistic, 1.0, f.data);
        out.push_back(std::move(f));
    }
    {
        GeneratorSpec gs{seed + 2, 40, d, 1.0, NormSpec::l2(), true, 3.0, 1.0};
        MirrorFixture f{MirrorMap::squared_l2(DomainSpec::l2_ball(d, 1.0)), generate_dataset(gs), {}};
        f.loss = certify_constants(LossKind::Logistic, 1.0, f.data);
        out.push_back(std::move(f));
    }
    return out;
}

void suite_relative_smoothness(CheckReport& report, const std::vector<int>& sizes,
                               std::uint64_t seed, Sabotage sabotage) {
    for (int d : sizes) {
        for (const MirrorFixture& f : mirror_fixtures(d, seed)) {
            EmpiricalRisk risk(f.data, f.loss);
            double lambda = 0.1 * f.loss.beta;
            RegularizedRisk reg = RegularizedRisk::mirror(risk, lambda, f.map);
            double claimed_sc =
                sabotage == Sabotage::RelativeConstant ? 2.0 * (lambda + f.loss.beta) : lambda;
            CheckReport sub =
                check_relative_smoothness(reg, f.map, claimed_sc, lambda + f.loss.beta, 10000,
                                          seed ^ static_cast<std::uint64_t>(d));
            for (const CheckRow& row : sub.rows) {
                report.add(std::string(f.map.name()) + " d=" + std::to_string(d) + " " + row.label,
                           row.lhs, row.rhs, 1e-8);
            }
        }
    }
}

void suite_mirror_contraction(CheckReport& report, const std::vector<int>& sizes,
                              std::uint64_t seed) {
    for (int d : sizes) {
        GeneratorSpec gs{seed + static_cast<std::uint64_t>(d), 40, d, 1.0, NormSpec::l1(), true,
                         3.0, 1.0};
        Dataset data = generate_dataset(gs);
        LossModel loss = certify_constants(LossKind::Logistic, 1.0, data);
        EmpiricalRisk risk(data, loss);
        MirrorConfig cfg;
        cfg.map = MirrorMap::negative_entropy(DomainSpec::simplex(d));
        cfg.beta = loss.beta;
        cfg.lipschitz = loss.lipschitz;
        cfg.distance_bound = std::sqrt(std::log(static_cast<double>(std::max(d, 2))));
        cfg.n = data.size();
        cfg.steps = 60;
        cfg.lambda = loss.beta / 10.0;
        RunTrace trace = run_stabreg_rel(cfg, risk);
        CheckReport sub = check_mirror_contraction(trace, risk, cfg);
        add_aggregate(report, "entropy d=" + std::to_string(d), sub);
    }
}

void suite_three_point(CheckReport& report, const std::vector<int>& sizes, std::uint64_t seed,
                       Sabotage sabotage) {
    const double sign = sabotage == Sabotage::BregmanSign ? -1.0 : 1.0;
    for (int d : sizes) {
        for (const MirrorFixture& f : mirror_fixtures(d, seed + 7)) {
            Rng rng(seed ^ (0x3939 + static_cast<std::uint64_t>(d)));
            const double margin = f.map.kind == MirrorMap::Kind::NegativeEntropy ? 1e-3 : 1e-6;
            double worst = -std::numeric_limits<double>::infinity();
            for (int zi = 0; zi < 10; ++zi) {
                Vector z = sample_interior(f.map.domain, rng, margin);
                Vector v = random_vec(d, rng, std::exp(rng.uniform(-1.0, 1.0)));
                Vector z_plus = mirror_step(f.map, z, v, 1.0, 0.0);
                double at_plus = v.dot(z_plus) + f.map.bregman(z_plus, z);
                for (int xi = 0; xi < 100; ++xi) {
                    Vector x = sample_interior(f.map.domain, rng, 0.0);
                    double lhs = at_plus + f.map.bregman(x, z_plus);
                    double rhs = v.dot(x) + sign * f.map.bregman(x, z);
                    worst = std::max(worst, lhs - rhs);
                }
            }
            report.add(std::string(f.map.name()) + " d=" + std::to_string(d) + " worst violation",
                       worst, 0.0, 1e-8);
        }
    }
}

}  // namespace

CheckReport lp_nonsmoothness_counterexample(double p, const std::vector<double>& betas) {
    CheckReport report;
    report.name = "lp_square_not_smooth";
    for (double beta : betas) {
        bool found = false;
        double eps = 0.1;
        for (int j = 0; j < 14 && !found; ++j, eps /= 10.0) {
            double gap = std::pow(1.0 + std::pow(eps, p), 2.0 / p) - 1.0;
            if (gap > beta * eps * eps / 2.0) {
                // found a violating epsilon: linearization error beats beta eps^2/2
                report.add("beta=" + std::to_string(beta) + " eps=" + std::to_string(eps),
                           beta * eps * eps / 2.0, gap, 0.0);
                found = true;
            }
        }
        if (!found) {
            report.add("beta=" + std::to_string(beta) + " no violating eps found", 1.0, 0.0, 0.0);
        }
    }
    return report;
}

LemmaReport verify_all_lemmas(std::uint64_t seed, const std::vector<int>& sizes,
                              Sabotage sabotage) {
    LemmaReport report;
    if (sizes.empty()) return report;
    for (int d : sizes) {
        if (d < 2) throw ConfigError("verify_all_lemmas: sizes must be >= 2");
    }

    auto run_suite = [&](const std::string& name, auto&& body) {
        CheckReport entry;
        entry.name = name;
        try {
            body(entry);
        } catch (const OracleFailure& e) {
            entry.status = CheckStatus::Inconclusive;
            entry.note = e.what();
        }
        report.entries[name] = std::move(entry);
    };

    Rng rng(seed);
    run_suite("reg_minimizer_distance",
              [&](CheckReport& r) { suite_reg_minimizer_distance(r, sizes, rng); });
    run_suite("anchor_decomposition",
              [&](CheckReport& r) { suite_anchor_decomposition(r, sizes, rng); });
    run_suite("minimizer_shift_bound",
              [&](CheckReport& r) { suite_minimizer_shift(r, sizes, rng); });
    run_suite("relative_smoothness",
              [&](CheckReport& r) { suite_relative_smoothness(r, sizes, seed, sabotage); });
    run_suite("mirror_contraction",
              [&](CheckReport& r) { suite_mirror_contraction(r, sizes, seed); });
    run_suite("three_point", [&](CheckReport& r) { suite_three_point(r, sizes, seed, sabotage); });
    run_suite("lp_square_not_smooth", [&](CheckReport& r) {
        r = lp_nonsmoothness_counterexample(1.5, {1.0, 1e2, 1e4, 1e6});
    });

    if (sabotage == Sabotage::BaseRateConstant) {
        run_suite("epoch_halving_sabotaged", [&](CheckReport& r) {
            // ill-conditioned two-example regression: the weak direction only
            // contracts if the schedule grants the full step budget
            Dataset data;
            data.geometry = NormSpec::l2();
            data.feature_bound = 1.0;
            Vector a1(2), a2(2);
            a1 << 1.0, 0.0;
            a2 << 0.0, 0.1;
            data.examples.push_back({a1, 0.0});
            data.examples.push_back({a2, 1.0});
            LossModel loss = certify_constants(LossKind::PseudoHuber, 10.0, data);
            EmpiricalRisk risk(data, loss);
            WrapperConfig cfg;
            cfg.base = BaseOptimizer::gd();
            cfg.base.rate_c /= 10.0;  // falsified rate constant
            cfg.beta = loss.beta;
            cfg.lipschitz = loss.lipschitz;
            cfg.distance_bound = 12.0;
            cfg.n = data.size();
            cfg.domain = DomainSpec::unconstrained(2);
            cfg.x0 = Vector::Zero(2);
            cfg.t_max = 60;
            RunTrace trace = run_stabreg_convex(cfg, risk);
            r = check_halving(trace, risk, cfg);
        });
    }
    return report;
}

}  // namespace stabreg

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stabreg/base_opt.hpp"
#include "stabreg/objectives.hpp"
#include "support/test_util.hpp"

using namespace stabreg;
using test_util::vec2;

namespace {

FunctionObjective half_square() {
    return FunctionObjective([](const Vector& x, Vector* g) {
        if (g) *g = x;
        return 0.5 * x.squaredNorm();
    });
}

}  // namespace

TEST_CASE("single steps on a 1-d quadratic") {
    FunctionObjective f = half_square();
    OptimizeRequest req;
    req.objective = &f;
    req.beta_eff = 1.0;
    req.domain = DomainSpec::unconstrained(1);
    req.x0 = Vector::Constant(1, 1.0);

    req.steps = 0;
    CHECK(run_base(BaseOptimizer::gd(), req)[0] == 1.0);  // zero budget returns x0

    req.steps = 1;
    CHECK(run_base(BaseOptimizer::gd(), req)[0] == 0.0);   // exact quadratic step
    CHECK(run_base(BaseOptimizer::nag(), req)[0] == 0.0);  // first accelerated step
}

TEST_CASE("declared rates hold on random logistic problems") {
    for (int rep = 0; rep < 5; ++rep) {
        GeneratorSpec gs;
        gs.seed = 100 + static_cast<std::uint64_t>(rep);
        gs.n = 25;
        gs.d = 3;
        Dataset data = generate_dataset(gs);
        LossModel loss = certify_constants(LossKind::Logistic, 1.0, data);
        EmpiricalRisk risk(data, loss);
        DomainSpec dom = DomainSpec::l2_ball(3, 1.5);
        double mu = strong_convexity_lower_bound(risk, dom);
        OracleResult star = oracle_minimize(risk, dom, loss.beta, mu);
        double f_star = risk.value(star.x);

        Vector x0 = Vector::Zero(3);
        double d0 = (x0 - star.x).squaredNorm();
        OptimizeRequest req;
        req.objective = &risk;
        req.beta_eff = loss.beta;
        req.domain = dom;
        req.x0 = x0;

        // iterate manually to probe every step up to 1000
        for (const BaseOptimizer& opt : {BaseOptimizer::gd(), BaseOptimizer::nag()}) {
            for (long t : {1L, 2L, 3L, 5L, 10L, 30L, 100L, 300L, 1000L}) {
                req.steps = t;
                Vector xt = run_base(opt, req);
                double gap = risk.value(xt) - f_star;
                double bound = opt.rate_c * loss.beta * d0 / std::pow(t, opt.rate_gamma);
                CHECK(gap <= bound * 1.05 + 1e-12);
            }
        }
    }
}

TEST_CASE("md base with squared l2 matches projected gd") {
    GeneratorSpec gs;
    gs.seed = 44;
    gs.n = 12;
    gs.d = 2;
    Dataset data = generate_dataset(gs);
    LossModel loss = certify_constants(LossKind::Logistic, 1.0, data);
    EmpiricalRisk risk(data, loss);
    DomainSpec dom = DomainSpec::l2_ball(2, 0.7);

    OptimizeRequest req;
    req.objective = &risk;
    req.beta_eff = loss.beta;
    req.domain = dom;
    req.x0 = Vector::Zero(2);
    req.steps = 40;
    Vector a = run_base(BaseOptimizer::gd(), req);
    Vector b = run_base(BaseOptimizer::md(MirrorMap::squared_l2(dom)), req);
    CHECK((a - b).lpNorm<Eigen::Infinity>() <= 1e-14);
}

TEST_CASE("runs are deterministic") {
    GeneratorSpec gs;
    gs.seed = 7;
    gs.n = 20;
    gs.d = 4;
    Dataset data = generate_dataset(gs);
    LossModel loss = certify_constants(LossKind::Logistic, 1.0, data);
    EmpiricalRisk risk(data, loss);
    OptimizeRequest req;
    req.objective = &risk;
    req.beta_eff = loss.beta;
    req.domain = DomainSpec::l2_ball(4, 1.0);
    req.x0 = Vector::Zero(4);
    req.steps = 200;
    Vector a = run_base(BaseOptimizer::nag(), req);
    Vector b = run_base(BaseOptimizer::nag(), req);
    CHECK(std::equal(a.data(), a.data() + a.size(), b.data()));
}

TEST_CASE("oracle on a closed-form strongly convex sum") {
    // f(x) = (1/2)(x-1)^2 + (1/2)x^2 has its minimum at 0.5
    FunctionObjective f([](const Vector& x, Vector* g) {
        double u = x[0];
        if (g) {
            *g = Vector::Constant(1, (u - 1.0) + u);
        }
        return 0.5 * (u - 1.0) * (u - 1.0) + 0.5 * u * u;
    });
    OracleResult r = oracle_minimize(f, DomainSpec::unconstrained(1), 2.0, 2.0);
    CHECK(r.x[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.certificate <= 1e-12);
}

TEST_CASE("oracle certifies within the linear-rate budget when lambda = beta") {
    GeneratorSpec gs;
    gs.seed = 9;
    gs.n = 30;
    gs.d = 3;
    Dataset data = generate_dataset(gs);
    LossModel loss = certify_constants(LossKind::Logistic, 1.0, data);
    EmpiricalRisk risk(data, loss);
    double lambda = loss.beta;
    RegularizedRisk reg = RegularizedRisk::squared_anchor(risk, lambda, Vector::Zero(3));
    double beta_eff = loss.beta + lambda;
    long budget = 10 * static_cast<long>(
                           std::ceil(std::sqrt(2.0 * beta_eff / lambda) * std::log(1e12)));
    OracleResult r =
        oracle_minimize(reg, DomainSpec::unconstrained(3), beta_eff, lambda, 1e-12, budget);
    CHECK(r.steps <= budget);
    CHECK(r.certificate <= 1e-12);
}

TEST_CASE("oracle returns immediately from an optimal start") {
    FunctionObjective f = half_square();
    OracleResult r = oracle_minimize(f, DomainSpec::unconstrained(2), 1.0, 1.0, 1e-12, 0,
                                     Vector::Zero(2));
    CHECK(r.steps == 0);
    CHECK(r.certificate == 0.0);
}

TEST_CASE("oracle failure carries the best certificate") {
    FunctionObjective f = half_square();
    OptimizeRequest req;
    bool threw = false;
    try {
        // far start, 2-step budget: cannot certify 1e-12
        oracle_minimize(f, DomainSpec::unconstrained(2), 1.0, 1.0, 1e-12, 2,
                        Vector::Constant(2, 50.0));
    } catch (const OracleFailure& e) {
        threw = true;
        CHECK(e.budget() == 2);
        CHECK(e.best_certificate() > 1e-12);
    }
    CHECK(threw);
}

TEST_CASE("mirror oracle reaches the regularized minimizer") {
    GeneratorSpec gs;
    gs.seed = 19;
    gs.n = 25;
    gs.d = 4;
    gs.geometry = NormSpec::l1();
    Dataset data = generate_dataset(gs);
    LossModel loss = certify_constants(LossKind::Logistic, 1.0, data);
    EmpiricalRisk risk(data, loss);
    MirrorMap ent = MirrorMap::negative_entropy(DomainSpec::simplex(4));
    double lambda = 0.2 * loss.beta;
    RegularizedRisk reg = RegularizedRisk::mirror(risk, lambda, ent);
    OracleResult r = oracle_minimize_mirror(reg, ent, loss.beta + lambda, lambda);
    CHECK(r.certificate <= 1e-12);
    // interior stationarity: the regularized gradient is constant across the
    // coordinates that carry mass
    Vector g = reg.grad(r.x);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < 4; ++i) {
        if (r.x[i] >= 1e-3) {
            lo = std::min(lo, g[i]);
            hi = std::max(hi, g[i]);
        }
    }
    CHECK(hi - lo <= 1e-3);
}

TEST_CASE("non-finite gradients are reported with the step index") {
    FunctionObjective bad([](const Vector& x, Vector* g) {
        if (g) *g = Vector::Constant(1, std::numeric_limits<double>::quiet_NaN());
        return x[0];
    });
    OptimizeRequest req;
    req.objective = &bad;
    req.beta_eff = 1.0;
    req.domain = DomainSpec::unconstrained(1);
    req.x0 = Vector::Zero(1);
    req.steps = 3;
    CHECK_THROWS_AS(run_base(BaseOptimizer::gd(), req), NumericError);
}

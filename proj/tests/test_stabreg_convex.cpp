#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "stabreg/io.hpp"
#include "stabreg/stabreg_convex.hpp"
#include "support/test_util.hpp"

using namespace stabreg;
using test_util::vec2;

namespace {

WrapperConfig base_config(double beta, double lipschitz, double d_bound, long n, int dim) {
    WrapperConfig cfg;
    cfg.base = BaseOptimizer::nag();
    cfg.beta = beta;
    cfg.lipschitz = lipschitz;
    cfg.distance_bound = d_bound;
    cfg.n = n;
    cfg.domain = DomainSpec::unconstrained(dim);
    cfg.x0 = Vector::Zero(dim);
    return cfg;
}

struct Fixture {
    Dataset data;
    LossModel loss;
    WrapperConfig cfg;
};

Fixture logistic_fixture(std::uint64_t seed, int n, int d, double radius, double planted = 3.0) {
    GeneratorSpec gs;
    gs.seed = seed;
    gs.n = n;
    gs.d = d;
    gs.planted_norm = planted;
    Fixture f;
    f.data = generate_dataset(gs);
    f.loss = certify_constants(LossKind::Logistic, 1.0, f.data);
    f.cfg = base_config(f.loss.beta, f.loss.lipschitz, 2.0 * radius, n, d);
    f.cfg.domain = DomainSpec::l2_ball(d, radius);
    return f;
}

}  // namespace

TEST_CASE("epoch schedule formulas") {
    // beta=1, C=2, gamma=2, D=1, n=100, G=1
    WrapperConfig cfg = base_config(1.0, 1.0, 1.0, 100, 1);
    EpochParams p0 = epoch_schedule(0, cfg);
    CHECK(p0.lambda == 0.25);
    CHECK(p0.m == 10);      // ceil(2 log2 25)
    CHECK(p0.t_half == 7);  // ceil(sqrt(8 * 5))

    // exact halving between epochs
    EpochParams p1 = epoch_schedule(1, cfg);
    CHECK(p1.lambda == p0.lambda / 2.0);
    for (int k = 0; k < 40; ++k) {
        CHECK(epoch_schedule(k, cfg).lambda == std::ldexp(cfg.beta, -(k + 2)));
    }

    // the max floor engages when lambda D n / G = 1
    WrapperConfig unit = base_config(1.0, 0.25, 1.0, 4, 1);  // lambda_0 D n / G = 4/4
    CHECK(epoch_schedule(0, unit).m == 1);

    // underflow ends the schedule
    CHECK_THROWS_AS(epoch_schedule(1500, cfg), ScheduleExhausted);
}

TEST_CASE("trace invariants and anytime output") {
    Fixture f = logistic_fixture(17, 60, 3, 0.8);
    EmpiricalRisk risk(f.data, f.loss);
    f.cfg.t_max = 300;
    RunTrace trace = run_stabreg_convex(f.cfg, risk);

    REQUIRE(trace.iterates.size() == 301);
    REQUIRE(!trace.epochs.empty());

    // x_t constant within epochs, equal to the epoch's starting point
    long covered = 0;
    double sum_spans = 0.0;
    for (const EpochRecord& e : trace.epochs) {
        CHECK(e.t_start == covered);
        CHECK(e.t_end == e.t_start + e.m * e.t_half);
        sum_spans += static_cast<double>(e.m) * static_cast<double>(e.t_half);
        for (long t = e.t_start; t < std::min<long>(e.t_end, 300); ++t) {
            CHECK((trace.iterates[static_cast<std::size_t>(t)] - e.y_start).norm() == 0.0);
        }
        covered = e.t_end;
        CHECK(static_cast<double>(covered) == sum_spans);  // cumulative step identity
    }
    // trailing steps hold the last completed output
    const Vector& last = trace.epochs.back().y_end;
    for (long t = covered; t <= 300; ++t) {
        CHECK((trace.iterates[static_cast<std::size_t>(t)] - last).norm() == 0.0);
    }
    CHECK(trace.termination == "t_max");
}

TEST_CASE("an incomplete first epoch leaves every iterate at x0") {
    Fixture f = logistic_fixture(21, 80, 3, 0.8);
    EmpiricalRisk risk(f.data, f.loss);
    EpochParams p0 = epoch_schedule(0, f.cfg);
    f.cfg.t_max = p0.m * p0.t_half - 1;
    RunTrace trace = run_stabreg_convex(f.cfg, risk);
    CHECK(trace.epochs.empty());
    for (const Vector& x : trace.iterates) CHECK((x - f.cfg.x0).norm() == 0.0);
}

TEST_CASE("same config gives bit-identical traces") {
    Fixture f = logistic_fixture(33, 50, 4, 1.0);
    EmpiricalRisk risk(f.data, f.loss);
    f.cfg.t_max = 250;
    RunTrace a = run_stabreg_convex(f.cfg, risk);
    RunTrace b = run_stabreg_convex(f.cfg, risk);
    REQUIRE(a.iterates.size() == b.iterates.size());
    for (std::size_t t = 0; t < a.iterates.size(); ++t) {
        CHECK(std::equal(a.iterates[t].data(), a.iterates[t].data() + a.iterates[t].size(),
                         b.iterates[t].data()));
    }
}

TEST_CASE("halving and geometry checks pass on a real run") {
    Fixture f = logistic_fixture(5, 60, 3, 0.6);
    EmpiricalRisk risk(f.data, f.loss);
    f.cfg.t_max = 400;
    RunTrace trace = run_stabreg_convex(f.cfg, risk);
    REQUIRE(trace.epochs.size() >= 3);

    CheckReport halving = check_halving(trace, risk, f.cfg);
    CHECK(halving.passed());
    CheckReport geometry = check_epoch_geometry(trace, risk, f.cfg);
    CHECK(geometry.passed());
}

TEST_CASE("vacuous checks on an empty trace") {
    Fixture f = logistic_fixture(6, 40, 2, 0.5);
    EmpiricalRisk risk(f.data, f.loss);
    f.cfg.t_max = 0;
    RunTrace trace = run_stabreg_convex(f.cfg, risk);
    CHECK(trace.epochs.empty());
    CHECK(check_halving(trace, risk, f.cfg).passed());
    CHECK(check_epoch_geometry(trace, risk, f.cfg).passed());
}

TEST_CASE("a falsified rate constant breaks the halving guarantee") {
    // ill-conditioned regression: the weak direction needs the full budget
    Dataset data;
    data.geometry = NormSpec::l2();
    data.feature_bound = 1.0;
    data.examples.push_back({vec2(1.0, 0.0), 0.0});
    data.examples.push_back({vec2(0.0, 0.1), 1.0});
    LossModel loss = certify_constants(LossKind::PseudoHuber, 10.0, data);
    EmpiricalRisk risk(data, loss);

    WrapperConfig cfg = base_config(loss.beta, loss.lipschitz, 12.0, 2, 2);
    cfg.base = BaseOptimizer::gd();
    cfg.t_max = 60;
    RunTrace honest = run_stabreg_convex(cfg, risk);
    CHECK(check_halving(honest, risk, cfg).passed());

    WrapperConfig lying = cfg;
    lying.base.rate_c /= 10.0;
    RunTrace trace = run_stabreg_convex(lying, risk);
    REQUIRE(!trace.epochs.empty());
    CHECK(!check_halving(trace, risk, lying).passed());
}

TEST_CASE("standalone minimizer-distance instance") {
    // f(x) = (x-1)^2/2 anchored at 0: minimizers 0.5 (lambda=1) and 1 (lambda=0)
    Eigen::MatrixXd q(1, 1);
    q << 1.0;
    Vector c = Vector::Constant(1, 1.0);
    Vector x0 = Vector::Zero(1);
    Vector m1 = (q + Eigen::MatrixXd::Identity(1, 1)).ldlt().solve(q * c + x0);
    CHECK(m1[0] == doctest::Approx(0.5));
    Vector m2 = c;
    double lhs = (m1 - m2).squaredNorm();
    double rhs = (1.0 - 0.0) / (1.0 + 0.0) * ((m2 - x0).squaredNorm() - (m1 - x0).squaredNorm());
    CHECK(lhs == doctest::Approx(0.25));
    CHECK(rhs == doctest::Approx(0.75));
    CHECK(lhs <= rhs);
}

TEST_CASE("trace csv layout") {
    Fixture f = logistic_fixture(8, 30, 2, 0.5);
    EmpiricalRisk risk(f.data, f.loss);
    f.cfg.t_max = 120;
    RunTrace trace = run_stabreg_convex(f.cfg, risk);
    std::stringstream ss;
    write_trace_csv(ss, trace, 0.0, 1e-12);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "t,obj_gap,epoch_k,lambda_k");
    int rows = 0;
    std::string line;
    while (std::getline(ss, line)) ++rows;
    CHECK(rows == 121);
}

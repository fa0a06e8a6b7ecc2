#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "stabreg/objectives.hpp"
#include "support/test_util.hpp"

using namespace stabreg;
using test_util::vec2;

namespace {

Dataset tiny_logistic_dataset(std::uint64_t seed, int n, int d) {
    GeneratorSpec gs;
    gs.seed = seed;
    gs.n = n;
    gs.d = d;
    return generate_dataset(gs);
}

}  // namespace

TEST_CASE("loss values") {
    LossModel logistic = certify_from_bound(LossKind::Logistic, 1.0, NormSpec::l2(), 2.0);
    Example z{vec2(1.0, 0.5), 1.0};
    // margin zero
    CHECK(loss_value(logistic, Vector::Zero(2), z) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    // margin log 3 gives log(1 + 1/3) = log(4/3)
    Example z3{vec2(1.0, 0.0), 1.0};
    Vector x = vec2(std::log(3.0), 0.0);
    CHECK(loss_value(logistic, x, z3) == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));

    LossModel huber = certify_from_bound(LossKind::PseudoHuber, 1.0, NormSpec::l2(), 2.0);
    Example zr{vec2(1.0, 0.0), 0.7};
    CHECK(loss_value(huber, vec2(0.7, 0.3), zr) == doctest::Approx(0.0).epsilon(1e-14));

    LossModel hinge = certify_from_bound(LossKind::SmoothedHinge, 0.5, NormSpec::l2(), 2.0);
    CHECK(loss_value(hinge, vec2(2.0, 0.0), z3) == 0.0);            // margin 2 >= 1
    CHECK(loss_value(hinge, vec2(-1.0, 0.0), z3) ==
          doctest::Approx(1.0 - (-1.0) - 0.25).epsilon(1e-14));     // linear branch
}

TEST_CASE("gradients match central finite differences") {
    Dataset data = tiny_logistic_dataset(5, 5, 3);
    for (LossKind kind : {LossKind::Logistic, LossKind::PseudoHuber, LossKind::SmoothedHinge}) {
        Dataset d2 = data;
        if (kind == LossKind::PseudoHuber) {
            for (auto& z : d2.examples) z.b *= 0.7;  // real labels are fine for regression
        }
        LossModel loss = certify_constants(kind, 0.8, d2);
        EmpiricalRisk risk(d2, loss);
        Rng rng(123);
        for (int i = 0; i < 20; ++i) {
            Vector x = test_util::random_vec(3, rng);
            Vector g;
            risk.value_and_grad(x, &g);
            Vector fd = test_util::fd_gradient([&](const Vector& y) { return risk.value(y); }, x);
            CHECK((g - fd).norm() <= 1e-6 * std::max(1.0, g.norm()));
        }
    }
}

TEST_CASE("risk over a single example equals the loss") {
    Dataset data = tiny_logistic_dataset(2, 1, 3);
    LossModel loss = certify_constants(LossKind::Logistic, 1.0, data);
    EmpiricalRisk risk(data, loss);
    Rng rng(4);
    Vector x = test_util::random_vec(3, rng);
    Vector g, gl;
    CHECK(risk.value_and_grad(x, &g) ==
          doctest::Approx(loss_value_and_grad(loss, x, data.examples[0], &gl)).epsilon(1e-15));
    CHECK((g - gl).norm() == 0.0);
}

TEST_CASE("zero regularization coincides with the base risk") {
    Dataset data = tiny_logistic_dataset(8, 6, 2);
    LossModel loss = certify_constants(LossKind::Logistic, 1.0, data);
    EmpiricalRisk risk(data, loss);
    RegularizedRisk reg = RegularizedRisk::squared_anchor(risk, 0.0, Vector::Zero(2));
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        Vector x = test_util::random_vec(2, rng);
        CHECK(reg.value(x) == doctest::Approx(risk.value(x)).epsilon(1e-12));
    }
}

TEST_CASE("certified constants for the spec instances") {
    // single example a = (2, 0), l2 geometry
    Dataset d1;
    d1.geometry = NormSpec::l2();
    d1.feature_bound = 2.0;
    d1.examples.push_back({vec2(2.0, 0.0), 1.0});
    LossModel m1 = certify_constants(LossKind::Logistic, 1.0, d1);
    CHECK(m1.beta == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m1.lipschitz == doctest::Approx(2.0).epsilon(1e-14));

    // a = (1, 1) in l1 geometry: dual linf norm is 1
    Dataset d2;
    d2.geometry = NormSpec::l1();
    d2.feature_bound = 1.0;
    d2.examples.push_back({vec2(1.0, 1.0), -1.0});
    LossModel m2 = certify_constants(LossKind::Logistic, 1.0, d2);
    CHECK(m2.beta == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(m2.lipschitz == doctest::Approx(1.0).epsilon(1e-14));

    // all-zero features carry no signal
    Dataset d3;
    d3.examples.push_back({Vector::Zero(2), 1.0});
    CHECK_THROWS_AS(certify_constants(LossKind::Logistic, 1.0, d3), DegenerateDataError);
}

TEST_CASE("certified constants hold on random points") {
    Rng rng(77);
    for (auto geometry : {NormSpec::l2(), NormSpec::l1()}) {
        GeneratorSpec gs;
        gs.seed = 31;
        gs.n = 12;
        gs.d = 4;
        gs.geometry = geometry;
        Dataset data = generate_dataset(gs);
        NormSpec star = dual(geometry);
        for (LossKind kind : {LossKind::Logistic, LossKind::PseudoHuber, LossKind::SmoothedHinge}) {
            LossModel loss = certify_constants(kind, 0.7, data);
            for (int i = 0; i < 10000; ++i) {
                const Example& z = data.examples[rng.index(data.size())];
                Vector x = test_util::random_vec(4, rng, 2.0);
                Vector y = test_util::random_vec(4, rng, 2.0);
                Vector gx, gy;
                double fx = loss_value_and_grad(loss, x, z, &gx);
                double fy = loss_value_and_grad(loss, y, z, &gy);
                // G-Lipschitz gradients (dual norm)
                CHECK(norm(gx, star) <= loss.lipschitz + 1e-9);
                // beta-smoothness of the gradient map
                CHECK(norm(gx - gy, star) <= loss.beta * norm(x - y, geometry) + 1e-9);
                // smoothness quadratic upper bound
                double quad = fx + gx.dot(y - x) + 0.5 * loss.beta * norm(y - x, geometry) *
                                                       norm(y - x, geometry);
                CHECK(fy <= quad + 1e-9);
                // convexity lower bound
                CHECK(fy >= fx + gx.dot(y - x) - 1e-9);
                // midpoint convexity
                double mid = loss_value(loss, 0.5 * (x + y), z);
                CHECK(mid <= 0.5 * (fx + fy) + 1e-12);
            }
        }
    }
}

TEST_CASE("anchored regularization is lambda-strongly convex") {
    Dataset data = tiny_logistic_dataset(17, 10, 3);
    LossModel loss = certify_constants(LossKind::Logistic, 1.0, data);
    EmpiricalRisk risk(data, loss);
    double lambda = 0.3;
    RegularizedRisk reg = RegularizedRisk::squared_anchor(risk, lambda, Vector::Zero(3));
    Rng rng(6);
    for (int i = 0; i < 2000; ++i) {
        Vector x = test_util::random_vec(3, rng, 2.0);
        Vector y = test_util::random_vec(3, rng, 2.0);
        Vector gx;
        double fx = reg.value_and_grad(x, &gx);
        CHECK(reg.value(y) >= fx + gx.dot(y - x) + 0.5 * lambda * (y - x).squaredNorm() - 1e-9);
    }
}

TEST_CASE("make_neighbor") {
    Dataset data = tiny_logistic_dataset(3, 4, 2);
    // identity replacement
    Dataset same = make_neighbor(data, 2, data.examples[2]);
    for (int i = 0; i < 4; ++i) {
        CHECK((same.examples[i].a - data.examples[i].a).norm() == 0.0);
        CHECK(same.examples[i].b == data.examples[i].b);
    }
    // replacement differs only at the given position, and is an involution
    Example z{vec2(0.5, -0.5), -1.0};
    Dataset changed = make_neighbor(data, 1, z);
    CHECK((changed.examples[1].a - z.a).norm() == 0.0);
    CHECK((changed.examples[0].a - data.examples[0].a).norm() == 0.0);
    Dataset restored = make_neighbor(changed, 1, data.examples[1]);
    for (int i = 0; i < 4; ++i) {
        CHECK((restored.examples[i].a - data.examples[i].a).norm() == 0.0);
    }
    CHECK_THROWS_AS(make_neighbor(data, 7, z), ConfigError);
}

TEST_CASE("generator is deterministic and respects bounds") {
    GeneratorSpec gs;
    gs.seed = 99;
    gs.n = 50;
    gs.d = 4;
    gs.feature_bound = 0.7;
    Dataset a = generate_dataset(gs);
    Dataset b = generate_dataset(gs);
    REQUIRE(a.size() == b.size());
    for (int i = 0; i < a.size(); ++i) {
        CHECK((a.examples[i].a - b.examples[i].a).norm() == 0.0);
        CHECK(a.examples[i].b == b.examples[i].b);
        CHECK(a.examples[i].a.norm() <= 0.7 + 1e-12);
        CHECK(std::abs(a.examples[i].b) == 1.0);
    }
    gs.geometry = NormSpec::l1();
    Dataset c = generate_dataset(gs);
    for (const Example& z : c.examples) {
        CHECK(norm(z.a, NormSpec::linf()) <= 0.7 + 1e-12);
    }
}

TEST_CASE("dataset csv round trip") {
    Dataset data = tiny_logistic_dataset(123, 7, 3);
    std::stringstream ss;
    write_dataset_csv(ss, data);
    std::string first_line = ss.str().substr(0, ss.str().find('\n'));
    CHECK(first_line == "b,a_1,a_2,a_3");
    Dataset back = read_dataset_csv(ss, data.geometry, data.feature_bound);
    REQUIRE(back.size() == data.size());
    for (int i = 0; i < data.size(); ++i) {
        CHECK((back.examples[i].a - data.examples[i].a).norm() == 0.0);
        CHECK(back.examples[i].b == data.examples[i].b);
    }
}

TEST_CASE("pools are nested as the size grows") {
    GeneratorSpec gs;
    gs.seed = 5;
    gs.n = 10;
    gs.d = 3;
    auto small = generate_pool(gs, 20);
    auto large = generate_pool(gs, 40);
    REQUIRE(small.size() == 20);
    REQUIRE(large.size() == 40);
    for (std::size_t i = 0; i < small.size(); ++i) {
        CHECK((small[i].a - large[i].a).norm() == 0.0);
        CHECK(small[i].b == large[i].b);
    }
}

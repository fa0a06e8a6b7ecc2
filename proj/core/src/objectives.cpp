#include "stabreg/objectives.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace stabreg {

Dataset make_neighbor(const Dataset& s, int i, const Example& z) {
    if (i < 0 || i >= s.size()) throw ConfigError("make_neighbor: index out of range");
    if (z.a.size() != s.dim()) throw ConfigError("make_neighbor: dimension mismatch");
    if (norm(z.a, dual(s.geometry)) > s.feature_bound * (1.0 + 1e-12)) {
        throw ConfigError("make_neighbor: replacement violates the feature bound");
    }
    Dataset out = s;
    out.examples[static_cast<std::size_t>(i)] = z;
    return out;
}

LossKind loss_kind_from_string(const std::string& name) {
    if (name == "logistic") return LossKind::Logistic;
    if (name == "pseudo_huber" || name == "pseudohuber") return LossKind::PseudoHuber;
    if (name == "smoothed_hinge") return LossKind::SmoothedHinge;
    throw ConfigError("unknown loss kind: " + name);
}

const char* to_string(LossKind kind) {
    switch (kind) {
        case LossKind::Logistic: return "logistic";
        case LossKind::PseudoHuber: return "pseudo_huber";
        case LossKind::SmoothedHinge: return "smoothed_hinge";
    }
    return "?";
}

bool loss_is_classification(LossKind kind) { return kind != LossKind::PseudoHuber; }

namespace {

// log(1 + exp(-t)) without overflow
double log1p_exp_neg(double t) {
    if (t >= 0.0) return std::log1p(std::exp(-t));
    return -t + std::log1p(std::exp(t));
}

// scalar loss phi and derivative at the margin (classification) or residual
// (regression)
double scalar_loss(const LossModel& loss, double t, double* dphi) {
    switch (loss.kind) {
        case LossKind::Logistic: {
            if (dphi) *dphi = -1.0 / (1.0 + std::exp(t));
            return log1p_exp_neg(t);
        }
        case LossKind::PseudoHuber: {
            double d2 = loss.delta * loss.delta;
            double r = std::sqrt(1.0 + t * t / d2);
            if (dphi) *dphi = t / r;
            return d2 * (r - 1.0);
        }
        case LossKind::SmoothedHinge: {
            double dl = loss.delta;
            if (t >= 1.0) {
                if (dphi) *dphi = 0.0;
                return 0.0;
            }
            if (t >= 1.0 - dl) {
                if (dphi) *dphi = -(1.0 - t) / dl;
                return (1.0 - t) * (1.0 - t) / (2.0 * dl);
            }
            if (dphi) *dphi = -1.0;
            return 1.0 - t - dl / 2.0;
        }
    }
    throw ConfigError("unknown loss kind");
}

void constant_factors(LossKind kind, double delta, double* c_beta, double* c_lip) {
    switch (kind) {
        case LossKind::Logistic:
            *c_beta = 0.25;  // sigmoid derivative bound
            *c_lip = 1.0;
            return;
        case LossKind::PseudoHuber:
            *c_beta = 1.0;
            *c_lip = delta;
            return;
        case LossKind::SmoothedHinge:
            *c_beta = 1.0 / delta;
            *c_lip = 1.0;
            return;
    }
    throw ConfigError("unknown loss kind");
}

}  // namespace

double loss_value(const LossModel& loss, const Vector& x, const Example& z) {
    return loss_value_and_grad(loss, x, z, nullptr);
}

double loss_value_and_grad(const LossModel& loss, const Vector& x, const Example& z, Vector* grad) {
    double inner = z.a.dot(x);
    double dphi = 0.0;
    double v;
    if (loss_is_classification(loss.kind)) {
        v = scalar_loss(loss, z.b * inner, grad ? &dphi : nullptr);
        if (grad) *grad = (dphi * z.b) * z.a;
    } else {
        v = scalar_loss(loss, inner - z.b, grad ? &dphi : nullptr);
        if (grad) *grad = dphi * z.a;
    }
    return v;
}

LossModel certify_constants(LossKind kind, double delta, const Dataset& data) {
    if (data.size() < 1) throw ConfigError("certify_constants: empty dataset");
    const NormSpec star = dual(data.geometry);
    double m = 0.0;
    for (const Example& z : data.examples) m = std::max(m, norm(z.a, star));
    if (m == 0.0) throw DegenerateDataError("certify_constants: all-zero features give beta = 0");
    double c_beta, c_lip;
    constant_factors(kind, delta, &c_beta, &c_lip);
    return {kind, delta, data.geometry, c_beta * m * m, c_lip * m};
}

LossModel certify_from_bound(LossKind kind, double delta, const NormSpec& geometry,
                             double feature_bound) {
    if (!(feature_bound > 0.0)) throw DegenerateDataError("certify_from_bound: bound must be > 0");
    double c_beta, c_lip;
    constant_factors(kind, delta, &c_beta, &c_lip);
    return {kind, delta, geometry, c_beta * feature_bound * feature_bound, c_lip * feature_bound};
}

double EmpiricalRisk::value(const Vector& x) const {
    double s = 0.0;
    for (const Example& z : data_->examples) s += loss_value(loss_, x, z);
    return s / data_->size();
}

double EmpiricalRisk::value_and_grad(const Vector& x, Vector* grad) const {
    if (!grad) return value(x);
    double s = 0.0;
    Vector g = Vector::Zero(x.size());
    Vector gi;
    for (const Example& z : data_->examples) {
        s += loss_value_and_grad(loss_, x, z, &gi);
        g += gi;
    }
    *grad = g / data_->size();
    return s / data_->size();
}

RegularizedRisk RegularizedRisk::squared_anchor(const Objective& base, double lambda, Vector x0) {
    if (lambda < 0.0) throw ConfigError("regularization weight must be >= 0");
    RegularizedRisk r(base, lambda, Form::SquaredAnchor);
    r.x0_ = std::move(x0);
    return r;
}

RegularizedRisk RegularizedRisk::mirror(const Objective& base, double lambda, const MirrorMap& map) {
    if (lambda < 0.0) throw ConfigError("regularization weight must be >= 0");
    RegularizedRisk r(base, lambda, Form::Mirror);
    r.map_ = &map;
    return r;
}

double RegularizedRisk::value(const Vector& x) const {
    double v = base_->value(x);
    if (lambda_ == 0.0) return v;
    if (form_ == Form::SquaredAnchor) return v + 0.5 * lambda_ * (x - x0_).squaredNorm();
    return v + lambda_ * map_->value(x);
}

double RegularizedRisk::value_and_grad(const Vector& x, Vector* grad) const {
    if (!grad) return value(x);
    double v = base_->value_and_grad(x, grad);
    if (lambda_ == 0.0) return v;
    if (form_ == Form::SquaredAnchor) {
        *grad += lambda_ * (x - x0_);
        return v + 0.5 * lambda_ * (x - x0_).squaredNorm();
    }
    *grad += lambda_ * map_->grad(x);
    return v + lambda_ * map_->value(x);
}

double strong_convexity_lower_bound(const EmpiricalRisk& risk, const DomainSpec& dom) {
    const Dataset& data = risk.dataset();
    const LossModel& loss = risk.loss();
    // bound on |<a, x>| over the domain
    double xmax;
    switch (dom.kind) {
        case DomainKind::L2Ball: xmax = dom.radius; break;
        case DomainKind::LpBall: xmax = dom.radius; break;    // ||x||_2 <= ||x||_p, p <= 2
        case DomainKind::Simplex: xmax = 1.0; break;
        case DomainKind::Unconstrained: return 0.0;
        default: return 0.0;
    }
    double amax = 0.0;
    for (const Example& z : data.examples) amax = std::max(amax, z.a.norm());
    double tmax = amax * xmax + std::abs([&] {
        if (loss_is_classification(loss.kind)) return 0.0;
        double bmax = 0.0;
        for (const Example& z : data.examples) bmax = std::max(bmax, std::abs(z.b));
        return bmax;
    }());

    // curvature floor of the scalar loss over |t| <= tmax
    double floor = 0.0;
    switch (loss.kind) {
        case LossKind::Logistic: {
            double s = 1.0 / (1.0 + std::exp(-tmax));
            floor = s * (1.0 - s);
            break;
        }
        case LossKind::PseudoHuber: {
            double d2 = loss.delta * loss.delta;
            floor = std::pow(1.0 + tmax * tmax / d2, -1.5);
            break;
        }
        case LossKind::SmoothedHinge:
            return 0.0;  // flat regions
    }

    Eigen::MatrixXd second_moment = Eigen::MatrixXd::Zero(data.dim(), data.dim());
    for (const Example& z : data.examples) second_moment += z.a * z.a.transpose();
    second_moment /= data.size();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(second_moment);
    double lmin = es.eigenvalues().minCoeff();
    return std::max(0.0, floor * lmin);
}

namespace {

Vector random_feature(Rng& rng, int d, double bound, const NormSpec& geometry) {
    Vector a(d);
    if (geometry.kind == NormKind::L1 || geometry.kind == NormKind::Linf) {
        // l1 geometry measures features in l-infinity: fill the box
        for (int i = 0; i < d; ++i) a[i] = rng.uniform(-bound, bound);
        return a;
    }
    for (int i = 0; i < d; ++i) a[i] = rng.normal();
    double na = a.norm();
    if (na == 0.0) return Vector::Zero(d);
    return a * (bound * std::pow(rng.uniform(), 1.0 / d) / na);
}

}  // namespace

Dataset generate_dataset(const GeneratorSpec& spec) {
    if (spec.n < 1 || spec.d < 1) throw ConfigError("generator: n and d must be >= 1");
    Rng rng(spec.seed);
    Vector w(spec.d);
    for (int i = 0; i < spec.d; ++i) w[i] = rng.normal();
    w *= spec.planted_norm / std::max(w.norm(), 1e-12);

    Dataset data;
    data.feature_bound = spec.feature_bound;
    data.geometry = spec.geometry;
    data.examples.reserve(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        Example z;
        z.a = random_feature(rng, spec.d, spec.feature_bound, spec.geometry);
        double margin = w.dot(z.a);
        if (spec.classification) {
            double pr = 1.0 / (1.0 + std::exp(-margin / std::max(spec.noise, 1e-12)));
            z.b = rng.uniform() < pr ? 1.0 : -1.0;
        } else {
            double u = rng.uniform();
            u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
            z.b = margin + spec.noise * std::log(u / (1.0 - u));
        }
        data.examples.push_back(std::move(z));
    }
    return data;
}

std::vector<Example> generate_pool(const GeneratorSpec& spec, int pool_size) {
    std::vector<Example> pool;
    pool.reserve(static_cast<std::size_t>(std::max(pool_size, 0)));
    Rng rng(spec.seed ^ 0xfeedULL);
    const double bmag = spec.classification ? 1.0 : spec.feature_bound + 3.0 * spec.noise;

    auto push = [&](const Vector& a, double b) {
        if (static_cast<int>(pool.size()) < pool_size) pool.push_back({a, b});
    };
    // extremes first so pools for growing sizes are nested
    for (int i = 0; i < spec.d && static_cast<int>(pool.size()) < pool_size; ++i) {
        Vector a = Vector::Zero(spec.d);
        a[i] = spec.feature_bound;
        push(a, bmag);
        push(a, -bmag);
        push(-a, bmag);
        push(-a, -bmag);
    }
    if (spec.geometry.kind == NormKind::L1 || spec.geometry.kind == NormKind::Linf) {
        Vector corner = Vector::Constant(spec.d, spec.feature_bound);
        push(corner, bmag);
        push(corner, -bmag);
        push(-corner, bmag);
        push(-corner, -bmag);
    }
    while (static_cast<int>(pool.size()) < pool_size) {
        Vector a = random_feature(rng, spec.d, spec.feature_bound, spec.geometry);
        double b = spec.classification ? (rng.uniform() < 0.5 ? 1.0 : -1.0)
                                       : rng.uniform(-bmag, bmag);
        pool.push_back({std::move(a), b});
    }
    return pool;
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
    out << "b";
    for (int j = 1; j <= data.dim(); ++j) out << ",a_" << j;
    out << "\n";
    char buf[32];
    for (const Example& z : data.examples) {
        std::snprintf(buf, sizeof(buf), "%.17g", z.b);
        out << buf;
        for (int j = 0; j < data.dim(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", z.a[j]);
            out << "," << buf;
        }
        out << "\n";
    }
}

Dataset read_dataset_csv(std::istream& in, const NormSpec& geometry, double feature_bound) {
    Dataset data;
    data.geometry = geometry;
    data.feature_bound = feature_bound;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("dataset csv: missing header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() < 2) throw ConfigError("dataset csv: malformed row");
        Example z;
        z.b = row[0];
        z.a = Vector(static_cast<Eigen::Index>(row.size() - 1));
        for (std::size_t j = 1; j < row.size(); ++j) z.a[static_cast<Eigen::Index>(j - 1)] = row[j];
        data.examples.push_back(std::move(z));
    }
    if (data.examples.empty()) throw ConfigError("dataset csv: no rows");
    return data;
}

}  // namespace stabreg

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stabreg/mirror.hpp"
#include "stabreg/objective.hpp"
#include "stabreg/vecspace.hpp"

namespace stabreg {

struct Example {
    Vector a;       // features
    double b = 0.0; // +-1 for classification losses, real for regression
};

struct Dataset {
    std::vector<Example> examples;
    double feature_bound = 1.0;       // declared bound on the dual-norm size of features
    NormSpec geometry = NormSpec::l2();

    int size() const { return static_cast<int>(examples.size()); }
    int dim() const { return examples.empty() ? 0 : static_cast<int>(examples[0].a.size()); }
};

// Returns a copy of S with position i (0-based) replaced by z.
Dataset make_neighbor(const Dataset& s, int i, const Example& z);

// ---------------------------------------------------------------------------
// Losses. Every member of the menu is simultaneously convex, smooth and
// Lipschitz, which is what both wrapper algorithms require.

enum class LossKind { Logistic, PseudoHuber, SmoothedHinge };

LossKind loss_kind_from_string(const std::string& name);
const char* to_string(LossKind kind);
bool loss_is_classification(LossKind kind);

struct LossModel {
    LossKind kind = LossKind::Logistic;
    double delta = 1.0;  // PseudoHuber / SmoothedHinge scale
    NormSpec norm = NormSpec::l2();
    double beta = 0.0;      // smoothness w.r.t. `norm`
    double lipschitz = 0.0; // bound on the dual norm of gradients
};

double loss_value(const LossModel& loss, const Vector& x, const Example& z);
double loss_value_and_grad(const LossModel& loss, const Vector& x, const Example& z, Vector* grad);

// Certified constants from the realized feature maxima of the dataset:
// beta = c_beta * max_i ||a_i||_*^2, G = c_G * max_i ||a_i||_* where * is the
// dual of the declared geometry. Throws DegenerateDataError when the features
// are all zero.
LossModel certify_constants(LossKind kind, double delta, const Dataset& data);

// Same constants from the declared feature bound instead of the realized
// maxima, so the certificate stays valid for every neighboring dataset.
LossModel certify_from_bound(LossKind kind, double delta, const NormSpec& geometry,
                             double feature_bound);

// ---------------------------------------------------------------------------
// Risks

// F_S(x) = (1/n) sum_i loss(x; z_i)
class EmpiricalRisk final : public Objective {
public:
    EmpiricalRisk(const Dataset& data, const LossModel& loss) : data_(&data), loss_(loss) {}

    double value(const Vector& x) const override;
    double value_and_grad(const Vector& x, Vector* grad) const override;

    const Dataset& dataset() const { return *data_; }
    const LossModel& loss() const { return loss_; }

private:
    const Dataset* data_;
    LossModel loss_;
};

// F_S(x) + lambda * r(x) where r is either (1/2)||x - x0||_2^2 (anchored
// squared distance) or a mirror map R.
class RegularizedRisk final : public Objective {
public:
    static RegularizedRisk squared_anchor(const Objective& base, double lambda, Vector x0);
    static RegularizedRisk mirror(const Objective& base, double lambda, const MirrorMap& map);

    double value(const Vector& x) const override;
    double value_and_grad(const Vector& x, Vector* grad) const override;

    double lambda() const { return lambda_; }
    const Objective& base() const { return *base_; }

private:
    enum class Form { SquaredAnchor, Mirror };

    RegularizedRisk(const Objective& base, double lambda, Form form)
        : base_(&base), lambda_(lambda), form_(form) {}

    const Objective* base_;
    double lambda_;
    Form form_;
    Vector x0_;
    const MirrorMap* map_ = nullptr;
};

// Data-driven lower bound on the Euclidean strong convexity of the risk over
// the domain (curvature floor of the scalar loss times the smallest eigenvalue
// of the feature second-moment matrix). Zero when no positive bound exists.
double strong_convexity_lower_bound(const EmpiricalRisk& risk, const DomainSpec& dom);

// ---------------------------------------------------------------------------
// Synthetic data

struct GeneratorSpec {
    std::uint64_t seed = 1;
    int n = 100;
    int d = 2;
    double feature_bound = 1.0;       // B_a
    NormSpec geometry = NormSpec::l2();
    bool classification = true;       // labels +-1 vs real
    double planted_norm = 3.0;        // ||w|| of the planted linear model
    double noise = 1.0;               // label noise temperature / scale
};

// Features uniform on the l2 ball (l-infinity ball for l1/l-infinity
// geometry) of radius B_a; labels from a planted linear model with logistic
// noise. Deterministic in the spec.
Dataset generate_dataset(const GeneratorSpec& spec);

// Evaluation pool for the stability estimator: extreme feature vectors
// (axis poles and corners at the feature bound, both labels) followed by a
// deterministic random stream.
std::vector<Example> generate_pool(const GeneratorSpec& spec, int pool_size);

// CSV with header b,a_1,...,a_d.
void write_dataset_csv(std::ostream& out, const Dataset& data);
Dataset read_dataset_csv(std::istream& in, const NormSpec& geometry, double feature_bound);

}  // namespace stabreg

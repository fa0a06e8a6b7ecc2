#pragma once

#include <functional>
#include <utility>

#include "stabreg/vecspace.hpp"

namespace stabreg {

// First-order oracle: everything downstream touches objectives only through
// value/gradient queries.
class Objective {
public:
    virtual ~Objective() = default;
    virtual double value(const Vector& x) const = 0;
    // Returns the value and fills *grad when grad != nullptr.
    virtual double value_and_grad(const Vector& x, Vector* grad) const = 0;

    Vector grad(const Vector& x) const {
        Vector g;
        value_and_grad(x, &g);
        return g;
    }
};

// Adapter for ad-hoc objectives (test problems, closures over quadratics).
class FunctionObjective final : public Objective {
public:
    using Fn = std::function<double(const Vector&, Vector*)>;
    explicit FunctionObjective(Fn fn) : fn_(std::move(fn)) {}

    double value(const Vector& x) const override { return fn_(x, nullptr); }
    double value_and_grad(const Vector& x, Vector* grad) const override { return fn_(x, grad); }

private:
    Fn fn_;
};

}  // namespace stabreg

#pragma once
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace hnspec {

class Potential;
using PotentialPtr = std::shared_ptr<const Potential>;

// A real potential on [0, pi]. Implementations are immutable.
class Potential {
public:
    virtual ~Potential() = default;
    virtual double operator()(double x) const = 0;
    // points at which the potential may lose smoothness; integrators stop there
    virtual const std::vector<double>& breakpoints() const;
    virtual double integral() const;  // over [0, pi]
    virtual double minEstimate() const;
    virtual std::string kind() const = 0;
};

// Closed-form built-ins: zero, constant c, a*cos(k*x + p).
class ExprPotential final : public Potential {
public:
    enum class Name { Zero, Constant, Cos };
    static PotentialPtr zero();
    static PotentialPtr constant(double c);
    static PotentialPtr cosine(double amplitude = 1.0, double k = 1.0, double phase = 0.0, double offset = 0.0);

    double operator()(double x) const override;
    double integral() const override;
    double minEstimate() const override;
    std::string kind() const override { return "expr"; }

    Name name() const { return name_; }
    double amplitude() const { return a_; }
    double wave() const { return k_; }
    double phase() const { return p_; }
    double offset() const { return c_; }

private:
    ExprPotential(Name n, double a, double k, double p, double c) : name_(n), a_(a), k_(k), p_(p), c_(c) {}
    Name name_;
    double a_, k_, p_, c_;
};

// Piecewise-linear interpolation of samples; the grid nodes are breakpoints.
class SampledPotential final : public Potential {
public:
    SampledPotential(std::vector<double> grid, std::vector<double> values);
    double operator()(double x) const override;
    const std::vector<double>& breakpoints() const override { return grid_; }
    double integral() const override;
    double minEstimate() const override;
    std::string kind() const override { return "samples"; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> grid_, values_;
};

// Arbitrary evaluator, assumed smooth (not serializable).
class ClosurePotential final : public Potential {
public:
    explicit ClosurePotential(std::function<double(double)> fn, std::vector<double> breaks = {});
    double operator()(double x) const override { return fn_(x); }
    const std::vector<double>& breakpoints() const override { return breaks_; }
    std::string kind() const override { return "closure"; }

private:
    std::function<double(double)> fn_;
    std::vector<double> breaks_;
};

// q_hat = 2*Lambda + 2*w^2 - q with w = v'/v stored on a uniform grid.
// Between nodes w is a cubic Hermite interpolant whose nodal slopes come from the
// Riccati equation w' = q - Lambda - w^2, so q_hat is never obtained by differencing.
class DarbouxLayer final : public Potential {
public:
    DarbouxLayer(PotentialPtr base, double lambda, std::vector<double> w);

    double operator()(double x) const override;
    const std::vector<double>& breakpoints() const override { return breaks_; }
    double integral() const override;
    double minEstimate() const override { return min_; }
    std::string kind() const override { return "layer"; }

    const PotentialPtr& base() const { return base_; }
    double lambda() const { return lambda_; }
    const std::vector<double>& w() const { return w_; }
    int intervals() const { return static_cast<int>(w_.size()) - 1; }
    double logDerivative(double x) const;

    // starting uniform grid size for a layer built at Lambda on top of `base` (refined by the caller)
    static int gridSizeFor(double lambda, const PotentialPtr& base);
    static constexpr int kMinIntervals = 2048;

private:
    PotentialPtr base_;
    double lambda_;
    std::vector<double> w_, dw_;
    std::vector<double> breaks_;
    double min_;
};

// Sup-norm distance sampled on a fine uniform grid plus both sets of breakpoints.
double potentialDistance(const Potential& a, const Potential& b, int samples = 4096);

}  // namespace hnspec

#pragma once
#include <limits>
#include <string>
#include <vector>

#include "hnspec/polynomial.hpp"

namespace hnspec {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rational Herglotz-Nevanlinna boundary coefficient
//   f(l) = h0*l + h + sum_k delta_k / (h_k - l),   h0 >= 0, delta_k > 0, h_1 < h_2 < ...
// or the Dirichlet marker f = infinity.
class BoundaryFunction {
public:
    BoundaryFunction() = default;  // constant 0
    static BoundaryFunction dirichlet();
    static BoundaryFunction constant(double h);
    static BoundaryFunction affine(double h0, double h);
    // throws ValidationError when the Herglotz constraints fail
    static BoundaryFunction make(double h0, double h, std::vector<double> poles, std::vector<double> residues);

    bool isDirichlet() const { return dirichlet_; }
    bool isConstant() const { return !dirichlet_ && h0_ == 0.0 && poles_.empty(); }
    double h0() const { return h0_; }
    double h() const { return h_; }
    const std::vector<double>& poles() const { return poles_; }
    const std::vector<double>& residues() const { return residues_; }
    int poleCount() const { return static_cast<int>(poles_.size()); }

    // +inf at a pole and everywhere for Dirichlet
    double operator()(double lambda) const;
    double derivative(double lambda) const;

    int index() const;
    RealPolynomial up() const;
    RealPolynomial down() const;
    // f'(l) f_down(l)^2 written as up' down - up down', finite at the poles
    double slopeDownSquared(double lambda) const;

    RealPolynomial omegaPoly() const;
    double omega1() const;
    double omega2() const;

    double smallestPole() const;
    int poleCountUpTo(double lambda) const;

    bool operator==(const BoundaryFunction& o) const = default;
    std::string str() const;

private:
    bool dirichlet_ = false;
    double h0_ = 0.0;
    double h_ = 0.0;
    std::vector<double> poles_;
    std::vector<double> residues_;
};

// f "precedes" g in the partial order used for smallest-eigenvalue comparison.
bool precedes(const BoundaryFunction& f, const BoundaryFunction& g);

// Which of the two structurally different outcomes of theta is meant.
enum class ThetaBranch {
    Auto,   // detect tau == f(mu) within the relative tolerance below
    Equal,  // tau = f(mu): index drops by one
    Rise,   // tau > f(mu): index grows by one
};

constexpr double kThetaAutoTol = 1e-9;

// (mu - l) / (f(l) - tau) - tau, recovered as an element of the same class.
BoundaryFunction theta(double mu, double tau, const BoundaryFunction& f, ThetaBranch branch = ThetaBranch::Auto);

// The up/down pair obtained directly from the up/down pair of f for a given branch;
// used to cross-check the partial-fraction recovery.
void thetaUpDown(double mu, double tau, const BoundaryFunction& f, ThetaBranch branch,
                 RealPolynomial& up, RealPolynomial& down);

// Maximum absolute field difference; infinite when the shapes differ.
double fieldDistance(const BoundaryFunction& a, const BoundaryFunction& b);

}  // namespace hnspec

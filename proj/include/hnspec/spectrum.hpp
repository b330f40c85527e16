#pragma once
#include <vector>

#include "hnspec/ode.hpp"
#include "hnspec/problem.hpp"

namespace hnspec {

// chi = mantissa * 2^exponent with 0.5 <= |mantissa| < 1 (or mantissa = 0)
struct CharValue {
    double mantissa = 0.0;
    int exponent = 0;
    double value() const;
};

// chi(l) = F_up(l) phi(pi, l) - F_down(l) phi'(pi, l), evaluated with normalized initial data
CharValue charFnScaled(const Problem& p, double lambda, double tol = 1e-10);
double charFn(const Problem& p, double lambda, double tol = 1e-10);
// the same function from the right: f_down psi'(0) + f_up psi(0)
double charFnPsi(const Problem& p, double lambda, double tol = 1e-10);
// central difference with step 1e-4 * max(1, 2 sqrt|l|)
double charFnDerivative(const Problem& p, double lambda, double tol = 1e-10);

// g(l) = theta(pi, l) - theta_F(l), continuous and strictly increasing in l;
// the n-th eigenvalue is the unique solution of g(l) = n*pi.
double pruferMismatch(const Problem& p, double lambda, double tol = 1e-10);
// number of eigenvalues strictly below l
int eigenCount(const Problem& p, double lambda, double tol = 1e-10);

struct EigenOptions {
    double tol = 1e-10;      // integrator tolerance
    double lambdaTol = 1e-11; // relative bracket width at convergence
};

std::vector<double> eigenvalues(const Problem& p, int count, const EigenOptions& opt = {});
double smallestEigenvalue(const Problem& p, const EigenOptions& opt = {});

// psi(., l_n) = beta_n phi(., l_n); NotAnEigenvalueError when the two are not proportional
double beta(const Problem& p, double lambdaN, double tol = 1e-10);
constexpr double kBetaResidual = 1e-6;

double normingConstant(const Problem& p, double lambdaN, double betaN, double tol = 1e-10);

// with verify = true every entry is checked against chi'(l_n) = beta_n gamma_n (relative 1e-5)
SpectralData spectralData(const Problem& p, int count, bool verify = false, const EigenOptions& opt = {});
constexpr double kChiPrimeTol = 1e-5;

}  // namespace hnspec

#pragma once
#include <vector>

#include "hnspec/darboux.hpp"
#include "hnspec/problem.hpp"

namespace hnspec {

// number of sign changes of phi(., l) strictly inside (0, pi)
int countZeros(const Problem& p, double lambda, double tol = 1e-10);

// 1/2 int q + omega_1 + Omega_1
double sigmaOf(const Problem& p);

struct AsymptoticModel {
    double a = 0.0;  // (ind f + ind F)/2
    double b = 0.0;  // sigma/pi
    double sigma = 0.0;
    double gammaScale = 1.5707963267948966;  // pi/2
    int gammaExponent = 0;                   // 2 ind f
};

AsymptoticModel modelFor(const Problem& p);

// closed-form value of the first regularized trace
double traceRhs(const Problem& p);

struct TraceEstimate {
    double value = 0.0;     // mean of the last 25% of partial sums
    double errorBar = 0.0;  // half-spread of those partial sums
    int terms = 0;
    bool converged = false;  // errorBar <= tolerance
};

TraceEstimate traceFromEigenvalues(const std::vector<double>& lams, double a, double b, double tolerance = 1e-2);
TraceEstimate traceSeries(const Problem& p, int nTerms, double tolerance = 1e-2);

struct AsymptoticFit {
    double sigmaHat = 0.0;
    double sigmaError = 0.0;       // |sigmaHat - model.sigma|
    double maxScaledResidual = 0.0;  // max m^2 |sqrt(l_n) - m - sigma/(pi m)| over the window
    double gammaExponentHat = 0.0;
    int gammaExponentRounded = 0;
    double gammaScaleHat = 0.0;
    int first = 0, last = 0;  // fitted index window
};

// weighted least squares over n in [first, last]; needs at least 30 entries overall
AsymptoticFit asymptoticCheck(const SpectralData& data, const AsymptoticModel& model, int first = 20, int last = -1);

struct DescentStep {
    int M = 0, N = 0;  // indices before the step
    double mu = 0.0, nu = 0.0;
    double Lambda = 0.0;
    int I = 1, J = 1;
};

struct DescentResult {
    SpectralData base;
    std::vector<DescentStep> steps;
};

// AsymptoticsError unless the data is increasing with positive gammas of the expected shape
void checkDataShape(const SpectralData& data);
DescentResult descendSpectralData(const SpectralData& data);
// (mu_k, nu_k) in descent order, ready for chainUp
std::vector<std::pair<double, double>> replayPairs(const DescentResult& d);

// gamma_n = (-1)^n chi'(l_n) with chi from the product over the spectrum of a symmetric problem;
// missing eigenvalues up to nFactors are synthesized from the two-term asymptotics.
std::vector<double> symmetricGammas(const std::vector<double>& lams, int M, int nFactors = 2000, int count = -1);

}  // namespace hnspec

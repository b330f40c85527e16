#pragma once
#include <memory>
#include <vector>

#include "hnspec/problem.hpp"
#include "hnspec/spectrum.hpp"

namespace hnspec {

// Everything needed to replay one downward step.
struct TransformRecord {
    double Lambda = 0.0;
    int I = 1;  // +1 iff ind f >= 0
    int J = 1;  // 1 iff ind f >= 0 and ind F >= 0
    double tau0 = 0.0;   // -v'(0)/v(0)
    double tauPi = 0.0;  // v'(pi)/v(pi)
    double lambda0 = 0.0;  // smallest eigenvalue of the parent
    double gamma0 = 0.0;   // its norming constant
    std::shared_ptr<const DarbouxLayer> layer;
};

struct DownResult {
    Problem problem;
    TransformRecord record;
};

// q - 2(v'/v)', Theta(Lambda, -v'(0)/v(0), f), Theta(Lambda, v'(pi)/v(pi), F)
DownResult transformDown(const Problem& p, const EigenOptions& opt = {});

enum class UpBranch { Below, LeftConstant, RightConstant };

struct UpResult {
    Problem problem;
    UpBranch branch = UpBranch::Below;
    double Lambda = 0.0;
    double tau = 0.0;    // u'(0) for the Below branch (u(0) = 1)
    double kappa = 0.0;  // Below branch only
    std::shared_ptr<const DarbouxLayer> layer;
};

// Inverse step: the result has (mu, nu) prepended to its spectral data (up to the usual rescaling).
UpResult transformUp(double mu, double nu, const Problem& p, const EigenOptions& opt = {});
constexpr double kUpMuTol = 1e-7;   // relative tolerance for mu = smallest eigenvalue
constexpr double kUpNuTol = 1e-5;   // relative tolerance for the nu conditions

// (C'F_down - C F_up) / (S'F_down - S F_up) at x = pi for the solutions C, S of q at lambda
double kappa(const Problem& p, double lambda, double tol = 1e-10);

// Norming constant of the smallest eigenvalue l0 of a problem with the given parent f,
// computed only from its image p_hat under the downward step.
double gamma0Expression(const Problem& pHat, double lambda0, const BoundaryFunction& f, double tol = 1e-10);

// gamma(t) = g_down(mu)^2 (g(mu)+t)(g(mu)-kappa)/(kappa+t), g the child's left function
double gammaOfTau(const BoundaryFunction& g, double mu, double kappaValue, double t);

struct ChainLevel {
    Problem problem;
    TransformRecord record;  // the step that produced this level (unused for level 0)
};

// true unless the indices already reached (-1,-1), (0,-1) or (-1,0)
bool canDescend(int M, int N);

// p, T(p), T(T(p)), ... at most k steps, stopping early at a terminal index pair
std::vector<ChainLevel> chainDown(const Problem& p, int k, const EigenOptions& opt = {});

// Replays upward steps; musNus[i] is applied in reverse order of a downward chain.
Problem chainUp(const Problem& base, const std::vector<std::pair<double, double>>& musNus,
                const EigenOptions& opt = {});

// Spectral data of the image predicted from the parent's data: drop the first pair when J = 1,
// rescale gamma_n by (l_n - Lambda)^-I and update the indices.
SpectralData mapSpectralData(const SpectralData& d, double Lambda, int I, int J);

// max relative deviation between child data and mapSpectralData(parent) over the common entries
double isospectralMismatch(const SpectralData& parent, const SpectralData& child, const TransformRecord& r);

}  // namespace hnspec

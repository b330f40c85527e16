#include "hnspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "hnspec/errors.hpp"

namespace hnspec {

using std::numbers::pi;

double CharValue::value() const { return std::ldexp(mantissa, exponent); }

namespace {

struct Scaled {
    double a, b;
    int e;
};

// (a, b) / 2^e with max(|a|, |b|) in [0.5, 1)
Scaled normalize(double a, double b)
{
    int e = 0;
    std::frexp(std::max(std::abs(a), std::abs(b)), &e);
    return {std::ldexp(a, -e), std::ldexp(b, -e), e};
}

IvpSolution phiNormalized(const Problem& p, double lambda, int& expo, double tol)
{
    Scaled s = normalize(p.f.down()(lambda), -p.f.up()(lambda));
    expo = s.e;
    IvpOptions opt;
    opt.tol = tol;
    return integrate(*p.q, lambda, s.a, s.b, Direction::Forward, opt);
}

double thetaF(const BoundaryFunction& F, double lambda)
{
    double t = std::atan2(F.down()(lambda), F.up()(lambda));
    if (t < 0.0) t += pi;
    if (t <= 0.0 || t >= pi) t = pi;
    return t - pi * F.poleCountUpTo(lambda);
}

double mismatch(const Problem& p, const IvpSolution& sol, double lambda)
{
    return sol.angleEnd + pi * p.f.poleCountUpTo(lambda) - thetaF(p.F, lambda);
}

}  // namespace

CharValue charFnScaled(const Problem& p, double lambda, double tol)
{
    int e0 = 0;
    IvpSolution sol = phiNormalized(p, lambda, e0, tol);
    Scaled fs = normalize(p.F.up()(lambda), p.F.down()(lambda));
    double c = fs.a * sol.yAtPi() - fs.b * sol.dyAtPi();
    CharValue cv;
    int ec = 0;
    cv.mantissa = std::frexp(c, &ec);
    cv.exponent = (c == 0.0) ? 0 : ec + e0 + fs.e;
    return cv;
}

double charFn(const Problem& p, double lambda, double tol) { return charFnScaled(p, lambda, tol).value(); }

double charFnPsi(const Problem& p, double lambda, double tol)
{
    Scaled s = normalize(p.F.down()(lambda), p.F.up()(lambda));
    IvpOptions opt;
    opt.tol = tol;
    IvpSolution sol = integrate(*p.q, lambda, s.a, s.b, Direction::Backward, opt);
    double c = p.f.down()(lambda) * sol.dyAt0() + p.f.up()(lambda) * sol.yAt0();
    return std::ldexp(c, s.e);
}

double charFnDerivative(const Problem& p, double lambda, double tol)
{
    double h = 1e-4 * std::max(1.0, 2.0 * std::sqrt(std::abs(lambda)));
    return (charFn(p, lambda + h, tol) - charFn(p, lambda - h, tol)) / (2.0 * h);
}

double pruferMismatch(const Problem& p, double lambda, double tol)
{
    int e = 0;
    IvpSolution sol = phiNormalized(p, lambda, e, tol);
    return mismatch(p, sol, lambda);
}

int eigenCount(const Problem& p, double lambda, double tol)
{
    double g = pruferMismatch(p, lambda, tol);
    if (g <= 0.0) return 0;
    return static_cast<int>(std::ceil(g / pi));
}

std::vector<double> eigenvalues(const Problem& p, int count, const EigenOptions& opt)
{
    if (count < 1) throw ValidationError("eigenvalues: count must be positive");
    if (!p.q) throw ValidationError("eigenvalues: missing potential");
    auto g = [&](double l) { return pruferMismatch(p, l, opt.tol); };

    // left end: g < 0 below the smallest eigenvalue
    double lo = std::min({0.0, p.q->minEstimate(), p.f.smallestPole(), p.F.smallestPole()}) - 1.0;
    double glo = g(lo);
    while (glo >= 0.0) {
        lo -= 2.0 * std::max(1.0, std::abs(lo));
        if (lo < -1e5) throw BracketError("eigenvalues: no lower bound for the spectrum above -1e5");
        glo = g(lo);
    }

    std::vector<double> lams;
    lams.reserve(static_cast<size_t>(count));
    const double a = 0.5 * (p.f.index() + p.F.index());
    for (int n = 0; n < count; ++n) {
        const double target = n * pi;
        double step;
        if (n >= 2) step = lams[n - 1] - lams[n - 2] + 2.0;
        else if (n == 1) step = std::max(1.0, 2.0 * (1.0 - a) + 1.0);
        else step = std::max(1.0, (0.0 - a) * (0.0 - a) - lo);
        double hi = lo + std::max(step, 1e-3 * (1.0 + std::abs(lo)));
        double ghi = g(hi);
        int expand = 0;
        while (ghi <= target) {
            lo = hi;
            glo = ghi;
            step *= 2.0;
            hi = lo + step;
            ghi = g(hi);
            if (++expand > 60) throw BracketError("eigenvalues: cannot bracket eigenvalue " + std::to_string(n));
        }
        if (ghi == target) {
            lams.push_back(hi);
            lo = hi;
            continue;
        }
        const double rel = opt.lambdaTol;
        auto tolFn = [rel](double x, double y) { return std::abs(x - y) <= rel * (1.0 + std::abs(x)); };
        boost::uintmax_t it = 200;
        auto r = boost::math::tools::toms748_solve([&](double l) { return g(l) - target; }, lo, hi,
                                                   glo - target, ghi - target, tolFn, it);
        if (it >= 200 || !tolFn(r.first, r.second))
            throw BracketError("eigenvalues: root refinement did not converge for n = " + std::to_string(n));
        double lam = 0.5 * (r.first + r.second);
        if (!lams.empty() && !(lam > lams.back()))
            throw BracketError("eigenvalues: lost strict ordering at n = " + std::to_string(n));
        lams.push_back(lam);
        lo = lam;
        glo = target;
    }
    return lams;
}

double smallestEigenvalue(const Problem& p, const EigenOptions& opt) { return eigenvalues(p, 1, opt).front(); }

double beta(const Problem& p, double lambdaN, double tol)
{
    IvpOptions opt;
    opt.tol = tol;
    const int k = 33;
    for (int i = 0; i < k; ++i) opt.outputs.push_back(pi / 3.0 + (pi / 3.0) * i / (k - 1));
    IvpSolution a = phi(p, lambdaN, opt);
    IvpSolution b = psi(p, lambdaN, opt);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    std::vector<double> ya, yb;
    for (double x : opt.outputs) {
        double u = a.valueAt(x), v = b.valueAt(x);
        ya.push_back(u);
        yb.push_back(v);
        sab += u * v;
        saa += u * u;
        sbb += v * v;
    }
    if (!(saa > 0.0) || !(sbb > 0.0)) throw NotAnEigenvalueError("beta: solution vanishes on the sampling window");
    double bt = sab / saa;
    double res = 0.0;
    for (size_t i = 0; i < ya.size(); ++i) res += (yb[i] - bt * ya[i]) * (yb[i] - bt * ya[i]);
    res = std::sqrt(res / sbb);
    if (!(res <= kBetaResidual))
        throw NotAnEigenvalueError("beta: psi/phi not proportional at lambda = " + std::to_string(lambdaN) +
                                   " (residual " + std::to_string(res) + ")");
    return bt;
}

double normingConstant(const Problem& p, double lambdaN, double betaN, double tol)
{
    IvpOptions opt;
    opt.tol = tol;
    IvpSolution a = phi(p, lambdaN, opt);
    double g = a.y2Integral + p.f.slopeDownSquared(lambdaN) + p.F.slopeDownSquared(lambdaN) / (betaN * betaN);
    if (!(g > 0.0)) throw NumericalError("norming constant is not positive at lambda = " + std::to_string(lambdaN));
    return g;
}

SpectralData spectralData(const Problem& p, int count, bool verify, const EigenOptions& opt)
{
    SpectralData d;
    d.M = p.f.index();
    d.N = p.F.index();
    for (double l : eigenvalues(p, count, opt)) {
        double b = beta(p, l, opt.tol);
        double gm = normingConstant(p, l, b, opt.tol);
        if (verify) {
            double cp = charFnDerivative(p, l, opt.tol);
            if (!(std::abs(cp - b * gm) <= kChiPrimeTol * std::abs(b * gm)))
                throw NumericalError("chi'(lambda) = beta*gamma check failed at lambda = " + std::to_string(l));
        }
        d.entries.emplace_back(l, gm);
    }
    return d;
}

}  // namespace hnspec

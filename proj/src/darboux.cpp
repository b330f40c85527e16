#include "hnspec/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "hnspec/errors.hpp"

namespace hnspec {

using std::numbers::pi;

namespace {

// values of w at the uniform nodes (the solution grid may hold extra breakpoints)
std::vector<double> atNodes(const IvpSolution& sol, const std::vector<double>& w, const std::vector<double>& nodes)
{
    std::vector<double> out(nodes.size());
    size_t j = 0;
    for (size_t i = 0; i < nodes.size(); ++i) {
        while (j + 1 < sol.grid.size() && sol.grid[j] < nodes[i] - 1e-12) ++j;
        if (std::abs(sol.grid[j] - nodes[i]) > 1e-12)
            throw GridError("darboux: node missing from the solution grid");
        out[i] = w[j];
    }
    return out;
}

std::vector<double> wOf(const IvpSolution& v, const std::vector<double>& nodes)
{
    return atNodes(v, logDerivative(v), nodes);
}

// At an eigenvalue phi and psi are proportional, but each one picks up the growing mode
// when integrated past the peak of the eigenfunction. Take w from phi left of the peak
// and from psi right of it.
std::vector<double> stitchedW(const Problem& p, double Lambda, const IvpOptions& io)
{
    IvpSolution a = phi(p, Lambda, io);
    IvpSolution b = psi(p, Lambda, io);
    std::vector<double> wa = wOf(a, io.outputs);
    std::vector<double> wb = wOf(b, io.outputs);
    std::vector<double> ya = atNodes(a, a.y, io.outputs);
    size_t peak = 0;
    for (size_t i = 0; i < ya.size(); ++i)
        if (std::abs(ya[i]) > std::abs(ya[peak])) peak = i;
    for (size_t i = peak + 1; i < wa.size(); ++i) wa[i] = wb[i];
    return wa;
}

constexpr double kLayerTol = 1e-8;
constexpr int kMaxLayerIntervals = 1 << 20;

// Samples w on twice the default grid and checks the interpolant of the even nodes at the
// odd ones; the grid doubles until the induced error in 2w^2 is below kLayerTol (1 + max w^2).
// Steep boundary conditions produce boundary layers of width about 1/|w(0)|.
std::shared_ptr<const DarbouxLayer> refinedLayer(const PotentialPtr& q, double Lambda, double tol,
                                                 const std::function<std::vector<double>(const IvpOptions&)>& sample)
{
    for (int n = DarbouxLayer::gridSizeFor(Lambda, q); n <= kMaxLayerIntervals; n *= 2) {
        IvpOptions io;
        io.tol = tol;
        io.outputs = uniformGrid(2 * n);
        std::vector<double> fine = sample(io);
        std::vector<double> coarse;
        for (size_t i = 0; i < fine.size(); i += 2) coarse.push_back(fine[i]);
        DarbouxLayer trial(q, Lambda, coarse);
        double err = 0.0, wmax = 0.0;
        for (size_t i = 0; i < fine.size(); ++i) {
            wmax = std::max(wmax, std::abs(fine[i]));
            if (i % 2 == 1)
                err = std::max(err, std::abs(trial.logDerivative(io.outputs[i]) - fine[i]) * (1.0 + 4.0 * std::abs(fine[i])));
        }
        if (err <= kLayerTol * (1.0 + wmax * wmax)) return std::make_shared<DarbouxLayer>(q, Lambda, std::move(fine));
    }
    throw GridError("darboux: log-derivative not resolved on the finest layer grid");
}

}  // namespace

DownResult transformDown(const Problem& p, const EigenOptions& opt)
{
    const BoundaryFunction& f = p.f;
    const BoundaryFunction& F = p.F;
    if (f.isDirichlet() && F.isDirichlet()) throw DomainError("transform down: both boundary conditions are Dirichlet");
    if (f.index() + F.index() < -1) throw DomainError("transform down: index sum below -1");

    TransformRecord r;
    r.lambda0 = smallestEigenvalue(p, opt);
    double b0 = beta(p, r.lambda0, opt.tol);
    r.gamma0 = normingConstant(p, r.lambda0, b0, opt.tol);
    const bool finF = !f.isDirichlet(), finFF = !F.isDirichlet();
    r.Lambda = (finF && finFF) ? r.lambda0 : r.lambda0 - 2.0;
    r.I = (f.index() >= 0) ? 1 : -1;
    r.J = (f.index() >= 0 && F.index() >= 0) ? 1 : 0;

    r.layer = refinedLayer(p.q, r.Lambda, opt.tol, [&](const IvpOptions& io) {
        if (finF && finFF) return stitchedW(p, r.Lambda, io);
        return wOf(finF ? phi(p, r.Lambda, io) : psi(p, r.Lambda, io), io.outputs);
    });
    r.tau0 = -r.layer->w().front();
    r.tauPi = r.layer->w().back();

    DownResult out;
    out.record = r;
    out.problem.q = r.layer;
    out.problem.f = theta(r.Lambda, r.tau0, f, ThetaBranch::Equal);
    out.problem.F = theta(r.Lambda, r.tauPi, F, ThetaBranch::Equal);
    return out;
}

double kappa(const Problem& p, double lambda, double tol)
{
    IvpOptions io;
    io.tol = tol;
    IvpSolution C = integrate(*p.q, lambda, 1.0, 0.0, Direction::Forward, io);
    IvpSolution S = integrate(*p.q, lambda, 0.0, 1.0, Direction::Forward, io);
    double Fu = p.F.up()(lambda), Fd = p.F.down()(lambda);
    double num = C.dyAtPi() * Fd - C.yAtPi() * Fu;
    double den = S.dyAtPi() * Fd - S.yAtPi() * Fu;
    if (den == 0.0) throw NumericalError("kappa: lambda is an eigenvalue of the Dirichlet-left problem");
    return num / den;
}

double gammaOfTau(const BoundaryFunction& g, double mu, double kappaValue, double t)
{
    double gd = g.down()(mu);
    double gm = g(mu);
    return gd * gd * (gm + t) * (gm - kappaValue) / (kappaValue + t);
}

double gamma0Expression(const Problem& pHat, double lambda0, const BoundaryFunction& f, double tol)
{
    if (f.isDirichlet()) throw DomainError("gamma0 expression: parent f must be finite");
    double k = kappa(pHat, lambda0, tol);
    double fl = f(lambda0);
    if (pHat.f.isDirichlet()) return 1.0 / (k + fl);
    return gammaOfTau(pHat.f, lambda0, k, fl);
}

UpResult transformUp(double mu, double nu, const Problem& p, const EigenOptions& opt)
{
    if (!std::isfinite(mu) || !std::isfinite(nu) || !(nu > 0.0)) throw DomainError("transform up: need finite mu and nu > 0");
    double l0 = smallestEigenvalue(p, opt);
    UpResult out;

    bool atBottom = std::abs(mu - l0) <= kUpMuTol * (1.0 + std::abs(l0));
    if (atBottom) {
        double g0 = normingConstant(p, l0, beta(p, l0, opt.tol), opt.tol);
        if (p.f.isConstant() && std::abs(nu - 0.5 * g0) <= kUpNuTol * g0) out.branch = UpBranch::LeftConstant;
        else if (p.F.isConstant() && std::abs(nu - 2.0 * g0) <= kUpNuTol * g0) out.branch = UpBranch::RightConstant;
        else if (!(mu < l0)) throw DomainError("transform up: (mu, nu) outside the admissible set");
        else out.branch = UpBranch::Below;
    } else if (mu < l0) {
        out.branch = UpBranch::Below;
    } else {
        throw DomainError("transform up: mu above the smallest eigenvalue");
    }

    if (out.branch == UpBranch::Below) {
        out.Lambda = mu;
        out.kappa = kappa(p, mu, opt.tol);
        if (p.f.isDirichlet()) {
            out.tau = 1.0 / nu - out.kappa;
        } else {
            const double gm = p.f(mu);
            const double k = out.kappa;
            if (!(k > gm)) throw BisectionError("transform up: empty interval for tau");
            double eps = 1e-12 * (1.0 + std::abs(k) + std::abs(gm));
            double a = -k + eps, b = -gm - eps;
            auto h = [&](double t) { return std::log(gammaOfTau(p.f, mu, k, t)) - std::log(nu); };
            double ha = h(a), hb = h(b);
            for (int i = 0; i < 60 && !(ha > 0.0); ++i) {
                eps *= 0.5;
                a = -k + eps;
                ha = h(a);
            }
            for (int i = 0; i < 60 && !(hb < 0.0); ++i) {
                b = 0.5 * (b + -gm);
                hb = h(b);
            }
            if (!(ha > 0.0) || !(hb < 0.0)) throw BisectionError("transform up: gamma(t) = nu not bracketed");
            auto tolFn = [](double x, double y) { return std::abs(x - y) <= 1e-15 * (1.0 + std::abs(x)); };
            boost::uintmax_t it = 300;
            auto rr = boost::math::tools::toms748_solve(h, a, b, ha, hb, tolFn, it);
            out.tau = 0.5 * (rr.first + rr.second);
        }
        out.layer = refinedLayer(p.q, out.Lambda, opt.tol, [&](const IvpOptions& io) {
            return wOf(integrate(*p.q, out.Lambda, 1.0, out.tau, Direction::Forward, io), io.outputs);
        });
    } else {
        out.Lambda = mu - 2.0;
        out.layer = refinedLayer(p.q, out.Lambda, opt.tol, [&](const IvpOptions& io) {
            return wOf(out.branch == UpBranch::LeftConstant ? phi(p, out.Lambda, io) : psi(p, out.Lambda, io),
                       io.outputs);
        });
    }

    double t0 = -out.layer->w().front();
    double tp = out.layer->w().back();
    ThetaBranch bf = (out.branch == UpBranch::LeftConstant) ? ThetaBranch::Equal : ThetaBranch::Rise;
    ThetaBranch bF = (out.branch == UpBranch::RightConstant) ? ThetaBranch::Equal : ThetaBranch::Rise;
    out.problem.q = out.layer;
    out.problem.f = theta(out.Lambda, t0, p.f, bf);
    out.problem.F = theta(out.Lambda, tp, p.F, bF);
    return out;
}

bool canDescend(int M, int N) { return (M >= 0 && N >= 0) || std::max(M, N) > 0; }

std::vector<ChainLevel> chainDown(const Problem& p, int k, const EigenOptions& opt)
{
    std::vector<ChainLevel> chain;
    chain.push_back({p, {}});
    for (int i = 0; i < k; ++i) {
        const Problem& cur = chain.back().problem;
        if (!canDescend(cur.f.index(), cur.F.index())) break;
        DownResult d = transformDown(cur, opt);
        chain.push_back({d.problem, d.record});
    }
    return chain;
}

Problem chainUp(const Problem& base, const std::vector<std::pair<double, double>>& musNus, const EigenOptions& opt)
{
    Problem cur = base;
    for (auto it = musNus.rbegin(); it != musNus.rend(); ++it) cur = transformUp(it->first, it->second, cur, opt).problem;
    return cur;
}

SpectralData mapSpectralData(const SpectralData& d, double Lambda, int I, int J)
{
    SpectralData out;
    out.M = d.M - I;
    out.N = d.N - (2 * J - I);
    for (size_t n = static_cast<size_t>(J); n < d.size(); ++n) {
        double l = d.lambda(n);
        out.entries.emplace_back(l, d.gamma(n) * std::pow(l - Lambda, -I));
    }
    return out;
}

double isospectralMismatch(const SpectralData& parent, const SpectralData& child, const TransformRecord& r)
{
    SpectralData e = mapSpectralData(parent, r.Lambda, r.I, r.J);
    if (e.M != child.M || e.N != child.N) return kInf;
    size_t n = std::min(e.size(), child.size());
    double m = 0.0;
    for (size_t i = 0; i < n; ++i) {
        m = std::max(m, std::abs(e.lambda(i) - child.lambda(i)) / (1.0 + std::abs(e.lambda(i))));
        m = std::max(m, std::abs(e.gamma(i) - child.gamma(i)) / std::abs(e.gamma(i)));
    }
    return m;
}

}  // namespace hnspec

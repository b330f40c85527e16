#include "hnspec/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hnspec/errors.hpp"

namespace hnspec {

BoundaryFunction BoundaryFunction::dirichlet()
{
    BoundaryFunction f;
    f.dirichlet_ = true;
    return f;
}

BoundaryFunction BoundaryFunction::constant(double h) { return make(0.0, h, {}, {}); }

BoundaryFunction BoundaryFunction::affine(double h0, double h) { return make(h0, h, {}, {}); }

BoundaryFunction BoundaryFunction::make(double h0, double h, std::vector<double> poles, std::vector<double> residues)
{
    if (!std::isfinite(h0) || !std::isfinite(h)) throw ValidationError("boundary function: non-finite coefficient");
    if (h0 < 0.0) throw ValidationError("boundary function: h0 must be nonnegative");
    if (poles.size() != residues.size()) throw ValidationError("boundary function: poles/residues size mismatch");
    for (size_t k = 0; k < poles.size(); ++k) {
        if (!std::isfinite(poles[k]) || !std::isfinite(residues[k]))
            throw ValidationError("boundary function: non-finite pole or residue");
        if (!(residues[k] > 0.0)) throw ValidationError("boundary function: residues must be positive");
        if (k > 0 && !(poles[k] > poles[k - 1]))
            throw ValidationError("boundary function: poles must be strictly increasing");
    }
    BoundaryFunction f;
    f.h0_ = h0;
    f.h_ = h;
    f.poles_ = std::move(poles);
    f.residues_ = std::move(residues);
    return f;
}

double BoundaryFunction::operator()(double l) const
{
    if (dirichlet_) return kInf;
    double s = h0_ * l + h_;
    for (size_t k = 0; k < poles_.size(); ++k) {
        if (l == poles_[k]) return kInf;
        s += residues_[k] / (poles_[k] - l);
    }
    return s;
}

double BoundaryFunction::derivative(double l) const
{
    if (dirichlet_) return kInf;
    double s = h0_;
    for (size_t k = 0; k < poles_.size(); ++k) {
        if (l == poles_[k]) return kInf;
        double t = poles_[k] - l;
        s += residues_[k] / (t * t);
    }
    return s;
}

int BoundaryFunction::index() const
{
    if (dirichlet_) return -1;
    return 2 * poleCount() + (h0_ > 0.0 ? 1 : 0);
}

RealPolynomial BoundaryFunction::down() const
{
    if (dirichlet_) return RealPolynomial();
    double c = h0_ > 0.0 ? 1.0 / h0_ : 1.0;
    return RealPolynomial::fromRootsReversed(poles_, c);
}

RealPolynomial BoundaryFunction::up() const
{
    if (dirichlet_) return RealPolynomial::constant(-1.0);
    // f * down = (h0 l + h) down + sum_k delta_k * prod_{j != k} (h_j - l) * h0'
    double c = h0_ > 0.0 ? 1.0 / h0_ : 1.0;
    RealPolynomial dn = down();
    RealPolynomial p = RealPolynomial({h0_, h_}) * dn;
    for (size_t k = 0; k < poles_.size(); ++k) {
        std::vector<double> others;
        for (size_t j = 0; j < poles_.size(); ++j)
            if (j != k) others.push_back(poles_[j]);
        p = p + RealPolynomial::fromRootsReversed(others, c * residues_[k]);
    }
    return p.truncatedToDegree(index() - dn.degree());
}

double BoundaryFunction::slopeDownSquared(double l) const
{
    if (dirichlet_) return 0.0;
    RealPolynomial u = up(), d = down();
    return u.derivative()(l) * d(l) - u(l) * d.derivative()(l);
}

RealPolynomial BoundaryFunction::omegaPoly() const
{
    int ind = index();
    // floor and ceil of ind/2 for ind >= -1
    int fl = (ind >= 0) ? ind / 2 : -1;
    int cl = (ind >= 0) ? (ind + 1) / 2 : 0;
    double sFl = (fl % 2 == 0) ? 1.0 : -1.0;
    double sCl = (cl % 2 == 0) ? 1.0 : -1.0;
    RealPolynomial lam({1.0, 0.0});
    RealPolynomial w = lam * down().composedWithSquare() * sFl - up().composedWithSquare() * sCl;
    return w.truncatedToDegree(ind + 1);
}

double BoundaryFunction::omega1() const
{
    if (dirichlet_) return 0.0;
    RealPolynomial w = omegaPoly();
    return w.coeff(w.degree() - 1);
}

double BoundaryFunction::omega2() const
{
    if (dirichlet_) return 0.0;
    RealPolynomial w = omegaPoly();
    return w.degree() < 2 ? 0.0 : w.coeff(w.degree() - 2);
}

double BoundaryFunction::smallestPole() const { return index() >= 2 ? poles_.front() : kInf; }

int BoundaryFunction::poleCountUpTo(double l) const
{
    if (dirichlet_) return 0;
    return static_cast<int>(std::upper_bound(poles_.begin(), poles_.end(), l) - poles_.begin());
}

std::string BoundaryFunction::str() const
{
    if (dirichlet_) return "dirichlet";
    std::ostringstream os;
    os.precision(12);
    os << "{h0=" << h0_ << ", h=" << h_ << ", poles=[";
    for (size_t k = 0; k < poles_.size(); ++k) os << (k ? "," : "") << poles_[k];
    os << "], residues=[";
    for (size_t k = 0; k < residues_.size(); ++k) os << (k ? "," : "") << residues_[k];
    os << "]}";
    return os.str();
}

/* ---------------- partial order ---------------- */

bool precedes(const BoundaryFunction& f, const BoundaryFunction& g)
{
    if (f.isDirichlet()) return true;
    if (g.isDirichlet()) return false;
    double m = std::min(f.smallestPole(), g.smallestPole());
    // both down polynomials are positive left of their smallest poles, so the sign of
    // g - f there is the sign of P = g_up f_down - f_up g_down
    RealPolynomial P = g.up() * f.down() - f.up() * g.down();
    if (P.isZero()) return true;
    double scale = 0.0;
    for (double c : P.coeffs()) scale = std::max(scale, std::abs(c));
    std::vector<double> roots;
    for (double r : P.realRoots(1e-7))
        if (r < m) roots.push_back(r);
    std::vector<double> probes;
    double left = roots.empty() ? (std::isfinite(m) ? m : 0.0) : roots.front();
    probes.push_back(left - 1.0 - std::abs(left));
    probes.push_back(-1e8);
    for (size_t i = 0; i + 1 < roots.size(); ++i) probes.push_back(0.5 * (roots[i] + roots[i + 1]));
    if (!roots.empty()) {
        double r = roots.back();
        probes.push_back(std::isfinite(m) ? 0.5 * (r + m) : r + 1.0 + std::abs(r));
    } else if (std::isfinite(m)) {
        probes.push_back(m - 1e-6 * (1.0 + std::abs(m)));
    }
    if (!std::isfinite(m)) probes.push_back(1e8);
    for (double x : probes) {
        if (!(x < m)) continue;
        double v = P(x);
        double mag = 0.0, xp = 1.0;
        for (int k = 0; k <= P.degree(); ++k, xp *= std::abs(x)) mag += std::abs(P.coeff(k)) * xp;
        if (v < -1e-12 * std::max(mag, scale)) return false;
    }
    return true;
}

/* ---------------- Theta ---------------- */

namespace {

// root of f(l) = tau on the open interval (a, b) where f increases from -inf (or below tau)
// to +inf (or above tau); a, b may be infinite
double solveLevel(const BoundaryFunction& f, double tau, double a, double b)
{
    if (!std::isfinite(a)) {
        double step = 1.0;
        double x = (std::isfinite(b) ? b : 0.0) - step;
        while (!(f(x) < tau)) {
            step *= 2.0;
            x = (std::isfinite(b) ? b : 0.0) - step;
            if (step > 1e300) throw BisectionError("theta: level set not bracketed on the left");
        }
        a = x;
    }
    if (!std::isfinite(b)) {
        double step = 1.0;
        double x = a + step;
        while (!(f(x) > tau)) {
            step *= 2.0;
            x = a + step;
            if (step > 1e300) throw BisectionError("theta: level set not bracketed on the right");
        }
        b = x;
    }
    double lo = a, hi = b;
    for (int it = 0; it < 2000; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double v = f(mid);
        if (v < tau) lo = mid;
        else if (v > tau) hi = mid;
        else return mid;
    }
    return 0.5 * (lo + hi);
}

ThetaBranch resolveBranch(double mu, double tau, const BoundaryFunction& f, ThetaBranch branch)
{
    double fm = f(mu);
    double tol = kThetaAutoTol * (1.0 + std::abs(fm));
    if (branch == ThetaBranch::Auto) {
        if (std::abs(tau - fm) <= tol) return ThetaBranch::Equal;
        if (tau > fm) return ThetaBranch::Rise;
        throw DomainError("theta: tau < f(mu)");
    }
    if (branch == ThetaBranch::Rise && !(tau > fm)) throw DomainError("theta: rising branch needs tau > f(mu)");
    if (branch == ThetaBranch::Equal && std::abs(tau - fm) > 1e-6 * (1.0 + std::abs(fm)))
        throw DomainError("theta: equal branch needs tau = f(mu)");
    return branch;
}

}  // namespace

BoundaryFunction theta(double mu, double tau, const BoundaryFunction& f, ThetaBranch branch)
{
    if (!std::isfinite(mu) || !std::isfinite(tau)) throw DomainError("theta: non-finite argument");
    if (f.isDirichlet()) return BoundaryFunction::constant(-tau);
    if (!(mu < f.smallestPole())) throw DomainError("theta: mu must lie below the smallest pole");
    ThetaBranch br = resolveBranch(mu, tau, f, branch);
    bool equal = (br == ThetaBranch::Equal);
    // the equal branch uses the exact value so that mu is an exact root
    if (equal) tau = f(mu);

    const auto& P = f.poles();
    const auto& R = f.residues();
    const size_t d = P.size();
    const double h0 = f.h0();

    if (equal && f.index() == 0) return BoundaryFunction::dirichlet();

    // new poles: solutions of f(l) = tau, except mu itself in the equal branch
    std::vector<double> newPoles;
    if (d == 0) {
        if (h0 > 0.0 && !equal) newPoles.push_back((tau - f.h()) / h0);
    } else {
        if (!equal) newPoles.push_back(solveLevel(f, tau, mu, P[0]));
        for (size_t k = 0; k + 1 < d; ++k) newPoles.push_back(solveLevel(f, tau, P[k], P[k + 1]));
        if (h0 > 0.0) newPoles.push_back(solveLevel(f, tau, P[d - 1], kInf));
    }
    std::vector<double> newRes;
    for (double p : newPoles) newRes.push_back((p - mu) / f.derivative(p));

    double nh0, nh;
    if (h0 > 0.0) {
        nh0 = 0.0;
        nh = -1.0 / h0 - tau;
    } else {
        double S = 0.0;
        for (double r : R) S += r;
        double g = f.h() - tau;
        nh0 = -1.0 / g;
        nh = mu / g - S / (g * g) - tau;
    }
    return BoundaryFunction::make(nh0, nh, std::move(newPoles), std::move(newRes));
}

void thetaUpDown(double mu, double tau, const BoundaryFunction& f, ThetaBranch branch, RealPolynomial& up,
                 RealPolynomial& down)
{
    if (f.isDirichlet()) {
        up = RealPolynomial::constant(-tau);
        down = RealPolynomial::constant(1.0);
        return;
    }
    ThetaBranch br = resolveBranch(mu, tau, f, branch);
    RealPolynomial fu = f.up(), fd = f.down();
    RealPolynomial lin({1.0, -mu - tau * tau});
    if (br == ThetaBranch::Equal) {
        tau = f(mu);
        RealPolynomial lin2({1.0, -mu - tau * tau});
        int target = f.index() - 1;
        RealPolynomial a = (fu * (-tau) - lin2 * fd).dividedByLinear(mu);
        RealPolynomial b = (fu - fd * tau).dividedByLinear(mu);
        // exact degrees: deg up + deg down = ind f - 1
        int dd = (f.h0() > 0.0) ? f.poleCount() : f.poleCount() - 1;
        down = b.truncatedToDegree(std::max(dd, 0));
        up = a.truncatedToDegree(target - std::max(dd, 0));
        if (target < 0) {
            up = RealPolynomial::constant(-1.0);
            down = RealPolynomial();
        }
    } else {
        up = fu * tau + lin * fd;
        down = fd * tau - fu;
        int dd = (f.h0() > 0.0) ? f.poleCount() + 1 : f.poleCount();
        int target = f.index() + 1;
        down = down.truncatedToDegree(dd);
        up = up.truncatedToDegree(target - dd);
    }
}

double fieldDistance(const BoundaryFunction& a, const BoundaryFunction& b)
{
    if (a.isDirichlet() || b.isDirichlet()) return (a.isDirichlet() && b.isDirichlet()) ? 0.0 : kInf;
    if (a.poleCount() != b.poleCount()) return kInf;
    if ((a.h0() > 0.0) != (b.h0() > 0.0)) return kInf;
    double m = std::max(std::abs(a.h0() - b.h0()), std::abs(a.h() - b.h()));
    for (int k = 0; k < a.poleCount(); ++k) {
        size_t i = static_cast<size_t>(k);
        m = std::max(m, std::abs(a.poles()[i] - b.poles()[i]));
        m = std::max(m, std::abs(a.residues()[i] - b.residues()[i]));
    }
    return m;
}

}  // namespace hnspec

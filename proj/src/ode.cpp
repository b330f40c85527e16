#include "hnspec/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "hnspec/errors.hpp"

namespace hnspec {

using std::numbers::pi;
namespace odeint = boost::numeric::odeint;

std::vector<double> uniformGrid(int n)
{
    std::vector<double> g(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) g[static_cast<size_t>(i)] = pi * i / n;
    g.back() = pi;
    return g;
}

namespace {

using State = std::array<double, 3>;

// angle in [0, pi) whose cotangent is b/a for the vector (a, b) = (y, y')
double reducedAngle(double a, double b)
{
    double t = std::atan2(a, b);
    if (t < 0.0) t += pi;
    if (t >= pi) t -= pi;
    return t;
}

std::vector<double> segmentBounds(const Potential& q, const std::vector<double>& outputs)
{
    std::vector<double> pts;
    const auto& br = q.breakpoints();
    pts.reserve(br.size() + outputs.size() + 2);
    pts.push_back(0.0);
    pts.push_back(pi);
    for (double x : br)
        if (x > 0.0 && x < pi) pts.push_back(x);
    for (double x : outputs)
        if (x > 0.0 && x < pi) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    out.reserve(pts.size());
    for (double x : pts)
        if (out.empty() || x - out.back() > 1e-13) out.push_back(x);
    out.back() = pi;
    return out;
}

}  // namespace

IvpSolution integrate(const Potential& q, double lambda, double y0, double dy0, Direction dir, const IvpOptions& opt)
{
    if (!std::isfinite(lambda) || !std::isfinite(y0) || !std::isfinite(dy0))
        throw ToleranceError("integrate: non-finite input");
    const double omega = std::sqrt(std::max(1.0, std::abs(lambda)));
    const double tolLoc = 0.02 * opt.tol;
    const double dtMax = 0.5 / std::sqrt(std::max(1.0, lambda - q.minEstimate()));

    auto sys = [&](const State& u, State& du, double x) {
        double qv = q(x);
        du[0] = omega * u[1];
        du[1] = (qv - lambda) * u[0] / omega;
        du[2] = u[0] * u[0];
    };

    std::vector<double> bounds = segmentBounds(q, opt.outputs);
    if (dir == Direction::Backward) std::reverse(bounds.begin(), bounds.end());

    IvpSolution sol;
    sol.lambda = lambda;
    sol.direction = dir;
    State u{y0, dy0 / omega, 0.0};
    double x = bounds.front();

    auto record = [&](double xx, const State& s) {
        sol.grid.push_back(xx);
        sol.y.push_back(s[0]);
        sol.yprime.push_back(s[1] * omega);
    };
    record(x, u);

    const double rs0 = reducedAngle(u[0], u[1]);
    double raw = std::atan2(u[0], u[1]);
    double lift = 0.0;

    odeint::runge_kutta_fehlberg78<State> stepper;
    const double sgn = (dir == Direction::Forward) ? 1.0 : -1.0;
    double dt = std::min(dtMax, 0.1);
    State out, err;
    long steps = 0;

    for (size_t s = 1; s < bounds.size(); ++s) {
        const double target = bounds[s];
        while (sgn * (target - x) > 0.0) {
            double remaining = std::abs(target - x);
            double h = std::min({dt, dtMax, remaining});
            bool last = (h >= remaining * (1.0 - 1e-12));
            if (last) h = remaining;
            stepper.do_step(sys, u, x, out, sgn * h, err);
            double scale = std::max({std::abs(u[0]), std::abs(u[1]), std::abs(out[0]), std::abs(out[1]), 1e-300});
            double e0 = std::max(std::abs(err[0]), std::abs(err[1])) / (tolLoc * scale);
            double e2 = std::abs(err[2]) / (tolLoc * (std::abs(out[2]) + scale * scale * h) + 1e-300);
            double e = std::max(e0, e2);
            if (!std::isfinite(e)) throw ToleranceError("integrate: solution overflow");
            if (e <= 1.0) {
                x = last ? target : x + sgn * h;
                u = out;
                double nraw = std::atan2(u[0], u[1]);
                double dlt = nraw - raw;
                while (dlt > pi) dlt -= 2 * pi;
                while (dlt <= -pi) dlt += 2 * pi;
                lift += dlt;
                raw = nraw;
                ++steps;
                if (opt.recordSteps && !last) record(x, u);
                double fac = (e > 0.0) ? 0.9 * std::pow(e, -1.0 / 8.0) : 4.0;
                // do not let a short final piece of a segment shrink the next step
                if (!last) dt = h * std::clamp(fac, 0.2, 4.0);
                else dt = std::max(dt, h * std::clamp(fac, 0.2, 4.0));
            } else {
                dt = h * std::clamp(0.9 * std::pow(e, -1.0 / 7.0), 0.1, 0.9);
                if (dt < 1e-13) throw ToleranceError("integrate: step size underflow");
            }
            if (steps > 20000000) throw ToleranceError("integrate: too many steps");
        }
        record(target, u);
    }

    sol.steps = static_cast<int>(steps);
    sol.y2Integral = std::abs(u[2]);
    const double rsEnd = reducedAngle(u[0], u[1]);
    const double thetaScaledEnd = rs0 + sgn * lift;
    const double k = std::round((thetaScaledEnd - rsEnd) / pi);
    sol.angleStart = reducedAngle(y0, dy0);
    sol.angleEnd = k * pi + reducedAngle(u[0], u[1] * omega);

    if (dir == Direction::Backward) {
        std::reverse(sol.grid.begin(), sol.grid.end());
        std::reverse(sol.y.begin(), sol.y.end());
        std::reverse(sol.yprime.begin(), sol.yprime.end());
    }
    return sol;
}

double IvpSolution::valueAt(double x) const
{
    if (grid.empty()) return 0.0;
    if (x <= grid.front()) return y.front();
    if (x >= grid.back()) return y.back();
    size_t j = static_cast<size_t>(std::upper_bound(grid.begin(), grid.end(), x) - grid.begin());
    size_t a = j - 1;
    double hx = grid[j] - grid[a];
    double t = (x - grid[a]) / hx;
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y[a] + (t3 - 2 * t2 + t) * hx * yprime[a] + (-2 * t3 + 3 * t2) * y[j] +
           (t3 - t2) * hx * yprime[j];
}

IvpSolution phi(const Problem& p, double lambda, const IvpOptions& opt)
{
    return integrate(*p.q, lambda, p.f.down()(lambda), -p.f.up()(lambda), Direction::Forward, opt);
}

IvpSolution psi(const Problem& p, double lambda, const IvpOptions& opt)
{
    return integrate(*p.q, lambda, p.F.down()(lambda), p.F.up()(lambda), Direction::Backward, opt);
}

std::vector<double> logDerivative(const IvpSolution& sol)
{
    double ymax = 0.0;
    for (double v : sol.y) ymax = std::max(ymax, std::abs(v));
    if (!(ymax > 0.0)) throw ZeroCrossingError("log derivative: solution vanishes identically");
    std::vector<double> w(sol.y.size());
    for (size_t i = 0; i < sol.y.size(); ++i) {
        if (std::abs(sol.y[i]) < kZeroCrossingThreshold * ymax)
            throw ZeroCrossingError("log derivative: |y| below threshold at x = " + std::to_string(sol.grid[i]));
        if (i > 0 && (sol.y[i] > 0) != (sol.y[0] > 0))
            throw ZeroCrossingError("log derivative: y changes sign near x = " + std::to_string(sol.grid[i]));
        w[i] = sol.yprime[i] / sol.y[i];
    }
    return w;
}

}  // namespace hnspec

#include "hnspec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hnspec/errors.hpp"

namespace hnspec {

using std::numbers::pi;

namespace {
const std::vector<double> kNoBreaks;

std::vector<double> mergeBreaks(std::vector<double> a, const std::vector<double>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    std::vector<double> out;
    for (double x : a) {
        if (x < 0.0 || x > pi) continue;
        if (out.empty() || x - out.back() > 1e-13) out.push_back(x);
    }
    return out;
}
}  // namespace

const std::vector<double>& Potential::breakpoints() const { return kNoBreaks; }

double Potential::integral() const
{
    std::vector<double> pts = mergeBreaks({0.0, pi}, breakpoints());
    double s = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        auto fn = [this](double x) { return (*this)(x); };
        s += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(fn, pts[i], pts[i + 1], 8, 1e-13);
    }
    return s;
}

double Potential::minEstimate() const
{
    double m = (*this)(0.0);
    const int n = 1024;
    for (int i = 1; i <= n; ++i) m = std::min(m, (*this)(pi * i / n));
    return m;
}

/* ---------------- closed-form built-ins ---------------- */

PotentialPtr ExprPotential::zero() { return PotentialPtr(new ExprPotential(Name::Zero, 0, 0, 0, 0)); }
PotentialPtr ExprPotential::constant(double c) { return PotentialPtr(new ExprPotential(Name::Constant, 0, 0, 0, c)); }
PotentialPtr ExprPotential::cosine(double a, double k, double p, double c)
{
    return PotentialPtr(new ExprPotential(Name::Cos, a, k, p, c));
}

double ExprPotential::operator()(double x) const
{
    switch (name_) {
        case Name::Zero: return 0.0;
        case Name::Constant: return c_;
        case Name::Cos: return a_ * std::cos(k_ * x + p_) + c_;
    }
    return 0.0;
}

double ExprPotential::integral() const
{
    switch (name_) {
        case Name::Zero: return 0.0;
        case Name::Constant: return c_ * pi;
        case Name::Cos:
            if (k_ == 0.0) return (a_ * std::cos(p_) + c_) * pi;
            return a_ * (std::sin(k_ * pi + p_) - std::sin(p_)) / k_ + c_ * pi;
    }
    return 0.0;
}

double ExprPotential::minEstimate() const
{
    if (name_ == Name::Cos) return c_ - std::abs(a_);
    return (*this)(0.0);
}

/* ---------------- sampled ---------------- */

SampledPotential::SampledPotential(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values))
{
    if (grid_.size() != values_.size() || grid_.size() < 2)
        throw ValidationError("sampled potential: need matching grid and values with at least two points");
    for (size_t i = 1; i < grid_.size(); ++i)
        if (!(grid_[i] > grid_[i - 1])) throw ValidationError("sampled potential: grid must be strictly increasing");
    for (double v : values_)
        if (!std::isfinite(v)) throw ValidationError("sampled potential: non-finite value");
    const double slack = 1e-12;
    if (grid_.front() > slack || grid_.back() < pi - slack)
        throw ValidationError("sampled potential: grid must cover [0, pi]");
}

double SampledPotential::operator()(double x) const
{
    if (x <= grid_.front()) return values_.front();
    if (x >= grid_.back()) return values_.back();
    size_t j = static_cast<size_t>(std::upper_bound(grid_.begin(), grid_.end(), x) - grid_.begin());
    double x0 = grid_[j - 1], x1 = grid_[j];
    double t = (x - x0) / (x1 - x0);
    return values_[j - 1] * (1.0 - t) + values_[j] * t;
}

double SampledPotential::integral() const
{
    // exact for the piecewise-linear interpolant restricted to [0, pi]
    std::vector<double> pts = mergeBreaks({0.0, pi}, grid_);
    double s = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        s += 0.5 * (pts[i + 1] - pts[i]) * ((*this)(pts[i]) + (*this)(pts[i + 1]));
    return s;
}

double SampledPotential::minEstimate() const { return *std::min_element(values_.begin(), values_.end()); }

/* ---------------- closure ---------------- */

ClosurePotential::ClosurePotential(std::function<double(double)> fn, std::vector<double> breaks)
    : fn_(std::move(fn)), breaks_(mergeBreaks({}, breaks))
{
}

/* ---------------- Darboux layer ---------------- */

DarbouxLayer::DarbouxLayer(PotentialPtr base, double lambda, std::vector<double> w)
    : base_(std::move(base)), lambda_(lambda), w_(std::move(w))
{
    if (w_.size() < 3) throw ValidationError("darboux layer: grid too small");
    const int n = intervals();
    dw_.resize(w_.size());
    std::vector<double> nodes(w_.size());
    for (int j = 0; j <= n; ++j) {
        double x = pi * j / n;
        nodes[static_cast<size_t>(j)] = x;
        double wj = w_[static_cast<size_t>(j)];
        if (!std::isfinite(wj)) throw ValidationError("darboux layer: non-finite log-derivative");
        dw_[static_cast<size_t>(j)] = (*base_)(x) - lambda_ - wj * wj;
    }
    breaks_ = mergeBreaks(nodes, base_->breakpoints());
    min_ = (*this)(0.0);
    for (int j = 0; j <= n; ++j) min_ = std::min(min_, (*this)(nodes[static_cast<size_t>(j)]));
    for (int j = 0; j < n; ++j) min_ = std::min(min_, (*this)(pi * (j + 0.5) / n));
}

double DarbouxLayer::logDerivative(double x) const
{
    const int n = intervals();
    const double hx = pi / n;
    double s = x / hx;
    int j = static_cast<int>(std::floor(s));
    j = std::clamp(j, 0, n - 1);
    double t = s - j;
    size_t a = static_cast<size_t>(j), b = a + 1;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * w_[a] + h10 * hx * dw_[a] + h01 * w_[b] + h11 * hx * dw_[b];
}

double DarbouxLayer::operator()(double x) const
{
    double w = logDerivative(x);
    return 2.0 * lambda_ + 2.0 * w * w - (*base_)(x);
}

double DarbouxLayer::integral() const { return base_->integral() - 2.0 * (w_.back() - w_.front()); }

int DarbouxLayer::gridSizeFor(double lambda, const PotentialPtr& base)
{
    // at least 8 points per wavelength 2*pi/sqrt|Lambda| across [0, pi]
    double need = 4.0 * std::sqrt(std::abs(lambda));
    int n = kMinIntervals;
    while (n < need) n *= 2;
    if (auto layer = std::dynamic_pointer_cast<const DarbouxLayer>(base)) n = std::max(n, layer->intervals());
    return n;
}

double potentialDistance(const Potential& a, const Potential& b, int samples)
{
    std::vector<double> pts;
    for (int i = 0; i <= samples; ++i) pts.push_back(pi * i / samples);
    pts = mergeBreaks(pts, a.breakpoints());
    pts = mergeBreaks(pts, b.breakpoints());
    double m = 0.0;
    for (double x : pts) m = std::max(m, std::abs(a(x) - b(x)));
    return m;
}

}  // namespace hnspec

#include "hnspec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <Eigen/Dense>

#include "hnspec/errors.hpp"
#include "hnspec/spectrum.hpp"

namespace hnspec {

using std::numbers::pi;

int countZeros(const Problem& p, double lambda, double tol)
{
    IvpOptions io;
    io.tol = tol;
    io.recordSteps = true;
    IvpSolution s = phi(p, lambda, io);
    double ymax = 0.0;
    for (double v : s.y) ymax = std::max(ymax, std::abs(v));
    if (!(ymax > 0.0)) throw GridError("count zeros: solution vanishes identically");
    const double thr = 1e-9 * ymax;

    int prev = 0, count = 0;
    auto visit = [&](double v) {
        if (std::abs(v) <= thr) return;
        int sg = v > 0.0 ? 1 : -1;
        if (prev != 0 && sg != prev) ++count;
        prev = sg;
    };
    // Hermite refinement inside every accepted step catches a pair of crossings within one step
    for (size_t i = 0; i + 1 < s.grid.size(); ++i) {
        visit(s.y[i]);
        double x0 = s.grid[i], x1 = s.grid[i + 1];
        for (int k = 1; k < 4; ++k) visit(s.valueAt(x0 + (x1 - x0) * k / 4.0));
    }
    visit(s.y.back());
    return count;
}

double sigmaOf(const Problem& p) { return 0.5 * p.q->integral() + p.f.omega1() + p.F.omega1(); }

AsymptoticModel modelFor(const Problem& p)
{
    AsymptoticModel m;
    m.a = 0.5 * (p.f.index() + p.F.index());
    m.sigma = sigmaOf(p);
    m.b = m.sigma / pi;
    m.gammaExponent = 2 * p.f.index();
    return m;
}

namespace {
double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }
}  // namespace

double traceRhs(const Problem& p)
{
    const double w1 = p.f.omega1(), w2 = p.f.omega2();
    const double W1 = p.F.omega1(), W2 = p.F.omega2();
    return parity(p.f.index()) * (*p.q)(0.0) / 4.0 + parity(p.F.index()) * (*p.q)(pi) / 4.0 - w1 * w1 / 2.0 -
           W1 * W1 / 2.0 - w2 - W2;
}

TraceEstimate traceFromEigenvalues(const std::vector<double>& lams, double a, double b, double tolerance)
{
    TraceEstimate t;
    t.terms = static_cast<int>(lams.size());
    if (lams.empty()) return t;
    std::vector<double> partial;
    double s = 0.0;
    for (size_t n = 0; n < lams.size(); ++n) {
        double dn = static_cast<double>(n);
        if (std::abs(dn - a) < 1e-12) s += lams[n] - b;
        else if (dn < a) s += lams[n];
        else s += lams[n] - (dn - a) * (dn - a) - 2.0 * b;
        partial.push_back(s);
    }
    size_t from = static_cast<size_t>(std::floor(0.75 * static_cast<double>(partial.size())));
    from = std::min(from, partial.size() - 1);
    double sum = 0.0, lo = partial[from], hi = partial[from];
    for (size_t k = from; k < partial.size(); ++k) {
        sum += partial[k];
        lo = std::min(lo, partial[k]);
        hi = std::max(hi, partial[k]);
    }
    t.value = sum / static_cast<double>(partial.size() - from);
    t.errorBar = 0.5 * (hi - lo);
    t.converged = t.errorBar <= tolerance;
    return t;
}

TraceEstimate traceSeries(const Problem& p, int nTerms, double tolerance)
{
    AsymptoticModel m = modelFor(p);
    return traceFromEigenvalues(eigenvalues(p, nTerms), m.a, m.b, tolerance);
}

AsymptoticFit asymptoticCheck(const SpectralData& data, const AsymptoticModel& model, int first, int last)
{
    if (data.size() < 30) throw AsymptoticsError("asymptotic check: need at least 30 entries");
    if (last < 0 || last >= static_cast<int>(data.size())) last = static_cast<int>(data.size()) - 1;
    if (first < 0 || last - first < 5) throw AsymptoticsError("asymptotic check: window too small");
    AsymptoticFit fit;
    fit.first = first;
    fit.last = last;
    const int rows = last - first + 1;
    Eigen::MatrixXd A(rows, 3), G(rows, 3);
    Eigen::VectorXd y(rows), lg(rows);
    for (int i = 0; i < rows; ++i) {
        int n = first + i;
        double m = n - model.a;
        double l = data.lambda(static_cast<size_t>(n));
        if (!(m > 0.0) || !(l > 0.0)) throw AsymptoticsError("asymptotic check: window reaches non-positive values");
        A(i, 0) = 1.0;
        A(i, 1) = 1.0 / m;
        A(i, 2) = 1.0 / (m * m);
        y(i) = m * (std::sqrt(l) - m) * pi;
        G(i, 0) = 1.0;
        G(i, 1) = std::log(m);
        G(i, 2) = 1.0 / m;
        lg(i) = std::log(data.gamma(static_cast<size_t>(n)));
        double r = std::sqrt(l) - m - model.sigma / (pi * m);
        fit.maxScaledResidual = std::max(fit.maxScaledResidual, m * m * std::abs(r));
    }
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    fit.sigmaHat = c(0);
    fit.sigmaError = std::abs(fit.sigmaHat - model.sigma);
    Eigen::VectorXd g = G.colPivHouseholderQr().solve(lg);
    fit.gammaExponentHat = g(1);
    fit.gammaExponentRounded = static_cast<int>(std::lround(g(1)));
    fit.gammaScaleHat = std::exp(g(0));
    return fit;
}

void checkDataShape(const SpectralData& data)
{
    if (data.M < -1 || data.N < -1) throw AsymptoticsError("spectral data: indices below -1");
    for (size_t n = 0; n < data.size(); ++n) {
        if (!(data.gamma(n) > 0.0)) throw AsymptoticsError("spectral data: non-positive norming constant");
        if (n > 0 && !(data.lambda(n) > data.lambda(n - 1))) throw AsymptoticsError("spectral data: not increasing");
    }
    if (data.size() >= 30) {
        size_t n = data.size() - 1;
        double m = static_cast<double>(n) - 0.5 * (data.M + data.N);
        double l = data.lambda(n);
        if (!(l > 0.0) || std::abs(std::sqrt(l) - m) > 0.5)
            throw AsymptoticsError("spectral data: eigenvalues do not follow (n - (M+N)/2)^2");
        double ratio = data.gamma(n) / (0.5 * pi * std::pow(m, 2 * data.M));
        if (ratio < 0.5 || ratio > 2.0)
            throw AsymptoticsError("spectral data: norming constants do not follow (pi/2) m^(2M)");
    }
}

DescentResult descendSpectralData(const SpectralData& data)
{
    checkDataShape(data);
    DescentResult r;
    SpectralData cur = data;
    for (int guard = 0; canDescend(cur.M, cur.N); ++guard) {
        if (guard > 64) throw AsymptoticsError("descent: too many steps");
        if (cur.size() == 0) throw AsymptoticsError("descent: ran out of entries");
        DescentStep s;
        s.M = cur.M;
        s.N = cur.N;
        s.mu = cur.lambda(0);
        s.nu = cur.gamma(0);
        s.I = (cur.M >= 0) ? 1 : -1;
        s.J = (cur.M >= 0 && cur.N >= 0) ? 1 : 0;
        s.Lambda = s.J ? s.mu : s.mu - 2.0;
        cur = mapSpectralData(cur, s.Lambda, s.I, s.J);
        r.steps.push_back(s);
    }
    r.base = cur;
    return r;
}

std::vector<std::pair<double, double>> replayPairs(const DescentResult& d)
{
    std::vector<std::pair<double, double>> out;
    for (const auto& s : d.steps) out.emplace_back(s.mu, s.nu);
    return out;
}

std::vector<double> symmetricGammas(const std::vector<double>& lams, int M, int nFactors, int count)
{
    if (lams.size() < 4) throw TailError("symmetric gammas: need at least four eigenvalues");
    if (count < 0) count = static_cast<int>(lams.size());
    const int have = static_cast<int>(lams.size());
    nFactors = std::max(nFactors, have);
    // 2b from the tail of the supplied spectrum
    int k0 = std::max(0, have - std::max(2, have / 10));
    int used = 0;
    double twoB = 0.0;
    for (int n = k0; n < have; ++n) {
        double m = n - M;
        if (m <= 0) continue;
        twoB += lams[static_cast<size_t>(n)] - m * m;
        ++used;
    }
    if (used == 0) throw TailError("symmetric gammas: spectrum too short for the tail model");
    twoB /= used;

    auto lamAt = [&](int n) {
        if (n < have) return lams[static_cast<size_t>(n)];
        double m = n - M;
        return m * m + twoB;
    };
    auto scale = [&](int n) {
        double m = n - M;
        return (n <= M) ? 1.0 : m * m;
    };

    std::vector<double> out;
    for (int k = 0; k < std::min(count, have); ++k) {
        double lk = lamAt(k);
        double logAbs = std::log(pi / scale(k));
        int negatives = 0;
        for (int n = 0; n < nFactors; ++n) {
            if (n == k) continue;
            double fct = (lamAt(n) - lk) / scale(n);
            if (n >= have && !(fct > 0.0)) throw TailError("symmetric gammas: synthesized factor not positive");
            if (fct == 0.0) throw TailError("symmetric gammas: repeated eigenvalue");
            if (fct < 0.0) ++negatives;
            logAbs += std::log(std::abs(fct));
        }
        double K = nFactors - M - 0.5;
        double tail = (twoB - lk) / K;
        double value = std::exp(logAbs + tail);
        if (!std::isfinite(value) || !(value > 0.0)) throw TailError("symmetric gammas: tail correction failed");
        // the sign of chi'(l_k) is (-1)^k, so gamma_k = |chi'(l_k)| once the sign pattern is confirmed
        if (negatives != k) throw TailError("symmetric gammas: eigenvalues out of order");
        out.push_back(value);
    }
    return out;
}

}  // namespace hnspec

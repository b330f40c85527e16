#include "hnspec/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unsupported/Eigen/Polynomials>

namespace hnspec {

RealPolynomial::RealPolynomial(std::vector<double> c) : coeffs_(std::move(c)) { trim(); }

RealPolynomial RealPolynomial::constant(double c) { return RealPolynomial(std::vector<double>{c}); }

RealPolynomial RealPolynomial::monomial(int degree, double c)
{
    std::vector<double> v(static_cast<size_t>(degree) + 1, 0.0);
    v[0] = c;
    return RealPolynomial(std::move(v));
}

RealPolynomial RealPolynomial::fromRootsReversed(const std::vector<double>& roots, double c)
{
    RealPolynomial p = constant(c);
    for (double r : roots)
        p = p * RealPolynomial({-1.0, r});
    return p;
}

void RealPolynomial::trim()
{
    size_t k = 0;
    while (k < coeffs_.size() && coeffs_[k] == 0.0) ++k;
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(k));
}

double RealPolynomial::coeff(int k) const
{
    int d = degree();
    if (isZero() || k < 0 || k > d) return 0.0;
    return coeffs_[static_cast<size_t>(d - k)];
}

double RealPolynomial::operator()(double x) const
{
    double s = 0.0;
    for (double c : coeffs_) s = s * x + c;
    return s;
}

RealPolynomial RealPolynomial::derivative() const
{
    int d = degree();
    if (d <= 0) return RealPolynomial();
    std::vector<double> v(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) v[static_cast<size_t>(i)] = coeffs_[static_cast<size_t>(i)] * (d - i);
    return RealPolynomial(std::move(v));
}

RealPolynomial RealPolynomial::dividedByLinear(double mu, double* remainder) const
{
    if (isZero()) {
        if (remainder) *remainder = 0.0;
        return RealPolynomial();
    }
    std::vector<double> q;
    double acc = 0.0;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        acc = acc * mu + coeffs_[i];
        if (i + 1 < coeffs_.size()) q.push_back(acc);
    }
    if (remainder) *remainder = acc;
    return RealPolynomial(std::move(q));
}

RealPolynomial RealPolynomial::truncatedToDegree(int n) const
{
    if (degree() <= n) return *this;
    if (n < 0) return RealPolynomial();
    std::vector<double> v(coeffs_.end() - (n + 1), coeffs_.end());
    return RealPolynomial(std::move(v));
}

RealPolynomial RealPolynomial::composedWithSquare() const
{
    if (isZero()) return RealPolynomial();
    std::vector<double> v;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        v.push_back(coeffs_[i]);
        if (i + 1 < coeffs_.size()) v.push_back(0.0);
    }
    return RealPolynomial(std::move(v));
}

RealPolynomial RealPolynomial::operator+(const RealPolynomial& o) const
{
    size_t n = std::max(coeffs_.size(), o.coeffs_.size());
    std::vector<double> v(n, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) v[n - coeffs_.size() + i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) v[n - o.coeffs_.size() + i] += o.coeffs_[i];
    return RealPolynomial(std::move(v));
}

RealPolynomial RealPolynomial::operator-(const RealPolynomial& o) const { return *this + o * -1.0; }

RealPolynomial RealPolynomial::operator*(const RealPolynomial& o) const
{
    if (isZero() || o.isZero()) return RealPolynomial();
    std::vector<double> v(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
    return RealPolynomial(std::move(v));
}

RealPolynomial RealPolynomial::operator*(double s) const
{
    std::vector<double> v = coeffs_;
    for (double& c : v) c *= s;
    return RealPolynomial(std::move(v));
}

std::vector<double> RealPolynomial::realRoots(double imagTol) const
{
    int d = degree();
    std::vector<double> out;
    if (d <= 0) return out;
    if (d == 1) {
        out.push_back(-coeffs_[1] / coeffs_[0]);
        return out;
    }
    Eigen::VectorXd c(d + 1);
    for (int k = 0; k <= d; ++k) c[k] = coeff(k);
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
    solver.compute(c);
    for (const auto& r : solver.roots()) {
        if (std::abs(r.imag()) <= imagTol * std::max(1.0, std::abs(r.real()))) out.push_back(r.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string RealPolynomial::str() const
{
    if (isZero()) return "0";
    std::ostringstream os;
    os.precision(17);
    int d = degree();
    for (int i = 0; i <= d; ++i) {
        if (i) os << " + ";
        os << coeffs_[static_cast<size_t>(i)];
        if (d - i > 0) os << "*x^" << d - i;
    }
    return os.str();
}

}  // namespace hnspec

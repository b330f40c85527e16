#pragma once
#include <limits>
#include <string>
#include <vector>

namespace hnspec {

// Dense polynomial with real coefficients, stored highest degree first.
// The zero polynomial carries the degree sentinel kZeroDegree (never -1,
// which is a legitimate boundary-function index).
class RealPolynomial {
public:
    static constexpr int kZeroDegree = std::numeric_limits<int>::min();

    RealPolynomial() = default;
    explicit RealPolynomial(std::vector<double> coeffsHighFirst);
    static RealPolynomial constant(double c);
    static RealPolynomial monomial(int degree, double c = 1.0);
    // c * (r_1 - x)(r_2 - x)...
    static RealPolynomial fromRootsReversed(const std::vector<double>& roots, double c);

    int degree() const { return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1; }
    bool isZero() const { return coeffs_.empty(); }
    const std::vector<double>& coeffs() const { return coeffs_; }
    // coefficient of x^k (0 outside the stored range)
    double coeff(int k) const;
    double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.front(); }

    double operator()(double x) const;
    RealPolynomial derivative() const;
    // quotient by (x - mu); the remainder equals p(mu)
    RealPolynomial dividedByLinear(double mu, double* remainder = nullptr) const;
    // drop leading coefficients so that the degree is at most n
    RealPolynomial truncatedToDegree(int n) const;
    // p(x^2)
    RealPolynomial composedWithSquare() const;

    RealPolynomial operator+(const RealPolynomial& o) const;
    RealPolynomial operator-(const RealPolynomial& o) const;
    RealPolynomial operator*(const RealPolynomial& o) const;
    RealPolynomial operator*(double s) const;
    RealPolynomial operator-() const { return *this * -1.0; }

    // real roots via the companion matrix
    std::vector<double> realRoots(double imagTol = 1e-9) const;

    std::string str() const;

private:
    void trim();
    std::vector<double> coeffs_;
};

inline RealPolynomial operator*(double s, const RealPolynomial& p) { return p * s; }

}  // namespace hnspec

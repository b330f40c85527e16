#pragma once
#include <vector>

#include "hnspec/problem.hpp"

namespace hnspec {

enum class Direction { Forward, Backward };

struct IvpOptions {
    double tol = 1e-10;
    // extra abscissae at which the solution is recorded (always includes 0 and pi)
    std::vector<double> outputs;
    // record every accepted step as well
    bool recordSteps = false;
};

// Solution of -y'' + q y = l y started at 0 (Forward) or pi (Backward).
// Samples are stored in increasing x regardless of direction.
struct IvpSolution {
    double lambda = 0.0;
    Direction direction = Direction::Forward;
    std::vector<double> grid, y, yprime;
    double y2Integral = 0.0;  // integral of y^2 over [0, pi]
    // continuous Pruefer angle theta with cot(theta) = y'/y, theta(start) in [0, pi)
    double angleStart = 0.0;
    double angleEnd = 0.0;
    int steps = 0;

    double yAt0() const { return y.front(); }
    double dyAt0() const { return yprime.front(); }
    double yAtPi() const { return y.back(); }
    double dyAtPi() const { return yprime.back(); }
    // cubic Hermite interpolation between stored samples
    double valueAt(double x) const;
};

IvpSolution integrate(const Potential& q, double lambda, double y0, double dy0, Direction dir,
                      const IvpOptions& opt = {});

IvpSolution phi(const Problem& p, double lambda, const IvpOptions& opt = {});
IvpSolution psi(const Problem& p, double lambda, const IvpOptions& opt = {});

// w = y'/y on the stored grid; ZeroCrossingError when y changes sign or
// |y| < 1e-12 * max|y| anywhere on the grid.
std::vector<double> logDerivative(const IvpSolution& sol);

constexpr double kZeroCrossingThreshold = 1e-12;

// uniform grid 0, pi/n, ..., pi
std::vector<double> uniformGrid(int n);

}  // namespace hnspec

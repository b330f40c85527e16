#pragma once
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hnspec/problem.hpp"

namespace testutil {

using namespace hnspec;
using std::numbers::pi;

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// random rational Herglotz-Nevanlinna function of the requested index (-1..5);
// poles drawn from [lo, lo + span]
inline BoundaryFunction randomBoundary(std::mt19937& rng, int index, double lo = 1.0, double span = 6.0)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (index < 0) return BoundaryFunction::dirichlet();
    const int d = index / 2;
    const double h0 = (index % 2 == 1) ? 0.3 + 1.7 * u(rng) : 0.0;
    const double h = -1.0 + 2.0 * u(rng);
    std::vector<double> poles, res;
    double x = lo;
    for (int k = 0; k < d; ++k) {
        x += (0.5 + u(rng)) * span / std::max(1, d);
        poles.push_back(x);
        res.push_back(0.3 + 1.7 * u(rng));
    }
    return BoundaryFunction::make(h0, h, poles, res);
}

// piecewise-linear samples of a random smooth function
inline PotentialPtr randomSampledPotential(std::mt19937& rng, int nodes = 129)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double a0 = u(rng), a1 = u(rng), a2 = 0.5 * u(rng), p1 = 3 * u(rng), p2 = 3 * u(rng);
    std::vector<double> g, v;
    for (int i = 0; i < nodes; ++i) {
        double x = pi * i / (nodes - 1);
        g.push_back(x);
        v.push_back(a0 + a1 * std::cos(x + p1) + a2 * std::cos(3 * x + p2));
    }
    return std::make_shared<SampledPotential>(g, v);
}

inline Problem randomProblem(std::mt19937& rng, int maxIndex = 3, int minIndex = -1)
{
    std::uniform_int_distribution<int> di(minIndex, maxIndex);
    int a = di(rng), b = di(rng);
    if (a < 0 && b < 0) b = 0;
    return Problem{randomSampledPotential(rng), randomBoundary(rng, a), randomBoundary(rng, b, 1.5)};
}

// random (mu, tau, f) with mu below the smallest pole; tau = f(mu) when equal is set
struct Triple {
    double mu, tau;
    BoundaryFunction f;
    bool equal;
};

inline Triple randomTriple(std::mt19937& rng)
{
    std::uniform_int_distribution<int> di(-1, 5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    BoundaryFunction f = testutil::randomBoundary(rng, di(rng), -2.0, 6.0);
    double top = std::min(f.smallestPole(), 3.0);
    double mu = top - 0.05 - 4.0 * u(rng);
    bool equal = !f.isDirichlet() && u(rng) < 0.5;
    double tau = f.isDirichlet() ? -3.0 + 6.0 * u(rng) : f(mu) + (equal ? 0.0 : 0.05 + 3.0 * u(rng));
    return {mu, tau, f, equal};
}

inline bool interlace(std::vector<double> a, std::vector<double> b)
{
    std::vector<std::pair<double, int>> all;
    for (double x : a) all.push_back({x, 0});
    for (double x : b) all.push_back({x, 1});
    std::sort(all.begin(), all.end());
    for (size_t i = 1; i < all.size(); ++i) {
        if (all[i].second == all[i - 1].second) return false;
        if (!(all[i].first > all[i - 1].first)) return false;
    }
    return true;
}

}  // namespace testutil

#pragma once
#include <utility>
#include <vector>

#include "hnspec/boundary.hpp"
#include "hnspec/potential.hpp"

namespace hnspec {

// -y'' + q y = l y on [0, pi],  y'(0) = -f(l) y(0),  y'(pi) = F(l) y(pi)
struct Problem {
    PotentialPtr q;
    BoundaryFunction f;
    BoundaryFunction F;
};

// Eigenvalues with their norming constants; M = ind f, N = ind F.
struct SpectralData {
    int M = 0;
    int N = 0;
    std::vector<std::pair<double, double>> entries;

    size_t size() const { return entries.size(); }
    double lambda(size_t n) const { return entries[n].first; }
    double gamma(size_t n) const { return entries[n].second; }
};

}  // namespace hnspec

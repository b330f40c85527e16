#pragma once
#include <vector>
#include <Eigen/Dense>

#include "hnspec/problem.hpp"

namespace hnspec {

// Discretization of the operator on L2(0,pi) + C^d + C^D with the weighted inner product
//   <Y,Z> = int y z + h0 y(0)z(0) + H0 y(pi)z(pi) + sum y_k z_k/delta_k + sum eta_k zeta_k/Delta_k.
// Unknowns: nodal values of y (Dirichlet ends removed), then y_k, then eta_k.
struct Pencil {
    int size = 0;
    Eigen::MatrixXd stiffness;  // symmetric
    Eigen::VectorXd weight;     // diagonal of the mass matrix, strictly positive
    int intervals = 0;
    int firstNode = 0;  // index of the first grid node kept (1 for Dirichlet at 0)
    int nodeCount = 0;
    int leftStart = 0, leftCount = 0;
    int rightStart = 0, rightCount = 0;
};

Pencil discretize(const Problem& p, int m);

// W^{-1/2} K W^{-1/2}
Eigen::MatrixXd congruence(const Pencil& pen);

struct OracleSpectrum {
    std::vector<double> values;
    Eigen::MatrixXd vectors;  // columns in the original (unweighted) coordinates
};

OracleSpectrum oracleSpectrum(const Problem& p, int m, int count);
std::vector<double> oracleEigenvalues(const Problem& p, int m, int count);

}  // namespace hnspec

#include "hnspec/oracle.hpp"

#include <cmath>
#include <numbers>

#include "hnspec/errors.hpp"

namespace hnspec {

using std::numbers::pi;

Pencil discretize(const Problem& p, int m)
{
    if (m < 16) throw ValidationError("discretize: need at least 16 intervals");
    if (!p.q) throw ValidationError("discretize: missing potential");
    const BoundaryFunction& f = p.f;
    const BoundaryFunction& F = p.F;
    Pencil pen;
    pen.intervals = m;
    pen.firstNode = f.isDirichlet() ? 1 : 0;
    const int lastNode = F.isDirichlet() ? m - 1 : m;
    pen.nodeCount = lastNode - pen.firstNode + 1;
    pen.leftStart = pen.nodeCount;
    pen.leftCount = f.isDirichlet() ? 0 : f.poleCount();
    pen.rightStart = pen.leftStart + pen.leftCount;
    pen.rightCount = F.isDirichlet() ? 0 : F.poleCount();
    pen.size = pen.rightStart + pen.rightCount;

    pen.stiffness = Eigen::MatrixXd::Zero(pen.size, pen.size);
    pen.weight = Eigen::VectorXd::Zero(pen.size);
    auto& K = pen.stiffness;
    auto& W = pen.weight;
    const double h = pi / m;
    auto kept = [&](int i) { return i >= pen.firstNode && i <= lastNode; };
    auto id = [&](int i) { return i - pen.firstNode; };

    for (int i = 0; i < m; ++i) {
        int a = i, b = i + 1;
        if (kept(a)) K(id(a), id(a)) += 1.0 / h;
        if (kept(b)) K(id(b), id(b)) += 1.0 / h;
        if (kept(a) && kept(b)) {
            K(id(a), id(b)) -= 1.0 / h;
            K(id(b), id(a)) -= 1.0 / h;
        }
    }
    for (int i = pen.firstNode; i <= lastNode; ++i) {
        double w = (i == 0 || i == m) ? 0.5 * h : h;
        W(id(i)) += w;
        K(id(i), id(i)) += w * (*p.q)(i * h);
    }
    if (!f.isDirichlet()) {
        int n0 = id(0);
        K(n0, n0) -= f.h();
        W(n0) += f.h0();
        for (int k = 0; k < pen.leftCount; ++k) {
            int c = pen.leftStart + k;
            double hk = f.poles()[static_cast<size_t>(k)], dk = f.residues()[static_cast<size_t>(k)];
            K(c, c) = hk / dk;
            K(c, n0) = K(n0, c) = 1.0;
            W(c) = 1.0 / dk;
        }
    }
    if (!F.isDirichlet()) {
        int nm = id(m);
        K(nm, nm) -= F.h();
        W(nm) += F.h0();
        for (int k = 0; k < pen.rightCount; ++k) {
            int c = pen.rightStart + k;
            double Hk = F.poles()[static_cast<size_t>(k)], Dk = F.residues()[static_cast<size_t>(k)];
            K(c, c) = Hk / Dk;
            K(c, nm) = K(nm, c) = 1.0;
            W(c) = 1.0 / Dk;
        }
    }
    return pen;
}

Eigen::MatrixXd congruence(const Pencil& pen)
{
    Eigen::VectorXd s = pen.weight.cwiseSqrt().cwiseInverse();
    return s.asDiagonal() * pen.stiffness * s.asDiagonal();
}

OracleSpectrum oracleSpectrum(const Problem& p, int m, int count)
{
    Pencil pen = discretize(p, m);
    if (count < 1 || count > pen.size) throw ValidationError("oracle: count out of range");
    Eigen::MatrixXd A = congruence(pen);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) throw ConvergenceError("oracle: symmetric eigensolver failed");
    OracleSpectrum out;
    Eigen::VectorXd s = pen.weight.cwiseSqrt().cwiseInverse();
    out.vectors.resize(pen.size, count);
    for (int k = 0; k < count; ++k) {
        out.values.push_back(es.eigenvalues()(k));
        out.vectors.col(k) = s.asDiagonal() * es.eigenvectors().col(k);
    }
    return out;
}

std::vector<double> oracleEigenvalues(const Problem& p, int m, int count) { return oracleSpectrum(p, m, count).values; }

}  // namespace hnspec

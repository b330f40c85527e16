#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "common.hpp"
#include "hnspec/boundary.hpp"
#include "hnspec/errors.hpp"

using namespace hnspec;
using testutil::rel;

TEST_CASE("evaluation")
{
    CHECK(std::isinf(BoundaryFunction::dirichlet()(5.0)));
    CHECK(BoundaryFunction::affine(2, 1)(3.0) == doctest::Approx(7.0));
    auto f = BoundaryFunction::make(0, 0, {0}, {1});
    CHECK(f(2.0) == doctest::Approx(-0.5));
    CHECK(std::isinf(f(0.0)));
    CHECK(f(0.0) > 0);
}

TEST_CASE("validation")
{
    CHECK_THROWS_AS(BoundaryFunction::make(-1, 0, {}, {}), ValidationError);
    CHECK_THROWS_AS(BoundaryFunction::make(0, 0, {1}, {-1}), ValidationError);
    CHECK_THROWS_AS(BoundaryFunction::make(0, 0, {2, 1}, {1, 1}), ValidationError);
    CHECK_THROWS_AS(BoundaryFunction::make(0, 0, {1, 2}, {1}), ValidationError);
}

TEST_CASE("index")
{
    CHECK(BoundaryFunction::dirichlet().index() == -1);
    CHECK(BoundaryFunction::constant(3).index() == 0);
    CHECK(BoundaryFunction::make(1, 0, {1}, {1}).index() == 3);
    CHECK(BoundaryFunction::make(0, 0, {1, 2}, {1, 1}).index() == 4);
}

TEST_CASE("up and down polynomials")
{
    auto D = BoundaryFunction::dirichlet();
    CHECK(D.up().coeffs() == std::vector<double>{-1.0});
    CHECK(D.down().isZero());
    auto c = BoundaryFunction::constant(2.5);
    CHECK(c.up().coeffs() == std::vector<double>{2.5});
    CHECK(c.down().coeffs() == std::vector<double>{1.0});
    auto a = BoundaryFunction::affine(2, 1);
    REQUIRE(a.up().degree() == 1);
    CHECK(a.up().coeff(1) == doctest::Approx(1.0));
    CHECK(a.up().coeff(0) == doctest::Approx(0.5));
    CHECK(a.down().coeffs() == std::vector<double>{0.5});
    auto g = BoundaryFunction::make(1, 0, {1}, {1});
    CHECK(g.up().degree() == 2);
    CHECK(g.down().degree() == 1);
}

TEST_CASE("omega polynomial")
{
    auto D = BoundaryFunction::dirichlet();
    CHECK(D.omegaPoly().coeffs() == std::vector<double>{1.0});
    CHECK(D.omega1() == 0.0);
    CHECK(D.omega2() == 0.0);
    auto c = BoundaryFunction::constant(1.5);
    CHECK(c.omegaPoly().degree() == 1);
    CHECK(c.omega1() == doctest::Approx(-1.5));
    CHECK(c.omega2() == 0.0);
    auto a = BoundaryFunction::affine(2, 3);
    CHECK(a.omegaPoly().degree() == 2);
    CHECK(a.omega1() == doctest::Approx(0.5));
    CHECK(a.omega2() == doctest::Approx(1.5));
}

TEST_CASE("smallest pole and pole counting")
{
    CHECK(BoundaryFunction::make(0, 0, {-2}, {1}).smallestPole() == -2.0);
    CHECK(std::isinf(BoundaryFunction::affine(1, 3).smallestPole()));
    CHECK(std::isinf(BoundaryFunction::dirichlet().smallestPole()));
    CHECK(BoundaryFunction::constant(1).poleCountUpTo(10) == 0);
    auto f = BoundaryFunction::make(0, 0, {1, 4}, {1, 1});
    CHECK(f.poleCountUpTo(2) == 1);
    CHECK(f.poleCountUpTo(4) == 2);
    CHECK(f.poleCountUpTo(0.5) == 0);
}

TEST_CASE("partial order")
{
    auto D = BoundaryFunction::dirichlet();
    CHECK(precedes(D, BoundaryFunction::constant(7)));
    CHECK(precedes(D, D));
    CHECK(precedes(BoundaryFunction::constant(1), BoundaryFunction::constant(2)));
    CHECK_FALSE(precedes(BoundaryFunction::constant(2), BoundaryFunction::constant(1)));
    CHECK_FALSE(precedes(BoundaryFunction::affine(1, 0), BoundaryFunction::constant(0)));
    CHECK_FALSE(precedes(BoundaryFunction::constant(0), D));
    // 1/(1-l) <= 2/(1-l) below the pole
    CHECK(precedes(BoundaryFunction::make(0, 0, {1}, {1}), BoundaryFunction::make(0, 0, {1}, {2})));
}

TEST_CASE("theta examples")
{
    auto r = theta(0.0, 3.0, BoundaryFunction::constant(3.0));
    CHECK(r.isDirichlet());
    auto c = theta(0.0, 5.0, BoundaryFunction::dirichlet());
    CHECK(c.isConstant());
    CHECK(c.h() == doctest::Approx(-5.0));
    auto d = theta(0.0, 0.0, BoundaryFunction::affine(1, 0), ThetaBranch::Equal);
    CHECK(d.isConstant());
    CHECK(d.h() == doctest::Approx(-1.0));
    // (mu - l)/(c - tau) - tau with c = 2, tau = 3, mu = 0.5: slope 1, value at 0 is -0.5 - 3
    auto e = theta(0.5, 3.0, BoundaryFunction::constant(2.0));
    CHECK(e.index() == 1);
    CHECK(e.h0() == doctest::Approx(1.0));
    CHECK(e.h() == doctest::Approx(-3.5));
    CHECK_THROWS_AS(theta(0.0, 1.0, BoundaryFunction::constant(2.0)), DomainError);
    CHECK_THROWS_AS(theta(2.0, 5.0, BoundaryFunction::make(0, 0, {1}, {1})), DomainError);
    CHECK_THROWS_AS(theta(0.0, 2.5, BoundaryFunction::constant(2.0), ThetaBranch::Equal), DomainError);
}

using testutil::interlace;
using testutil::randomTriple;
using testutil::Triple;

TEST_CASE("theta: involution, index step and interlacing on 200 random triples")
{
    std::mt19937 rng(20240611);
    int checked = 0;
    for (int it = 0; it < 200; ++it) {
        Triple t = randomTriple(rng);
        ThetaBranch br = t.equal ? ThetaBranch::Equal : ThetaBranch::Rise;
        if (t.f.isDirichlet()) br = ThetaBranch::Auto;
        BoundaryFunction g = theta(t.mu, t.tau, t.f, br);
        if (!t.f.isDirichlet()) CHECK(g.index() == t.f.index() + (t.equal ? -1 : 1));
        else CHECK(g.index() == 0);
        if (t.f.poleCount() > 0 && g.poleCount() > 0) {
            CHECK(interlace(t.f.poles(), g.poles()));
            CHECK((t.f.poles().front() < g.poles().front()) == t.equal);
        }
        if (t.mu < g.smallestPole()) {
            BoundaryFunction back = theta(t.mu, -t.tau, g);
            CHECK(fieldDistance(back, t.f) <= 1e-10 * (1.0 + fieldDistance(t.f, BoundaryFunction())));
            ++checked;
        }
    }
    CHECK(checked >= 150);
}

TEST_CASE("theta: partial-fraction recovery agrees with the closed-form up/down pair")
{
    std::mt19937 rng(7);
    for (int it = 0; it < 100; ++it) {
        Triple t = randomTriple(rng);
        if (t.f.isDirichlet()) continue;
        ThetaBranch br = t.equal ? ThetaBranch::Equal : ThetaBranch::Rise;
        BoundaryFunction g = theta(t.mu, t.tau, t.f, br);
        RealPolynomial up, down;
        thetaUpDown(t.mu, t.tau, t.f, br, up, down);
        if (!g.isDirichlet()) CHECK(up.degree() + down.degree() == g.index());
        for (double x : {t.mu - 3.1, t.mu - 0.7, t.mu + 0.013}) {
            if (g.isDirichlet()) {
                CHECK(down.isZero());
                break;
            }
            double direct = (t.mu - x) / (t.f(x) - t.tau) - t.tau;
            CHECK(rel(g(x), direct) <= 1e-8);
            CHECK(rel(up(x) / down(x), direct) <= 1e-8);
        }
    }
}

TEST_CASE("monotone between poles, up/down reconstruction, omega monic")
{
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> di(0, 6);
    for (int it = 0; it < 60; ++it) {
        BoundaryFunction f = testutil::randomBoundary(rng, di(rng), -3.0, 6.0);
        auto up = f.up(), down = f.down();
        CHECK(up.degree() + down.degree() == f.index());
        auto w = f.omegaPoly();
        CHECK(w.degree() == f.index() + 1);
        CHECK(w.leading() == doctest::Approx(1.0));
        std::vector<double> cuts = f.poles();
        cuts.insert(cuts.begin(), -10.0);
        cuts.push_back(12.0);
        for (size_t k = 0; k + 1 < cuts.size(); ++k) {
            double prev = -kInf;
            for (int s = 1; s < 40; ++s) {
                double x = cuts[k] + (cuts[k + 1] - cuts[k]) * s / 40.0;
                double v = f(x);
                if (!f.isConstant()) CHECK(v > prev);
                prev = v;
                CHECK(std::abs(up(x) / down(x) - v) <= 1e-12 * (1.0 + std::abs(v)));
                CHECK(f.slopeDownSquared(x) == doctest::Approx(f.derivative(x) * down(x) * down(x)).epsilon(1e-9));
            }
        }
    }
}

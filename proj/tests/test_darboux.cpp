#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "common.hpp"
#include "hnspec/darboux.hpp"
#include "hnspec/errors.hpp"

using namespace hnspec;
using testutil::pi;
using testutil::rel;

namespace {

Problem neumannFree()
{
    return Problem{ExprPotential::zero(), BoundaryFunction::constant(0), BoundaryFunction::constant(0)};
}

double conserved(const Problem& p) { return 0.5 * p.q->integral() + p.f.omega1() + p.F.omega1(); }

}  // namespace

TEST_CASE("Neumann to Dirichlet worked example")
{
    auto r = transformDown(neumannFree());
    CHECK(std::abs(r.record.lambda0) <= 1e-10);
    CHECK(r.record.Lambda == doctest::Approx(r.record.lambda0));
    CHECK(r.record.I == 1);
    CHECK(r.record.J == 1);
    CHECK(r.problem.f.isDirichlet());
    CHECK(r.problem.F.isDirichlet());
    CHECK(potentialDistance(*r.problem.q, *ExprPotential::zero()) <= 1e-8);
    auto d = spectralData(r.problem, 6);
    for (int n = 0; n < 6; ++n) {
        CHECK(rel(d.lambda(n), (n + 1.0) * (n + 1.0)) <= 1e-8);
        CHECK(rel(d.gamma(n), pi / (2 * (n + 1.0) * (n + 1.0))) <= 1e-7);
    }
}

TEST_CASE("Dirichlet-Neumann step keeps the spectrum")
{
    Problem p{ExprPotential::zero(), BoundaryFunction::dirichlet(), BoundaryFunction::constant(0)};
    auto r = transformDown(p);
    CHECK(r.record.Lambda == doctest::Approx(0.25 - 2.0).epsilon(1e-9));
    CHECK(r.record.I == -1);
    CHECK(r.record.J == 0);
    CHECK(r.problem.f.index() == 0);
    CHECK(r.problem.F.index() == -1);
    auto a = eigenvalues(p, 6), b = eigenvalues(r.problem, 6);
    for (int n = 0; n < 6; ++n) CHECK(rel(a[n], b[n]) <= 1e-8);
}

TEST_CASE("upward step over the free Dirichlet problem")
{
    Problem D{ExprPotential::zero(), BoundaryFunction::dirichlet(), BoundaryFunction::dirichlet()};
    CHECK(kappa(D, 0.0) == doctest::Approx(1.0 / pi).epsilon(1e-9));
    auto u = transformUp(0.0, pi, D);
    CHECK(u.branch == UpBranch::Below);
    CHECK(std::abs(u.tau) <= 1e-9);
    CHECK(potentialDistance(*u.problem.q, *ExprPotential::zero()) <= 1e-8);
    CHECK(fieldDistance(u.problem.f, BoundaryFunction::constant(0)) <= 1e-8);
    CHECK(fieldDistance(u.problem.F, BoundaryFunction::constant(0)) <= 1e-8);
    CHECK_THROWS_AS(transformUp(2.0, 1.0, D), DomainError);
    CHECK_THROWS_AS(transformUp(0.0, -1.0, D), DomainError);
}

TEST_CASE("transformDown rejects the double Dirichlet problem")
{
    Problem D{ExprPotential::zero(), BoundaryFunction::dirichlet(), BoundaryFunction::dirichlet()};
    CHECK_THROWS_AS(transformDown(D), DomainError);
}

TEST_CASE("gamma0 expression")
{
    auto r = transformDown(neumannFree());
    CHECK(gamma0Expression(r.problem, 0.0, BoundaryFunction::constant(0)) == doctest::Approx(pi).epsilon(1e-8));
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> di(1, 2);
    for (int it = 0; it < 8; ++it) {
        Problem p{testutil::randomSampledPotential(rng), testutil::randomBoundary(rng, di(rng)),
                  testutil::randomBoundary(rng, di(rng), 1.5)};
        auto d = transformDown(p);
        double g = gamma0Expression(d.problem, d.record.lambda0, p.f);
        CHECK(rel(g, d.record.gamma0) <= 1e-5);
    }
}

TEST_CASE("random problems: isospectrality, bookkeeping, conservation, tau coincidence, round trip")
{
    std::mt19937 rng(43);
    for (int it = 0; it < 12; ++it) {
        Problem p = testutil::randomProblem(rng, 2, -1);
        CAPTURE(it);
        CAPTURE(p.f.index());
        CAPTURE(p.F.index());
        auto r = transformDown(p);
        const auto& rec = r.record;
        CHECK(rec.I == (p.f.index() >= 0 ? 1 : -1));
        CHECK(rec.J == ((p.f.index() >= 0 && p.F.index() >= 0) ? 1 : 0));
        CHECK(r.problem.f.index() == p.f.index() - rec.I);
        CHECK(r.problem.F.index() == p.F.index() - (2 * rec.J - rec.I));
        if (!p.f.isDirichlet()) CHECK(std::abs(rec.tau0 - p.f(rec.Lambda)) <= 1e-10 * (1.0 + std::abs(rec.tau0)));
        if (!p.F.isDirichlet() && !p.f.isDirichlet())
            CHECK(std::abs(rec.tauPi - p.F(rec.Lambda)) <= 1e-8 * (1.0 + std::abs(rec.tauPi)));
        CHECK(std::abs(conserved(p) - conserved(r.problem)) <= 1e-6);
        auto dp = spectralData(p, 10), dc = spectralData(r.problem, 9);
        CHECK(isospectralMismatch(dp, dc, rec) <= 1e-5);

        auto u = transformUp(rec.lambda0, rec.gamma0, r.problem);
        CHECK(potentialDistance(*u.problem.q, *p.q) <= 1e-6);
        CHECK(fieldDistance(u.problem.f, p.f) <= 1e-8);
        CHECK(fieldDistance(u.problem.F, p.F) <= 1e-8);
    }
}

TEST_CASE("down after up is the identity")
{
    std::mt19937 rng(47);
    for (int it = 0; it < 6; ++it) {
        Problem p = testutil::randomProblem(rng, 2, 0);
        double l0 = smallestEigenvalue(p);
        double mu = l0 - 0.5 - it, nu = 0.3 + 0.4 * it;
        auto u = transformUp(mu, nu, p);
        CHECK(u.problem.f.index() == p.f.index() + 1);
        CHECK(u.problem.F.index() == p.F.index() + 1);
        auto d = spectralData(u.problem, 3);
        CHECK(rel(d.lambda(0), mu) <= 1e-8);
        CHECK(rel(d.gamma(0), nu) <= 1e-6);
        auto back = transformDown(u.problem);
        CHECK(potentialDistance(*back.problem.q, *p.q) <= 1e-6);
        CHECK(fieldDistance(back.problem.f, p.f) <= 1e-8);
        CHECK(fieldDistance(back.problem.F, p.F) <= 1e-8);
    }
}

TEST_CASE("constant-side upward branches")
{
    Problem p{ExprPotential::cosine(0.5, 1.0, 0.0, 0.0), BoundaryFunction::constant(0.3),
              BoundaryFunction::dirichlet()};
    auto d = spectralData(p, 1);
    auto u = transformUp(d.lambda(0), 0.5 * d.gamma(0), p);
    CHECK(u.branch == UpBranch::LeftConstant);
    CHECK(u.problem.f.isDirichlet());
    CHECK(u.problem.F.index() == 0);
    auto a = eigenvalues(p, 5), b = eigenvalues(u.problem, 5);
    for (int n = 0; n < 5; ++n) CHECK(rel(a[n], b[n]) <= 1e-8);

    Problem s{p.q, BoundaryFunction::dirichlet(), BoundaryFunction::constant(-0.2)};
    d = spectralData(s, 1);
    u = transformUp(d.lambda(0), 2.0 * d.gamma(0), s);
    CHECK(u.branch == UpBranch::RightConstant);
    CHECK(u.problem.F.isDirichlet());
    CHECK(u.problem.f.index() == 0);
}

TEST_CASE("chains")
{
    CHECK(chainDown(neumannFree(), 0).size() == 1);
    auto c1 = chainDown(neumannFree(), 1);
    REQUIRE(c1.size() == 2);
    CHECK(c1[1].problem.f.isDirichlet());
    CHECK_FALSE(canDescend(-1, -1));
    CHECK_FALSE(canDescend(0, -1));
    CHECK(canDescend(0, 0));
    CHECK(canDescend(1, -1));

    std::mt19937 rng(53);
    Problem p{testutil::randomSampledPotential(rng), testutil::randomBoundary(rng, 1),
              testutil::randomBoundary(rng, 1, 1.5)};
    auto chain = chainDown(p, 2);
    REQUIRE(chain.size() == 3);
    CHECK(chain[1].problem.f.index() == 0);
    CHECK(chain[1].problem.F.index() == 0);
    CHECK(chain[2].problem.f.index() == -1);
    CHECK(chain[2].problem.F.index() == -1);
    CHECK(chainDown(p, 5).size() == 3);
    std::vector<std::pair<double, double>> pairs;
    for (size_t i = 1; i < chain.size(); ++i) pairs.push_back({chain[i].record.lambda0, chain[i].record.gamma0});
    Problem top = chainUp(chain.back().problem, pairs);
    CHECK(potentialDistance(*top.q, *p.q) <= 1e-5);
    CHECK(fieldDistance(top.f, p.f) <= 1e-5);
    CHECK(fieldDistance(top.F, p.F) <= 1e-5);
    for (size_t i = 1; i < chain.size(); ++i)
        CHECK(std::abs(conserved(chain[i - 1].problem) - conserved(chain[i].problem)) <= 1e-6);
}

TEST_CASE("mapSpectralData bookkeeping")
{
    SpectralData d;
    d.M = 1;
    d.N = 0;
    d.entries = {{-1.0, 2.0}, {3.0, 4.0}, {8.0, 1.0}};
    auto m = mapSpectralData(d, -1.0, 1, 1);
    CHECK(m.M == 0);
    CHECK(m.N == -1);
    REQUIRE(m.size() == 2);
    CHECK(m.lambda(0) == 3.0);
    CHECK(m.gamma(0) == doctest::Approx(1.0));
    m = mapSpectralData(d, -3.0, -1, 0);
    CHECK(m.M == 2);
    CHECK(m.N == -1);
    CHECK(m.size() == 3);
    CHECK(m.gamma(0) == doctest::Approx(4.0));
}

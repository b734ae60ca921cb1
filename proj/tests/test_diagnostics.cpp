#include <doctest.h>

#include <cmath>

#include "gdr/diagnostics.hpp"
#include "gdr/regularity.hpp"
#include "test_support.hpp"

using namespace gdr;
using gdr::testing::random_vec;

namespace {

const ProjectableSet kXAxis = ProjectableSet::hyperplane(vec({0, 1}), 0);
const ProjectableSet kYAxis = ProjectableSet::hyperplane(vec({1, 0}), 0);
const ProjectableSet kOrigin = ProjectableSet::finite_points({vec({0, 0})});

CyclicSchedule two_lines(double phi, double lambda, double mu, double alpha)
{
    const auto B = ProjectableSet::hyperplane(vec({-std::sin(phi), std::cos(phi)}), 0);
    return CyclicSchedule({kXAxis, B}, {{0, 1, lambda, mu, alpha, {}}}, kOrigin);
}

}  // namespace

TEST_CASE("rate fits")
{
    std::vector<double> geo;
    for (int n = 0; n < 40; ++n) geo.push_back(std::pow(0.5, n));
    const RateFit f = fit_linear_rate(geo);
    CHECK(std::abs(f.rate - 0.5) <= 1e-12);
    CHECK(std::abs(f.r_squared - 1.0) <= 1e-12);
    CHECK(f.window_begin == 20);
    CHECK(f.window_end == 40);

    std::vector<double> noisy;
    for (int n = 0; n < 200; ++n) noisy.push_back(3 * std::pow(0.9, n) * (1 + 0.01 * (n % 2 ? -1 : 1)));
    CHECK(std::abs(fit_linear_rate(noisy).rate - 0.9) <= 0.005);

    const std::vector<double> flat(30, 1.0);
    const RateFit fl = fit_linear_rate(flat);
    CHECK(fl.rate == 1.0);
    CHECK(fl.r_squared == 1.0);

    // entries under the floor are dropped before the window is taken
    std::vector<double> floor = geo;
    for (int k = 0; k < 100; ++k) floor.push_back(0.0);
    CHECK(std::abs(fit_linear_rate(floor).rate - 0.5) <= 1e-12);

    const std::vector<double> finite{1.0, 0.1, 0.0, 0.0};
    const RateFit fin = fit_linear_rate(finite);
    CHECK(fin.below_floor);
    CHECK(fin.rate == 0.0);

    CHECK_THROWS_AS(fit_linear_rate(std::vector<double>{1, 0.5, 0.25}), InvalidArgument);
}

TEST_CASE("rate fits ignore positive scaling")
{
    std::vector<double> d;
    for (int n = 0; n < 60; ++n) d.push_back(std::pow(0.8, n) * (1 + 0.1 * std::sin(n)));
    std::vector<double> s = d;
    for (double& v : s) v *= 37.5;
    const RateFit a = fit_linear_rate(d);
    const RateFit b = fit_linear_rate(s);
    CHECK(std::abs(a.rate - b.rate) <= 1e-12);
    CHECK(std::abs((b.log_intercept - a.log_intercept) - std::log(37.5)) <= 1e-9);
}

TEST_CASE("quasi Fejer audits")
{
    // the projector onto a convex set, written as P_X P_C
    const auto C = ProjectableSet::ball(vec({1, 1}), 1.5);
    const auto X = ProjectableSet::affine(AffineSubspace::whole_space(2));
    const CyclicSchedule P({C, X}, {{0, 1, 1, 1, 1, {}}});
    const TrajectoryReport rp = cyclic_run(P, vec({6, -3}), 3, 0.0);
    CHECK(audit_quasi_fejer(rp, C.project(vec({0, 0})), 1, 1).passed);

    const auto A = ProjectableSet::halfspace(vec({1, 2}), 1);
    const auto B = ProjectableSet::box(vec({-1, -3}), vec({0.5, 2}));
    const std::vector<ProjectableSet> both{A, B};
    for (auto [l, m, a] : {std::tuple{2.0, 2.0, 0.5}, {1.0, 1.0, 1.0}, {2.0, 1.2, 0.5}, {1.5, 0.5, 1.0}}) {
        const CyclicSchedule S({A, B}, {{0, 1, l, m, a, {}}},
                               ProjectableSet::polyhedron({{vec({1, 2}), 1}, {vec({1, 0}), 0.5}, {vec({-1, 0}), 1},
                                                           {vec({0, 1}), 2}, {vec({0, -1}), 3}}));
        const TrajectoryReport r = cyclic_run(S, vec({5, 5}), 300, 1e-15);
        const Vec anchor = project_onto_intersection(both, r.last()).point;
        const double beta = (1 - a + beta_hat(l, m)) / a;
        const InequalityAudit ok = audit_quasi_fejer(r, anchor, 1, beta);
        CHECK(ok.passed);
        CHECK(ok.checked == r.iterates.size() - 1);
        // Fejer monotonicity of the distance to the anchor
        for (std::size_t k = 1; k < r.iterates.size(); ++k)
            CHECK((r.iterates[k] - anchor).norm() <= (r.iterates[k - 1] - anchor).norm() + 1e-10);
    }

    const CyclicSchedule S({A, B}, {{0, 1, 2, 2, 0.5, {}}});
    const TrajectoryReport r = cyclic_run(S, vec({5, 5}), 100, 1e-15);
    const Vec anchor = project_onto_intersection(both, r.last()).point;
    const InequalityAudit bad = audit_quasi_fejer(r, anchor, 1, 10.0);
    CHECK_FALSE(bad.passed);
    REQUIRE(bad.violating_index.has_value());
    CHECK(*bad.violating_index >= 1);
}

TEST_CASE("per-operator Fejer constants")
{
    const auto A = ProjectableSet::halfspace(vec({1, 0}), 0);
    const auto B = ProjectableSet::halfspace(vec({0, 1}), 0);
    const auto C = ProjectableSet::ball(vec({-1, -1}), 1.6);
    const CyclicSchedule S({A, B, C}, {{0, 1, 2, 2, 0.5, {}}, {1, 2, 1, 1, 1, {}}});
    const TrajectoryReport r = cyclic_run(S, vec({3, 2}), 200, 1e-15);
    const std::vector<ProjectableSet> all{A, B, C};
    const Vec anchor = project_onto_intersection(all, r.last()).point;
    const std::vector<double> g{1, 1};
    const std::vector<double> b{1, 0.5};
    CHECK(audit_quasi_fejer(r, anchor, g, b).passed);
    const std::vector<double> g1{1};
    CHECK_THROWS_AS(audit_quasi_fejer(r, anchor, g1, std::vector<double>{1}), InvalidArgument);
}

TEST_CASE("quasi coercivity audits")
{
    const auto epi = ProjectableSet::epi_abs(2, 0, 1);
    const CyclicSchedule S({epi, kXAxis}, {{0, 1, 2, 2, 0.5, {}}}, kOrigin);
    const TrajectoryReport r = cyclic_run(S, vec({0, -1}), 20, 0.0);
    const InequalityAudit a = audit_quasi_coercive(r, kOrigin);
    CHECK_FALSE(a.passed);
    CHECK(a.nu_hat == 0.0);

    const CyclicSchedule P = two_lines(M_PI / 2, 2, 2, 0.5);
    const TrajectoryReport rp = cyclic_run(P, vec({3, -2}), 50, 0.0);
    const InequalityAudit b = audit_quasi_coercive(rp, kOrigin);
    CHECK(b.passed);
    CHECK(b.nu_hat >= 0.5);

    const TrajectoryReport rc = cyclic_run(P, vec({0, 0}), 5, 0.0);
    const InequalityAudit c = audit_quasi_coercive(rc, kOrigin);
    CHECK(c.passed);
    CHECK(c.checked == 0);

    TrajectoryReport empty;
    CHECK_THROWS_AS(audit_quasi_coercive(empty, kOrigin), InvalidArgument);
}

TEST_CASE("per-cycle contraction audits")
{
    const CyclicSchedule S = two_lines(M_PI / 3, 2, 2, 0.5);
    const TrajectoryReport r = cyclic_run(S, vec({1, 0}), 60, 0.0);
    CHECK(audit_per_cycle_contraction(r, 1.0).passed);

    const double c = std::cos(M_PI / 3);
    const double kappa = std::sqrt(2 / (1 - c));
    const PairConstants pc = pair_constants(S.operators()[0], 0, 0, c, kappa);
    const RateBound rho = predicted_rate(std::vector<OperatorConstants>{{pc.gamma, pc.beta}}, std::min(1.0, pc.nu_prime), kappa);
    CHECK(audit_per_cycle_contraction(r, rho.rho).passed);

    const InequalityAudit bad = audit_per_cycle_contraction(r, 0.5 * std::cos(M_PI / 3));
    CHECK_FALSE(bad.passed);
    CHECK(bad.violating_index.has_value());

    const CyclicSchedule no_hint({kXAxis, kYAxis}, {{0, 1, 2, 2, 0.5, {}}});
    CHECK_THROWS_AS(audit_per_cycle_contraction(cyclic_run(no_hint, vec({1, 1}), 3, 0), 1.0), InvalidArgument);
}

TEST_CASE("audits are reproducible")
{
    const CyclicSchedule S = two_lines(0.4, 1.5, 0.5, 0.9);
    const TrajectoryReport r = cyclic_run(S, vec({2, 1}), 40, 0.0);
    const InequalityAudit a = audit_quasi_fejer(r, vec({0, 0}), 1, 0.3);
    const InequalityAudit b = audit_quasi_fejer(r, vec({0, 0}), 1, 0.3);
    CHECK(a.worst_slack == b.worst_slack);
    CHECK(default_anchor(r, kOrigin) == vec({0, 0}));
}

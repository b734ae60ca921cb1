#include <doctest.h>

#include <cmath>

#include "gdr/regularity.hpp"
#include "test_support.hpp"

using namespace gdr;
using gdr::testing::random_unit;

namespace {

const AffineSubspace kPlane = AffineSubspace::whole_space(2);
const ProjectableSet kXAxis = ProjectableSet::hyperplane(vec({0, 1}), 0);
const ProjectableSet kYAxis = ProjectableSet::hyperplane(vec({1, 0}), 0);

ProjectableSet line(const Vec& dir)
{
    return ProjectableSet::affine(AffineSubspace(Vec::Zero(dir.size()), std::span<const Vec>(&dir, 1)));
}

}  // namespace

TEST_CASE("ball sampler stays in the ball and fills it")
{
    std::mt19937_64 rng(1);
    double max_r = 0.0;
    int inner = 0;
    for (int i = 0; i < 20000; ++i) {
        const Vec x = sample_ball(rng, vec({1, 2, 3}), 2.0);
        const double r = (x - vec({1, 2, 3})).norm();
        max_r = std::max(max_r, r);
        if (r <= 1.0) ++inner;
    }
    CHECK(max_r <= 2.0);
    CHECK(max_r >= 1.99);
    // volume fraction of the half-radius ball is 1/8
    CHECK(std::abs(inner / 20000.0 - 0.125) <= 0.01);
}

TEST_CASE("CQ-number estimates")
{
    const Vec w = vec({0, 0});
    // same line: normals +-n on both sides, so some cross pair has <u, v> = 1
    const auto r_same = estimate_cq_number(kXAxis, kXAxis, kPlane, w, 1.0, 2000, 3);
    CHECK(r_same.value >= 0.999);
    CHECK(r_same.is_lower_bound);

    // perpendicular lines: normals are orthogonal
    const auto r_perp = estimate_cq_number(kXAxis, kYAxis, kPlane, w, 1.0, 10000, 4);
    CHECK(std::abs(r_perp.value) <= 0.02);

    // quadrant pair is not affine-hull regular at the origin
    const double inf = std::numeric_limits<double>::infinity();
    const auto pos = ProjectableSet::box(vec({0, 0}), vec({inf, inf}));
    const auto neg = ProjectableSet::box(vec({-inf, -inf}), vec({0, 0}));
    const auto r_quad = estimate_cq_number(pos, neg, kPlane, w, 1.0, 10000, 5);
    CHECK(r_quad.value >= 0.98);

    CHECK_THROWS_AS(estimate_cq_number(kXAxis, kYAxis, kPlane, w, 0.0, 10, 1), InvalidArgument);
    CHECK_THROWS_AS(estimate_cq_number(kXAxis, kYAxis, kPlane, vec({1, 1}), 1.0, 10, 1), InvalidArgument);
    // sampling inside L = A = B yields no normals
    const Vec e1 = vec({1, 0});
    const AffineSubspace Lx(w, std::span<const Vec>(&e1, 1));
    CHECK_FALSE(estimate_cq_number(kXAxis, kXAxis, Lx, w, 1.0, 100, 1).usable());
}

TEST_CASE("CQ-number estimates shrink with delta")
{
    const auto A = ProjectableSet::ball(vec({0, 1}), 1);
    const auto B = ProjectableSet::ball(vec({0, -1}), 1);
    const Vec w = vec({0, 0});
    double prev = 2.0;
    for (double delta : {1.0, 0.5, 0.25, 0.1}) {
        const double v = estimate_cq_number(A, B, kPlane, w, delta, 10000, 6).value;
        CHECK(v <= prev + 0.03);
        prev = v;
    }
}

TEST_CASE("linear regularity modulus estimates")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const Vec na = random_unit(rng, 2);
        const Vec nb = random_unit(rng, 2);
        const double c = std::abs(na.dot(nb));
        if (c > 0.95) continue;
        const std::vector<ProjectableSet> sets{ProjectableSet::hyperplane(na, 0), ProjectableSet::hyperplane(nb, 0)};
        const auto r = estimate_linreg_modulus(sets, ProjectableSet::finite_points({vec({0, 0})}), vec({0, 0}), 1.0, 10000, 7);
        const double exact = std::sqrt(2.0 / (1.0 - c));
        CHECK(std::abs(r.value - exact) <= 0.05 * exact);
        CHECK(r.value <= exact + 1e-9);
    }

    const auto ball = ProjectableSet::ball(vec({0, 0}), 1);
    const std::vector<ProjectableSet> single{ball};
    CHECK(estimate_linreg_modulus(single, ball, vec({0, 0}), 3.0, 1000, 8).value == 1.0);

    const double eps = 0.1;
    const std::vector<ProjectableSet> pair{kXAxis, line(vec({1, eps}))};
    const auto r = estimate_linreg_modulus(pair, ProjectableSet::finite_points({vec({0, 0})}), vec({0, 0}), 1.0, 10000, 9);
    CHECK(r.value >= 0.9 * std::sqrt(1 + 1 / (eps * eps)));

    // every sample inside the sets
    CHECK_THROWS_AS(estimate_linreg_modulus(single, ball, vec({0, 0}), 0.5, 100, 1), InvalidArgument);
}

TEST_CASE("linear regularity estimates never decrease with more samples")
{
    const std::vector<ProjectableSet> sets{ProjectableSet::ball(vec({0, 1}), 1), kXAxis};
    const auto C = ProjectableSet::finite_points({vec({0, 0})});
    double prev = 0.0;
    for (std::size_t n : {10, 100, 1000, 5000}) {
        const double v = estimate_linreg_modulus(sets, C, vec({0, 0}), 1.0, n, 10).value;
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("(eps, delta)-regularity checks")
{
    const std::vector<ProjectableSet> convex{
        ProjectableSet::ball(vec({0, 0}), 1), ProjectableSet::halfspace(vec({1, 2}), 0),
        ProjectableSet::box(vec({-1, -1}), vec({1, 0})), ProjectableSet::epi_abs(2, 0, 1)};
    for (const auto& C : convex) {
        const Vec w = C.project(vec({0.3, 0.1}));
        const auto rep = check_eps_delta_regular(C, w, 0.0, 1.5, 400, 11);
        CHECK(rep.holds_on_samples);
        CHECK(rep.worst_ratio >= -1e-9);
    }

    const auto circle = ProjectableSet::sphere(vec({0, 0}), 1);
    const auto rc = check_eps_delta_regular(circle, vec({1, 0}), 0.5, 0.4, 1000, 12);
    CHECK(rc.holds_on_samples);
    // on a unit circle the chord/normal ratio is -sin(half angle); inside B(w, 0.4) the angle is
    // at most 2 asin(0.2) from w in both directions
    CHECK(rc.worst_ratio >= -std::sin(2 * std::asin(0.2)) - 1e-9);

    const auto two = ProjectableSet::finite_points({vec({0, 0}), vec({1, 0})});
    const auto rt = check_eps_delta_regular(two, vec({0, 0}), 0.1, 2.0, 500, 13);
    CHECK_FALSE(rt.holds_on_samples);
    REQUIRE(rt.witness.has_value());
    const auto& wt = *rt.witness;
    CHECK(wt.u.dot(wt.x - wt.y) < -0.1 * wt.u.norm() * (wt.x - wt.y).norm());
    CHECK(rt.worst_ratio <= -0.95);
}

TEST_CASE("xi bound")
{
    CHECK(xi_bound(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(xi_bound(0, 2) == doctest::Approx(1.0).epsilon(1e-12));
    // mu = 1 cancels the theta dependence entirely
    for (int k = 0; k < 100; ++k) CHECK(std::abs(xi_bound(k / 100.0, 1.0) - 1.0) <= 1e-12);
    for (double mu : {0.3, 1.7}) {
        double prev = xi_bound(0, mu);
        for (int k = 1; k < 100; ++k) {
            const double v = xi_bound(k / 100.0, mu);
            CHECK(v < prev);
            prev = v;
        }
        CHECK(xi_bound(0.9999, mu) < 1e-2);
    }
    CHECK_THROWS_AS(xi_bound(1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(xi_bound(0.5, 0.0), InvalidArgument);
    CHECK_THROWS_AS(xi_bound(0.5, 2.5), InvalidArgument);
}

TEST_CASE("xi solves its quadratic on a grid")
{
    for (int i = 0; i < 20; ++i) {
        const double theta = 0.95 * i / 19.0;
        for (int k = 1; k <= 20; ++k) {
            const double mu = 2.0 * k / 20.0;
            const double xi = xi_bound(theta, mu);
            const double s = 1 - theta * theta;
            const double q = s * xi * xi - (1 + mu * mu - 2 * mu * theta * theta) * xi + mu * mu * s;
            CHECK(std::abs(q) <= 1e-9);
        }
    }
}

TEST_CASE("pair constants")
{
    const GdrOperator dr(kXAxis, kYAxis, 2, 2, 0.5);
    const PairConstants c = pair_constants(dr, 0, 0, 0, 1);
    CHECK(c.gamma == 1.0);
    CHECK(std::abs(c.beta - 1.0) <= 1e-12);
    // (1/2) * min{2, 4 / (1 + 3)}
    CHECK(std::abs(c.nu - 0.5) <= 1e-12);
    CHECK(c.nu_prime == c.nu);

    const GdrOperator ap(kXAxis, kYAxis, 1, 1, 1);
    const PairConstants d = pair_constants(ap, 0, 0, 0, 1);
    CHECK(std::abs(d.beta - 0.5) <= 1e-12);
    CHECK(std::abs(d.nu - 1.0) <= 1e-12);
    CHECK(std::abs(d.nu_prime - 1.0) <= 1e-12);

    const GdrOperator small(kXAxis, kYAxis, 1.5, 0.7, 1e-9);
    CHECK(std::abs(pair_constants(small, 0.2, 0.5, 0.3, 2).gamma - 1.0) <= 1e-8);

    // gamma with two epsilons, evaluated factor by factor
    const GdrOperator g(kXAxis, kYAxis, 1.5, 0.5, 0.8);
    const double f1 = 1 + 1.5 * 0.1 / 0.9;
    const double f2 = 1 + 0.5 * 0.2 / 0.8;
    CHECK(std::abs(pair_constants(g, 0.1, 0.2, 0.3, 2).gamma - (0.2 + 0.8 * f1 * f2)) <= 1e-12);

    CHECK_THROWS_AS(pair_constants(dr, 0.4, 0, 0, 1), InvalidArgument);
    CHECK_THROWS_AS(pair_constants(dr, 0, 1.0, 0, 1), InvalidArgument);
    CHECK_THROWS_AS(pair_constants(dr, 0, 0, 1.0, 1), InvalidArgument);
    CHECK_THROWS_AS(pair_constants(dr, 0, 0, 0, 0), InvalidArgument);
    CHECK_THROWS_AS(pair_constants(GdrOperator(kXAxis, kYAxis, 2, 2, 1.0), 0, 0, 0, 1), InvalidArgument);
}

TEST_CASE("nu' never exceeds nu and eps = 0 gives gamma = 1")
{
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> U(0.01, 1.99);
    for (int i = 0; i < 500; ++i) {
        const double l = U(rng), m = U(rng);
        const double a = std::uniform_real_distribution<double>(0.01, 0.99 * (1 + beta_hat(l, m)))(rng);
        const GdrOperator T(kXAxis, kYAxis, l, m, a);
        const double theta = std::uniform_real_distribution<double>(0, 0.99)(rng);
        const PairConstants c = pair_constants(T, 0, 0, theta, 1.0 + U(rng), i % 2 == 0);
        CHECK(c.gamma == 1.0);
        CHECK(c.nu_prime <= c.nu);
    }
}

TEST_CASE("predicted rate")
{
    const OperatorConstants one{1, 1};
    const RateBound a = predicted_rate(std::vector<OperatorConstants>{one}, 1, 1);
    CHECK(a.rho == 0.0);
    CHECK(a.admissible);

    const RateBound b = predicted_rate(std::vector<OperatorConstants>{one, one}, 1, 1);
    CHECK(std::abs(b.rho - std::sqrt(0.5)) <= 1e-12);
    CHECK(std::abs(b.rho_per_step - std::pow(0.5, 0.25)) <= 1e-12);
    CHECK(std::abs(b.Gamma - 1.0) <= 1e-12);
    CHECK(std::abs(b.delta0_factor - 0.5) <= 1e-12);

    const RateBound c = predicted_rate(std::vector<OperatorConstants>{{1.5, 1}, {1.5, 1}}, 0.1, 10);
    CHECK(std::abs(c.rho - std::sqrt(2.25 - 0.0001 * 0.5)) <= 1e-12);
    CHECK(c.rho > 1.0);
    CHECK_FALSE(c.admissible);
    CHECK(std::abs(c.delta0_factor - std::sqrt(1.5) / (2 * 1.5)) <= 1e-12);

    CHECK_THROWS_AS(predicted_rate(std::vector<OperatorConstants>{{0.9, 1}}, 0.5, 1), InvalidArgument);
    CHECK_THROWS_AS(predicted_rate(std::vector<OperatorConstants>{{1, 0}}, 0.5, 1), InvalidArgument);
    CHECK_THROWS_AS(predicted_rate(std::vector<OperatorConstants>{one}, 1.5, 1), InvalidArgument);
}

TEST_CASE("averaged constants")
{
    const AveragedConstants dr = averaged_constants(GdrOperator(kXAxis, kYAxis, 2, 2, 0.7));
    CHECK(dr.beta_hat == 0.0);
    CHECK(dr.averaged_coeff == 0.7);
    const AveragedConstants ap = averaged_constants(GdrOperator(kXAxis, kYAxis, 1, 1, 1));
    CHECK(std::abs(ap.beta_hat - 0.5) <= 1e-12);
    CHECK(std::abs(ap.averaged_coeff - 2.0 / 3.0) <= 1e-12);
    // 2(l + m - lm)/(4 - lm) = 1/(1 + beta_hat)
    CHECK(std::abs(ap.averaged_coeff - 2.0 * (1 + 1 - 1) / (4 - 1)) <= 1e-12);
    CHECK(averaged_constants(GdrOperator(kXAxis, kYAxis, 1, 1, 1e-12)).averaged_coeff <= 1e-12);
    CHECK_THROWS_AS(averaged_constants(GdrOperator(kXAxis, kYAxis, 1, 1, 1.5)), InvalidArgument);
}

TEST_CASE("schedule prediction with both kappa readings")
{
    const std::vector<ProjectableSet> sets{kXAxis, line(vec({1, 1})), kYAxis};
    const CyclicSchedule S(sets, {{0, 1, 2, 2, 0.5, {}}, {1, 2, 1, 1, 1, {}}});
    const double c = std::sqrt(0.5);
    const std::vector<PairRegularity> regs{{c, std::sqrt(2 / (1 - c)), true}, {c, std::sqrt(2 / (1 - c)), true}};
    const RatePrediction pp = predict_schedule_rate(S, regs, std::sqrt(2.0), 0.0, KappaMode::PerPair);
    const RatePrediction pg = predict_schedule_rate(S, regs, std::sqrt(2.0), 0.0, KappaMode::Global);
    CHECK(pp.bound.admissible);
    CHECK(pg.bound.admissible);
    // dividing by the smaller global kappa gives a larger nu and a faster bound
    CHECK(pg.nu > pp.nu);
    CHECK(pg.bound.rho < pp.bound.rho);
    CHECK(pp.constants.size() == 2);
}

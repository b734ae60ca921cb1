#include <doctest.h>

#include <cmath>

#include "gdr/operators.hpp"
#include "test_support.hpp"

using namespace gdr;
using gdr::testing::random_real;
using gdr::testing::random_unit;
using gdr::testing::random_vec;

namespace {

ProjectableSet line_through_origin(const Vec& dir)
{
    return ProjectableSet::affine(AffineSubspace(Vec::Zero(dir.size()), std::span<const Vec>(&dir, 1)));
}

const ProjectableSet kXAxis = ProjectableSet::hyperplane(vec({0, 1}), 0);
const ProjectableSet kYAxis = ProjectableSet::hyperplane(vec({1, 0}), 0);

}  // namespace

TEST_CASE("beta_hat and eta")
{
    CHECK(beta_hat(2, 1) == 0.0);
    CHECK(beta_hat(1, 2) == 0.0);
    CHECK(beta_hat(1, 1) == doctest::Approx(0.5));
    const GdrOperator T(kXAxis, kYAxis, 1.5, 0.5, 0.7);
    CHECK(T.beta_hat() == doctest::Approx(1.0 / (3.0 + 1.0 / 3.0)));
    CHECK(T.eta() == doctest::Approx(1 - 0.7 + 0.7 * (-0.5) * 0.5));
    CHECK(T.is_averaged());
    CHECK(GdrOperator(kXAxis, kYAxis, 2, 2, 1.0).convergence_warning());
    CHECK_THROWS_AS(GdrOperator(kXAxis, kYAxis, 0.0, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(GdrOperator(kXAxis, kYAxis, 1, 2.1, 1), InvalidArgument);
    CHECK_THROWS_AS(GdrOperator(kXAxis, kYAxis, 1, 1, 0.0), InvalidArgument);
}

TEST_CASE("classical DR step on the coordinate axes")
{
    const GdrOperator T = named_operator(NamedKind::ClassicalDR, kXAxis, kYAxis);
    // reflections written out by hand: R_A(x,y) = (x,-y), R_B(x,y) = (-x,y)
    const Vec x = vec({1, 1});
    const Vec ra = vec({x[0], -x[1]});
    const Vec rbra = vec({-ra[0], ra[1]});
    const Vec expected = 0.5 * x + 0.5 * rbra;
    CHECK(approx_equal(gdr_step(T, x), expected));
    CHECK(approx_equal(gdr_step(T, x), vec({0, 0})));
}

TEST_CASE("intersection points are fixed")
{
    std::mt19937_64 rng(8);
    const auto A = ProjectableSet::ball(vec({0, 0}), 2);
    const auto B = ProjectableSet::halfspace(vec({1, 1}), 0.5);
    for (int i = 0; i < 50; ++i) {
        const Vec c = project(B, project(A, random_vec(rng, 2, -1, 1)));
        if (!A.contains(c, 1e-12)) continue;
        const GdrOperator T(A, B, random_real(rng, 0.1, 2), random_real(rng, 0.1, 2), random_real(rng, 0.1, 1.5));
        CHECK(approx_equal(gdr_step(T, c), c, 1e-12));
    }
}

TEST_CASE("alternating projection specialization")
{
    std::mt19937_64 rng(9);
    const auto A = ProjectableSet::box(vec({-1, -1}), vec({1, 0}));
    const auto B = ProjectableSet::ball(vec({1, 1}), 1.2);
    const GdrOperator T = named_operator(NamedKind::AlternatingProjections, A, B);
    for (int i = 0; i < 100; ++i) {
        const Vec x = random_vec(rng, 2);
        CHECK(approx_equal(gdr_step(T, x), project(B, project(A, x)), 1e-14));
    }
}

TEST_CASE("named parameter triples")
{
    const GdrOperator dr = named_operator(NamedKind::ClassicalDR, kXAxis, kYAxis);
    CHECK((dr.lambda() == 2.0 && dr.mu() == 2.0 && dr.alpha() == 0.5));
    const GdrOperator ap = named_operator(NamedKind::AlternatingProjections, kXAxis, kYAxis);
    CHECK((ap.lambda() == 1.0 && ap.mu() == 1.0 && ap.alpha() == 1.0));
    const GdrOperator raar = named_operator(NamedKind::RAAR, kXAxis, kYAxis, 0.6);
    CHECK((raar.lambda() == 2.0 && raar.mu() == doctest::Approx(1.2) && raar.alpha() == 0.5));
    const GdrOperator ac = named_operator(NamedKind::AffineCombo, kXAxis, kYAxis, 0.5);
    CHECK((ac.lambda() == 1.5 && ac.mu() == 1.5 && ac.alpha() == doctest::Approx(2.0 / 3.0)));
    CHECK_THROWS_AS(named_operator(NamedKind::AffineCombo, kXAxis, ProjectableSet::ball(vec({0, 0}), 1), 0.5),
                    InvalidArgument);
}

TEST_CASE("RAAR identity")
{
    std::mt19937_64 rng(10);
    const auto A = ProjectableSet::polyhedron({{vec({1, 0}), 1}, {vec({-1, 2}), 1}});
    const auto B = ProjectableSet::ball(vec({0.5, 0.5}), 1.0);
    for (int i = 0; i < 100; ++i) {
        const Vec x = random_vec(rng, 2);
        CHECK(raar_identity_check(A, B, 0.5, x) <= 1e-10);
        CHECK(raar_identity_check(A, B, 1.0, x) <= 1e-10);
        CHECK(raar_identity_check(A, B, random_real(rng, 0.01, 1.0), x) <= 1e-10);
    }
    // T_{2,2a}^{1/2} x - P_A x is linear in a: the ratio to a is constant as a -> 0
    const Vec x = vec({3, -2});
    const Vec pa = project(A, x);
    const double r1 = (gdr_step(named_operator(NamedKind::RAAR, A, B, 1e-8), x) - pa).norm() / 1e-8;
    const double r2 = (gdr_step(named_operator(NamedKind::RAAR, A, B, 2e-8), x) - pa).norm() / 2e-8;
    CHECK(std::abs(r1 - r2) <= 1e-5 * std::max(1.0, r1));
}

TEST_CASE("gap vectors")
{
    const auto A = kXAxis;
    const auto B = ProjectableSet::hyperplane(vec({0, 1}), 1);
    const GapAnalysis g = compute_gap(A, B, 1e-12);
    CHECK(g.converged);
    CHECK(approx_equal(g.g, vec({0, 1}), 1e-12));

    const GapAnalysis z = compute_gap(ProjectableSet::ball(vec({0, 0}), 1),
                                      ProjectableSet::halfspace(vec({1, 1}), 0.3), 1e-12);
    CHECK(z.g.norm() <= 1e-12);

    // ball vs {xi >= 2}: nearest pair located by a dense scan of the circle
    const auto ball = ProjectableSet::ball(vec({0, 0}), 1);
    const auto half = ProjectableSet::halfspace(vec({-1, 0}), -2);
    double best = 1e300;
    Vec best_a;
    for (int k = 0; k < 100000; ++k) {
        const double phi = 2 * M_PI * k / 100000;
        const Vec a = vec({std::cos(phi), std::sin(phi)});
        const double d = std::max(0.0, 2.0 - a[0]);
        if (d < best) {
            best = d;
            best_a = a;
        }
    }
    const Vec oracle_g = vec({best_a[0] + best, best_a[1]}) - best_a;
    const GapAnalysis bh = compute_gap(ball, half, 1e-12);
    CHECK(approx_equal(bh.g, oracle_g, 1e-9));
    CHECK(approx_equal(bh.g, vec({1, 0}), 1e-12));
    CHECK(bh.in_e(ball, half, vec({1, 0}), 1e-12));
    CHECK(bh.in_f(ball, half, vec({2, 0}), 1e-12));
    CHECK_FALSE(bh.in_e(ball, half, vec({0, 1}), 1e-9));

    CHECK_THROWS_AS(compute_gap(ProjectableSet::sphere(vec({0, 0}), 1), half), InvalidArgument);
}

TEST_CASE("gap is stable under perturbed starts")
{
    std::mt19937_64 rng(12);
    const auto A = ProjectableSet::ball(vec({0, 0, 0}), 1);
    const auto B = ProjectableSet::hyperplane(vec({1, 2, 2}), 6);
    const GapAnalysis ref = compute_gap(A, B, 1e-12);
    for (int i = 0; i < 20; ++i) {
        const GapAnalysis g = compute_gap(A, B, 1e-12, 100000, random_vec(rng, 3));
        CHECK((g.g - ref.g).norm() <= 1e-11);
    }
}

TEST_CASE("fixed point checks")
{
    SUBCASE("epigraph of the absolute value against the axis")
    {
        const auto A = ProjectableSet::epi_abs(2, 0, 1);
        for (double alpha : {0.25, 0.5, 1.0}) {
            const GdrOperator T(A, kXAxis, 2, 2, alpha);
            const FixedPointReport r = fixed_point_check(T, vec({0, -1}), 1e-12);
            CHECK(r.is_fixed);
            CHECK(r.residual <= 1e-12);
            CHECK(r.classification == FixedPointStructure::NotApplicable);
        }
    }
    SUBCASE("intersection point")
    {
        const GdrOperator T(kXAxis, kYAxis, 1.3, 0.7, 0.9);
        const FixedPointReport r = fixed_point_check(T, vec({0, 0}), 1e-12);
        CHECK(r.is_fixed);
        CHECK(r.classification == FixedPointStructure::Holds);
    }
    SUBCASE("parallel lines")
    {
        const auto B = ProjectableSet::hyperplane(vec({0, 1}), 1);
        const GdrOperator T(kXAxis, B, 1, 1, 1);
        const GapAnalysis gap = compute_gap(kXAxis, B);
        Vec x = vec({2.5, 0}) + gap.g;
        const FixedPointReport r = fixed_point_check(T, x, 1e-12, gap);
        CHECK(r.is_fixed);
        CHECK(r.classification == FixedPointStructure::Holds);
        for (int k = 0; k < 10; ++k) x = gdr_step(T, x);
        CHECK(approx_equal(x, vec({2.5, 1}), 1e-14));

        const FixedPointReport bad = fixed_point_check(T, vec({2.5, 0.3}), 1e-9, gap);
        CHECK_FALSE(bad.is_fixed);
        CHECK(bad.classification == FixedPointStructure::Fails);
    }
}

TEST_CASE("shadow")
{
    const GdrOperator T(ProjectableSet::ball(vec({0, 0}), 1), kXAxis, 2, 2, 0.5);
    CHECK(approx_equal(shadow(T, vec({0.1, 0.2})), vec({0.1, 0.2})));
    CHECK(approx_equal(shadow(T, vec({0, 3})), vec({0, 1})));
}

TEST_CASE("translation along the complement of the affine hull")
{
    // both sets live in the plane z = 0 of R^3
    std::mt19937_64 rng(13);
    const double inf = std::numeric_limits<double>::infinity();
    const auto A = ProjectableSet::box(vec({-1, -inf, 0}), vec({2, 1, 0}));
    const auto B = line_through_origin(vec({1, 1, 0}));
    const std::vector<Vec> plane{vec({1, 0, 0}), vec({0, 1, 0})};
    const AffineSubspace L(vec({0, 0, 0}), plane);
    for (int i = 0; i < 100; ++i) {
        const GdrOperator T(A, B, random_real(rng, 0.1, 2), random_real(rng, 0.1, 2),
                            random_real(rng, 0.1, 1.5));
        const Vec x = random_vec(rng, 3);
        const Vec u = random_real(rng, -3, 3) * vec({0, 0, 1});
        CHECK((gdr_step(T, x + u) - (gdr_step(T, x) + T.eta() * u)).norm() <= 1e-9);
        CHECK(std::abs(L.distance(gdr_step(T, x)) - std::abs(T.eta()) * L.distance(x)) <= 1e-9);
    }
}

TEST_CASE("convex gDR operators are nonexpansive when averaged")
{
    std::mt19937_64 rng(14);
    const auto A = ProjectableSet::ball(vec({0, 0}), 1.5);
    const auto B = ProjectableSet::polyhedron({{vec({1, 0}), 0.5}, {vec({0, -1}), 0.2}});
    for (int i = 0; i < 300; ++i) {
        const double l = random_real(rng, 0.05, 2);
        const double m = random_real(rng, 0.05, 2);
        const double a = random_real(rng, 0.01, 1.0 + beta_hat(l, m));
        const GdrOperator T(A, B, l, m, a);
        const Vec x = random_vec(rng, 2);
        const Vec y = random_vec(rng, 2);
        CHECK((gdr_step(T, x) - gdr_step(T, y)).norm() <= (x - y).norm() + 1e-10);
    }
}

TEST_CASE("overflowing reflections abort")
{
    const ProjectableSet A = ProjectableSet::hyperplane(vec({0, 1}), 0);
    const ProjectableSet B = line_through_origin(vec({1, 1}));
    const GdrOperator T(A, B, 2, 2, 0.5);
    CHECK_THROWS_AS(T.apply(vec({1e308, 1e308})), NumericAbort);
    CHECK_NOTHROW(T.apply(vec({1e300, 1e300})));
}

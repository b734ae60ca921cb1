#include <doctest.h>

#include "gdr/geometry.hpp"
#include "test_support.hpp"

using namespace gdr;
using gdr::testing::random_vec;

TEST_CASE("inner product")
{
    CHECK(inner(vec({1, 0}), vec({0, 1})) == 0.0);
    CHECK(inner(vec({1, 2}), vec({3, 4})) == 11.0);
    const Vec x = vec({0.3, -2.0, 7.5});
    CHECK(inner(x, x) == doctest::Approx(x.squaredNorm()));
    CHECK_THROWS_AS(inner(vec({1}), vec({1, 2})), DimensionMismatch);
}

TEST_CASE("affine projection examples")
{
    const Vec e1 = vec({1, 0});
    const AffineSubspace xaxis(vec({0, 0}), std::span<const Vec>(&e1, 1));
    CHECK(approx_equal(project_affine(xaxis, vec({2, 3})), vec({2, 0})));
    CHECK(approx_equal(project_affine(xaxis, vec({-4, 0})), vec({-4, 0})));

    const Vec diag = vec({1, 1});
    const AffineSubspace line(vec({0, 0}), std::span<const Vec>(&diag, 1));
    // minimizer of (2-t)^2 + t^2 is t = 1
    CHECK(approx_equal(project_affine(line, vec({2, 0})), vec({1, 1})));
}

TEST_CASE("orthogonal complement component")
{
    const Vec e1 = vec({1, 0});
    const AffineSubspace xaxis(vec({0, 0}), std::span<const Vec>(&e1, 1));
    CHECK(approx_equal(orthogonal_complement_projection(xaxis, vec({2, 3})), vec({0, 3})));
    CHECK(approx_equal(orthogonal_complement_projection(xaxis, vec({5, 0})), vec({0, 0})));

    const std::vector<Vec> plane{vec({1, 0, 0}), vec({0, 1, 0})};
    const AffineSubspace L(vec({0, 0, 0}), plane);
    CHECK(approx_equal(orthogonal_complement_projection(L, vec({1, 1, 5})), vec({0, 0, 5})));
}

TEST_CASE("affine hull of points")
{
    const std::vector<Vec> two{vec({0, 0}), vec({1, 0})};
    const AffineSubspace h = affine_hull_of_points(two);
    CHECK(h.dim() == 1);
    CHECK(h.contains(vec({-7, 0}), 1e-12));
    CHECK_FALSE(h.contains(vec({0, 1}), 1e-6));

    const std::vector<Vec> one{vec({1, 1})};
    const AffineSubspace p = affine_hull_of_points(one);
    CHECK(p.dim() == 0);
    CHECK(approx_equal(p.project(vec({4, -2})), vec({1, 1})));

    const std::vector<Vec> three{vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 1, 0})};
    const AffineSubspace q = affine_hull_of_points(three);
    CHECK(q.dim() == 2);
    CHECK(approx_equal(q.project(vec({3, 4, 5})), vec({3, 4, 0})));

    CHECK_THROWS_AS(affine_hull_of_points(std::vector<Vec>{}), InvalidArgument);
}

TEST_CASE("from_equations builds the solution set")
{
    Eigen::MatrixXd A(1, 3);
    A << 0, 1, -1;
    const AffineSubspace L = AffineSubspace::from_equations(A, vec({0}));
    CHECK(L.dim() == 2);
    CHECK(L.contains(vec({5, 2, 2}), 1e-12));
    CHECK_FALSE(L.contains(vec({0, 1, 0}), 1e-6));

    Eigen::MatrixXd B(2, 2);
    B << 1, 1, 2, 2;
    CHECK_THROWS_AS(AffineSubspace::from_equations(B, vec({1, 3})), InvalidArgument);
}

TEST_CASE("basis is orthonormal and dependent directions are dropped")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Vec a = random_vec(rng, 4);
        const Vec b = random_vec(rng, 4);
        const std::vector<Vec> dirs{a, b, a + 2.0 * b, random_vec(rng, 4)};
        const AffineSubspace L(random_vec(rng, 4), dirs);
        CHECK(L.dim() == 3);
        for (std::size_t i = 0; i < L.basis().size(); ++i) {
            CHECK(std::abs(L.basis()[i].norm() - 1.0) <= 1e-12);
            for (std::size_t j = i + 1; j < L.basis().size(); ++j)
                CHECK(std::abs(L.basis()[i].dot(L.basis()[j])) <= 1e-12);
        }
    }
}

TEST_CASE("projection properties on random subspaces")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index n = 2 + trial % 4;
        const Eigen::Index k = trial % n;
        std::vector<Vec> dirs;
        for (Eigen::Index i = 0; i < k; ++i) dirs.push_back(random_vec(rng, n));
        const AffineSubspace L(random_vec(rng, n), dirs);
        const Vec x = random_vec(rng, n);
        const Vec z = random_vec(rng, n);
        const Vec px = L.project(x);

        // idempotence
        CHECK(approx_equal(L.project(px), px, 1e-12));
        // residual orthogonal to the directions
        for (const Vec& b : L.basis()) CHECK(std::abs(b.dot(x - px)) <= 1e-10 * std::max(1.0, x.norm()));

        // Pythagoras with w in L
        const Vec w = L.project(random_vec(rng, n));
        const double lhs = (x - w).squaredNorm();
        const double rhs = (px - w).squaredNorm() + (x - px).squaredNorm();
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, lhs));

        // distance split: ||x - z||^2 = ||Px - Pz||^2 + ||(x - Px) - (z - Pz)||^2
        const Vec pz = L.project(z);
        const double split = (px - pz).squaredNorm() + ((x - px) - (z - pz)).squaredNorm();
        CHECK(std::abs((x - z).squaredNorm() - split) <= 1e-10 * std::max(1.0, split));
    }
}

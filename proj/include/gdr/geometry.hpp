#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "gdr/error.hpp"

namespace gdr {

/// A point of the Euclidean space R^n.
using Vec = Eigen::VectorXd;

/// Drop tolerance used by Gram-Schmidt when building orthonormal bases.
inline constexpr double kRankTol = 1e-10;

/// Absolute comparison tolerance, scaled by max(1, magnitudes).
inline constexpr double kCompareTol = 1e-12;

void require_same_dim(const Vec& x, const Vec& y, const char* where);
void require_dim(const Vec& x, Eigen::Index n, const char* where);
void require_finite(const Vec& x, const char* where);

/// Standard dot product.
double inner(const Vec& x, const Vec& y);

/// Builds a vector from a brace list, e.g. vec({1.0, 2.0}).
Vec vec(std::initializer_list<double> coords);

/// Standard basis vector e_k of R^n.
Vec unit_vector(Eigen::Index n, Eigen::Index k);

/// Scaled closeness test |a-b| <= tol * max(1, |a|, |b|).
bool approx_equal(double a, double b, double tol = kCompareTol);
bool approx_equal(const Vec& a, const Vec& b, double tol = kCompareTol);

/// An affine subspace stored as anchor + span(basis), with an orthonormal basis.
class AffineSubspace {
public:
    /// Orthonormalizes `directions` (dropping dependent ones) and anchors the span at `anchor`.
    AffineSubspace(Vec anchor, std::span<const Vec> directions);

    /// The zero-dimensional subspace {anchor}.
    static AffineSubspace point(Vec anchor);
    /// The whole space R^n.
    static AffineSubspace whole_space(Eigen::Index n);
    /// Solution set of A x = b. Throws InvalidArgument when the system is inconsistent.
    static AffineSubspace from_equations(const Eigen::MatrixXd& A, const Vec& b);

    const Vec& anchor() const { return anchor_; }
    const std::vector<Vec>& basis() const { return basis_; }
    Eigen::Index dim_ambient() const { return anchor_.size(); }
    Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
    bool is_whole_space() const { return dim() == dim_ambient(); }

    Vec project(const Vec& x) const;
    /// Component of x - anchor orthogonal to the subspace directions.
    Vec complement_component(const Vec& x) const;
    double distance(const Vec& x) const;
    bool contains(const Vec& x, double tol) const;

private:
    AffineSubspace(Vec anchor, std::vector<Vec> orthonormal, int /*tag*/)
        : anchor_(std::move(anchor)), basis_(std::move(orthonormal)) {}

    Vec anchor_;
    std::vector<Vec> basis_;
};

/// Orthonormalizes `vectors` by modified Gram-Schmidt, dropping those whose residual norm
/// falls below kRankTol times their original norm (or is absolutely below kRankTol).
std::vector<Vec> gram_schmidt(std::span<const Vec> vectors);

Vec project_affine(const AffineSubspace& L, const Vec& x);
Vec orthogonal_complement_projection(const AffineSubspace& L, const Vec& x);

/// Smallest affine subspace containing every point. Throws InvalidArgument on an empty list.
AffineSubspace affine_hull_of_points(std::span<const Vec> points);

}  // namespace gdr

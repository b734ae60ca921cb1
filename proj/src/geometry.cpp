#include "gdr/geometry.hpp"

#include <cmath>
#include <string>

namespace gdr {

void require_same_dim(const Vec& x, const Vec& y, const char* where)
{
    if (x.size() != y.size()) {
        throw DimensionMismatch(static_cast<std::size_t>(x.size()),
                                static_cast<std::size_t>(y.size()), where);
    }
}

void require_dim(const Vec& x, Eigen::Index n, const char* where)
{
    if (x.size() != n) {
        throw DimensionMismatch(static_cast<std::size_t>(n), static_cast<std::size_t>(x.size()),
                                where);
    }
}

void require_finite(const Vec& x, const char* where)
{
    if (!x.allFinite()) {
        throw InvalidArgument(std::string(where) + ": non-finite coordinate");
    }
}

double inner(const Vec& x, const Vec& y)
{
    require_same_dim(x, y, "inner");
    return x.dot(y);
}

Vec vec(std::initializer_list<double> coords)
{
    Vec v(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index k = 0;
    for (double c : coords) v[k++] = c;
    return v;
}

Vec unit_vector(Eigen::Index n, Eigen::Index k)
{
    Vec e = Vec::Zero(n);
    e[k] = 1.0;
    return e;
}

bool approx_equal(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

bool approx_equal(const Vec& a, const Vec& b, double tol)
{
    if (a.size() != b.size()) return false;
    const double scale = std::max({1.0, a.lpNorm<Eigen::Infinity>(), b.lpNorm<Eigen::Infinity>()});
    return (a - b).lpNorm<Eigen::Infinity>() <= tol * scale;
}

std::vector<Vec> gram_schmidt(std::span<const Vec> vectors)
{
    std::vector<Vec> out;
    for (const Vec& v : vectors) {
        const double original = v.norm();
        Vec r = v;
        // two passes keep orthogonality at the 1e-15 level even for nearly dependent input
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vec& q : out) r -= q.dot(r) * q;
        }
        const double rn = r.norm();
        if (rn <= kRankTol * std::max(1.0, original)) continue;
        out.push_back(r / rn);
    }
    return out;
}

AffineSubspace::AffineSubspace(Vec anchor, std::span<const Vec> directions)
    : anchor_(std::move(anchor))
{
    require_finite(anchor_, "AffineSubspace");
    for (const Vec& d : directions) {
        require_dim(d, anchor_.size(), "AffineSubspace");
        require_finite(d, "AffineSubspace");
    }
    basis_ = gram_schmidt(directions);
}

AffineSubspace AffineSubspace::point(Vec anchor)
{
    return AffineSubspace(std::move(anchor), std::span<const Vec>{});
}

AffineSubspace AffineSubspace::whole_space(Eigen::Index n)
{
    std::vector<Vec> basis;
    basis.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) basis.push_back(unit_vector(n, k));
    return AffineSubspace(Vec::Zero(n), std::move(basis), 0);
}

AffineSubspace AffineSubspace::from_equations(const Eigen::MatrixXd& A, const Vec& b)
{
    if (A.rows() != b.size()) {
        throw DimensionMismatch(static_cast<std::size_t>(A.rows()),
                                static_cast<std::size_t>(b.size()), "from_equations");
    }
    const Eigen::Index n = A.cols();
    if (A.rows() == 0) return whole_space(n);

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    cod.setThreshold(kRankTol);
    Vec particular = cod.solve(b);
    const double scale = std::max(1.0, b.lpNorm<Eigen::Infinity>());
    if ((A * particular - b).lpNorm<Eigen::Infinity>() > 1e-9 * scale) {
        throw InvalidArgument("from_equations: inconsistent linear system");
    }
    // kernel: directions orthogonal to every row of A
    std::vector<Vec> rows;
    for (Eigen::Index i = 0; i < A.rows(); ++i) rows.emplace_back(A.row(i).transpose());
    const std::vector<Vec> row_basis = gram_schmidt(rows);
    std::vector<Vec> kernel_candidates;
    for (Eigen::Index k = 0; k < n; ++k) {
        Vec e = unit_vector(n, k);
        for (const Vec& q : row_basis) e -= q.dot(e) * q;
        kernel_candidates.push_back(std::move(e));
    }
    return AffineSubspace(std::move(particular), kernel_candidates);
}

Vec AffineSubspace::project(const Vec& x) const
{
    require_dim(x, anchor_.size(), "project_affine");
    const Vec d = x - anchor_;
    Vec out = anchor_;
    for (const Vec& b : basis_) out += b.dot(d) * b;
    return out;
}

Vec AffineSubspace::complement_component(const Vec& x) const
{
    require_dim(x, anchor_.size(), "orthogonal_complement_projection");
    Vec d = x - anchor_;
    Vec out = d;
    for (const Vec& b : basis_) out -= b.dot(d) * b;
    return out;
}

double AffineSubspace::distance(const Vec& x) const { return complement_component(x).norm(); }

bool AffineSubspace::contains(const Vec& x, double tol) const { return distance(x) <= tol; }

Vec project_affine(const AffineSubspace& L, const Vec& x) { return L.project(x); }

Vec orthogonal_complement_projection(const AffineSubspace& L, const Vec& x)
{
    return L.complement_component(x);
}

AffineSubspace affine_hull_of_points(std::span<const Vec> points)
{
    if (points.empty()) throw InvalidArgument("affine_hull_of_points: empty list");
    const Vec& anchor = points.front();
    std::vector<Vec> diffs;
    diffs.reserve(points.size());
    for (std::size_t i = 1; i < points.size(); ++i) {
        require_same_dim(anchor, points[i], "affine_hull_of_points");
        diffs.push_back(points[i] - anchor);
    }
    return AffineSubspace(anchor, diffs);
}

}  // namespace gdr

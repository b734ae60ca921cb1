#include "gdr/sets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace gdr {

namespace {

constexpr std::size_t kMaxPolyhedronFaces = 20;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Vec unit_or_throw(const Vec& v, const char* where)
{
    require_finite(v, where);
    const double nv = v.norm();
    if (nv <= kRankTol) throw InvalidArgument(std::string(where) + ": zero normal");
    return v / nv;
}

Vec project_halfspace(const Halfspace& h, const Vec& x)
{
    const double excess = h.normal.dot(x) - h.offset;
    if (excess <= 0.0) return x;
    return x - excess * h.normal;
}

// Least-distance point on the face {a_i.z = b_i, i in active}; false when the active normals are
// linearly dependent (such faces are reached through an independent subset anyway).
bool project_on_face(const std::vector<Halfspace>& faces, const std::vector<int>& active,
                     const Vec& x, Vec& out)
{
    const auto k = static_cast<Eigen::Index>(active.size());
    if (k == 0) {
        out = x;
        return true;
    }
    const Eigen::Index n = x.size();
    Eigen::MatrixXd N(k, n);
    Vec rhs(k);
    for (Eigen::Index r = 0; r < k; ++r) {
        const Halfspace& h = faces[static_cast<std::size_t>(active[static_cast<std::size_t>(r)])];
        N.row(r) = h.normal.transpose();
        rhs[r] = h.normal.dot(x) - h.offset;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(N * N.transpose());
    lu.setThreshold(kRankTol);
    if (lu.rank() < k) return false;
    out = x - N.transpose() * lu.solve(rhs);
    return true;
}

bool feasible_in_polyhedron(const std::vector<Halfspace>& faces, const Vec& z)
{
    const double scale = std::max(1.0, z.lpNorm<Eigen::Infinity>());
    for (const Halfspace& h : faces) {
        if (h.normal.dot(z) - h.offset > 1e-10 * std::max(scale, std::abs(h.offset))) return false;
    }
    return true;
}

// Exact projection by enumerating active sets of size <= min(m, n).
bool project_polyhedron(const std::vector<Halfspace>& faces, const Vec& x, Vec& best)
{
    const int m = static_cast<int>(faces.size());
    const int kmax = std::min<int>(m, static_cast<int>(x.size()));
    double best_d = std::numeric_limits<double>::infinity();
    bool found = false;
    std::vector<int> active;
    Vec z;
    for (int k = 0; k <= kmax; ++k) {
        active.resize(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) active[static_cast<std::size_t>(i)] = i;
        while (true) {
            if (project_on_face(faces, active, x, z) && feasible_in_polyhedron(faces, z)) {
                const double d = (x - z).norm();
                if (d < best_d) {
                    best_d = d;
                    best = z;
                    found = true;
                }
            }
            // next combination in lexicographic order
            int i = k - 1;
            while (i >= 0 && active[static_cast<std::size_t>(i)] == m - k + i) --i;
            if (i < 0) break;
            ++active[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                active[static_cast<std::size_t>(j)] = active[static_cast<std::size_t>(j - 1)] + 1;
        }
        // the unconstrained candidate is x itself; nothing can beat distance 0
        if (found && best_d == 0.0) break;
    }
    return found;
}

Vec project_epi_abs(const EpiAbs& e, const Vec& x)
{
    const double u = x[e.arg];
    const double r = x[e.value];
    Vec out = x;
    if (std::abs(u) <= r) return out;
    if (r <= -std::abs(u)) {
        // polar cone maps to the apex
        out[e.arg] = 0.0;
        out[e.value] = 0.0;
        return out;
    }
    const double t = 0.5 * (std::abs(u) + r);
    out[e.arg] = u > 0.0 ? t : -t;
    out[e.value] = t;
    return out;
}

std::vector<Vec> complement_basis(const Vec& normal)
{
    std::vector<Vec> candidates;
    candidates.push_back(normal);
    for (Eigen::Index k = 0; k < normal.size(); ++k) candidates.push_back(unit_vector(normal.size(), k));
    std::vector<Vec> q = gram_schmidt(candidates);
    q.erase(q.begin());
    return q;
}

// Adds p to pts when it raises the dimension of their affine hull.
void add_if_new_direction(std::vector<Vec>& pts, const Vec& p)
{
    if (pts.empty()) {
        pts.push_back(p);
        return;
    }
    std::vector<Vec> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
    const std::size_t before = gram_schmidt(diffs).size();
    diffs.push_back(p - pts[0]);
    if (gram_schmidt(diffs).size() > before) pts.push_back(p);
}

}  // namespace

const char* to_string(SetKind kind)
{
    switch (kind) {
    case SetKind::Affine: return "affine";
    case SetKind::Hyperplane: return "hyperplane";
    case SetKind::Halfspace: return "halfspace";
    case SetKind::Box: return "box";
    case SetKind::Ball: return "ball";
    case SetKind::Sphere: return "sphere";
    case SetKind::FinitePoints: return "points";
    case SetKind::Polyhedron: return "polyhedron";
    case SetKind::EpiAbs: return "epi_abs";
    }
    return "unknown";
}

ProjectableSet ProjectableSet::affine(AffineSubspace L)
{
    const Eigen::Index n = L.dim_ambient();
    return ProjectableSet(AffineSet{std::move(L)}, n);
}

ProjectableSet ProjectableSet::hyperplane(const Vec& normal, double offset)
{
    const double scale = normal.norm();
    if (!std::isfinite(offset)) throw InvalidArgument("hyperplane: non-finite offset");
    Vec n = unit_or_throw(normal, "hyperplane");
    return ProjectableSet(Hyperplane{n, offset / scale}, n.size());
}

ProjectableSet ProjectableSet::halfspace(const Vec& normal, double offset)
{
    const double scale = normal.norm();
    if (!std::isfinite(offset)) throw InvalidArgument("halfspace: non-finite offset");
    Vec n = unit_or_throw(normal, "halfspace");
    return ProjectableSet(Halfspace{n, offset / scale}, n.size());
}

ProjectableSet ProjectableSet::box(Vec lower, Vec upper)
{
    require_same_dim(lower, upper, "box");
    for (Eigen::Index k = 0; k < lower.size(); ++k) {
        if (std::isnan(lower[k]) || std::isnan(upper[k]) || lower[k] > upper[k] ||
            lower[k] == std::numeric_limits<double>::infinity() ||
            upper[k] == -std::numeric_limits<double>::infinity()) {
            throw InvalidArgument("box: need lower <= upper componentwise");
        }
    }
    const Eigen::Index n = lower.size();
    return ProjectableSet(Box{std::move(lower), std::move(upper)}, n);
}

ProjectableSet ProjectableSet::ball(Vec center, double radius)
{
    require_finite(center, "ball");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("ball: radius must be > 0");
    const Eigen::Index n = center.size();
    return ProjectableSet(Ball{std::move(center), radius}, n);
}

ProjectableSet ProjectableSet::sphere(Vec center, double radius)
{
    require_finite(center, "sphere");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw InvalidArgument("sphere: radius must be > 0");
    const Eigen::Index n = center.size();
    return ProjectableSet(Sphere{std::move(center), radius}, n);
}

ProjectableSet ProjectableSet::finite_points(std::vector<Vec> points)
{
    if (points.empty()) throw InvalidArgument("finite_points: empty list");
    for (const Vec& p : points) {
        require_dim(p, points.front().size(), "finite_points");
        require_finite(p, "finite_points");
    }
    const Eigen::Index n = points.front().size();
    return ProjectableSet(FinitePoints{std::move(points)}, n);
}

ProjectableSet ProjectableSet::polyhedron(std::vector<Halfspace> faces)
{
    if (faces.empty()) throw InvalidArgument("polyhedron: no faces");
    if (faces.size() > kMaxPolyhedronFaces)
        throw UnsupportedSize("polyhedron: at most 20 faces are supported");
    const Eigen::Index n = faces.front().normal.size();
    for (Halfspace& h : faces) {
        require_dim(h.normal, n, "polyhedron");
        if (!std::isfinite(h.offset)) throw InvalidArgument("polyhedron: non-finite offset");
        const double scale = h.normal.norm();
        h.normal = unit_or_throw(h.normal, "polyhedron");
        h.offset /= scale;
    }
    Vec probe;
    if (!project_polyhedron(faces, Vec::Zero(n), probe))
        throw InvalidArgument("polyhedron: empty intersection");
    return ProjectableSet(Polyhedron{std::move(faces)}, n);
}

ProjectableSet ProjectableSet::epi_abs(Eigen::Index dim, Eigen::Index arg, Eigen::Index value)
{
    if (dim < 2 || arg < 0 || value < 0 || arg >= dim || value >= dim || arg == value)
        throw InvalidArgument("epi_abs: need two distinct coordinates of a space of dim >= 2");
    return ProjectableSet(EpiAbs{dim, arg, value}, dim);
}

Vec ProjectableSet::project(const Vec& x) const
{
    require_dim(x, dim_, "project");
    require_finite(x, "project");
    return std::visit(
        Overloaded{
            [&](const AffineSet& s) { return s.subspace.project(x); },
            [&](const Hyperplane& h) -> Vec {
                return x - (h.normal.dot(x) - h.offset) * h.normal;
            },
            [&](const Halfspace& h) { return project_halfspace(h, x); },
            [&](const Box& b) -> Vec { return x.cwiseMax(b.lower).cwiseMin(b.upper); },
            [&](const Ball& b) -> Vec {
                const Vec d = x - b.center;
                const double nd = d.norm();
                if (nd <= b.radius) return x;
                return b.center + (b.radius / nd) * d;
            },
            [&](const Sphere& s) -> Vec {
                const Vec d = x - s.center;
                const double nd = d.norm();
                if (nd == 0.0) return s.center + s.radius * unit_vector(dim_, 0);
                return s.center + (s.radius / nd) * d;
            },
            [&](const FinitePoints& f) -> Vec {
                std::size_t best = 0;
                double best_d = (x - f.points[0]).squaredNorm();
                for (std::size_t i = 1; i < f.points.size(); ++i) {
                    const double d = (x - f.points[i]).squaredNorm();
                    if (d < best_d) {
                        best_d = d;
                        best = i;
                    }
                }
                return f.points[best];
            },
            [&](const Polyhedron& p) -> Vec {
                Vec out;
                if (!project_polyhedron(p.faces, x, out))
                    throw NumericAbort("polyhedron projection: no feasible face candidate");
                return out;
            },
            [&](const EpiAbs& e) { return project_epi_abs(e, x); },
        },
        *data_);
}

double ProjectableSet::distance(const Vec& x) const { return (x - project(x)).norm(); }

bool ProjectableSet::contains(const Vec& x, double tol) const
{
    if (tol < 0.0) throw InvalidArgument("contains: negative tolerance");
    require_dim(x, dim_, "contains");
    if (const auto* p = std::get_if<Polyhedron>(data_.get())) {
        double worst = -std::numeric_limits<double>::infinity();
        for (const Halfspace& h : p->faces) worst = std::max(worst, h.normal.dot(x) - h.offset);
        if (worst <= 0.0) return true;
        if (worst > tol) return false;
    }
    if (const auto* h = std::get_if<Halfspace>(data_.get())) return h->normal.dot(x) - h->offset <= tol;
    return distance(x) <= tol;
}

SetKind ProjectableSet::kind() const { return static_cast<SetKind>(data_->index()); }

bool ProjectableSet::is_convex() const
{
    const SetKind k = kind();
    if (k == SetKind::Sphere) return false;
    if (k == SetKind::FinitePoints) return std::get<FinitePoints>(*data_).points.size() == 1;
    return true;
}

bool ProjectableSet::is_affine() const
{
    return kind() == SetKind::Affine || kind() == SetKind::Hyperplane;
}

std::vector<Vec> ProjectableSet::spanning_points() const
{
    const Eigen::Index n = dim_;
    return std::visit(
        Overloaded{
            [&](const AffineSet& s) {
                std::vector<Vec> pts{s.subspace.anchor()};
                for (const Vec& b : s.subspace.basis()) pts.push_back(s.subspace.anchor() + b);
                return pts;
            },
            [&](const Hyperplane& h) {
                const Vec p0 = h.offset * h.normal;
                std::vector<Vec> pts{p0};
                for (const Vec& v : complement_basis(h.normal)) pts.push_back(p0 + v);
                return pts;
            },
            [&](const Halfspace& h) {
                const Vec p0 = h.offset * h.normal;
                std::vector<Vec> pts{p0, p0 - h.normal};
                for (const Vec& v : complement_basis(h.normal)) pts.push_back(p0 + v);
                return pts;
            },
            [&](const Box& b) {
                const Vec base = Vec::Zero(n).cwiseMax(b.lower).cwiseMin(b.upper);
                std::vector<Vec> pts{base};
                for (Eigen::Index k = 0; k < n; ++k) {
                    if (b.lower[k] == b.upper[k]) continue;
                    Vec p = base;
                    p[k] = base[k] < b.upper[k] ? std::min(b.upper[k], base[k] + 1.0)
                                                : std::max(b.lower[k], base[k] - 1.0);
                    pts.push_back(p);
                }
                return pts;
            },
            [&](const Ball& b) {
                std::vector<Vec> pts{b.center};
                for (Eigen::Index k = 0; k < n; ++k)
                    pts.push_back(b.center + b.radius * unit_vector(n, k));
                return pts;
            },
            [&](const Sphere& s) {
                std::vector<Vec> pts;
                for (Eigen::Index k = 0; k < n; ++k) {
                    pts.push_back(s.center + s.radius * unit_vector(n, k));
                    pts.push_back(s.center - s.radius * unit_vector(n, k));
                }
                return pts;
            },
            [&](const FinitePoints& f) { return f.points; },
            [&](const Polyhedron&) {
                // Projections of axis probes around feasible points; two rounds reach every
                // direction of aff(P) for the nondegenerate and flat cases alike.
                std::vector<Vec> pts{project(Vec::Zero(n))};
                for (int round = 0; round < 2; ++round) {
                    const std::vector<Vec> centers = pts;
                    for (const Vec& c : centers) {
                        for (Eigen::Index k = 0; k < n; ++k) {
                            for (double sgn : {1.0, -1.0})
                                add_if_new_direction(pts, project(c + sgn * unit_vector(n, k)));
                        }
                    }
                }
                return pts;
            },
            [&](const EpiAbs& e) {
                std::vector<Vec> pts{Vec::Zero(n)};
                Vec up = unit_vector(n, e.value);
                pts.push_back(up);
                pts.push_back(up + unit_vector(n, e.arg));
                for (Eigen::Index k = 0; k < n; ++k) {
                    if (k != e.arg && k != e.value) pts.push_back(unit_vector(n, k));
                }
                return pts;
            },
        },
        *data_);
}

Vec project(const ProjectableSet& C, const Vec& x) { return C.project(x); }
double distance(const ProjectableSet& C, const Vec& x) { return C.distance(x); }
bool contains(const ProjectableSet& C, const Vec& x, double tol) { return C.contains(x, tol); }

RelaxedProjector::RelaxedProjector(ProjectableSet set, double lambda)
    : set_(std::move(set)), lambda_(lambda)
{
    if (!(lambda > 0.0 && lambda <= 2.0))
        throw InvalidArgument("relaxed projector: lambda must lie in ]0, 2]");
}

RelaxedProjector RelaxedProjector::identity(ProjectableSet set)
{
    return RelaxedProjector(std::move(set), 0.0, 0);
}

Vec RelaxedProjector::apply(const Vec& x) const
{
    if (lambda_ == 0.0) {
        require_dim(x, set_.dim(), "relaxed_project");
        return x;
    }
    return relaxed_project(set_, lambda_, x);
}

Vec relaxed_project(const RelaxedProjector& R, const Vec& x) { return R.apply(x); }

Vec relaxed_project(const ProjectableSet& C, double lambda, const Vec& x)
{
    const Vec p = C.project(x);
    if (lambda == 1.0) return p;
    return (1.0 - lambda) * x + lambda * p;
}

// ---------------------------------------------------------------------------------------------
// brute-force oracle

namespace {

using Index3 = std::array<long long, 3>;

struct Candidate {
    Index3 idx;
    double dist;
};

class TubeSearch {
public:
    TubeSearch(const ProjectableSet& C, const Vec& x, double tube)
        : C_(C), x_(x), tube_(tube) {}

    bool inside(const Vec& u, double t) const { return C_.contains(x_ + t * u, tube_); }

    // First t in [lo, hi] at which the ray x + t u enters the tube, or +inf when it does not
    // within that range. `lo` is moved back until it is outside the tube.
    double first_hit(const Vec& u, double lo, double hi) const
    {
        for (int k = 0; k < 64 && lo > 0.0 && inside(u, lo); ++k) lo = k < 60 ? lo * 0.5 : 0.0;
        if (inside(u, lo)) return lo;
        const double dt = 0.5 * tube_;
        double a = lo;
        double b = lo;
        bool hit = false;
        while (b < hi) {
            b = std::min(hi, a + dt);
            if (inside(u, b)) {
                hit = true;
                break;
            }
            a = b;
        }
        if (!hit) return std::numeric_limits<double>::infinity();
        for (int k = 0; k < 60 && b - a > 1e-15 * std::max(1.0, b); ++k) {
            const double mid = 0.5 * (a + b);
            (inside(u, mid) ? b : a) = mid;
        }
        return b;
    }

private:
    const ProjectableSet& C_;
    const Vec& x_;
    double tube_;
};

// Unit directions within angle `theta` of `axis`, sampled on a polar grid around it.
std::vector<Vec> cone_directions(const Vec& axis, double theta, int n_polar, int n_azimuth)
{
    const Eigen::Index n = axis.size();
    std::vector<Vec> dirs{axis};
    if (n == 1) {
        if (theta >= std::numbers::pi / 2) dirs.push_back(-axis);
        return dirs;
    }
    std::vector<Vec> seeds{axis};
    for (Eigen::Index k = 0; k < n; ++k) seeds.push_back(unit_vector(n, k));
    std::vector<Vec> frame = gram_schmidt(seeds);
    if (n == 2) {
        const Vec& e1 = frame[1];
        for (int i = 1; i <= n_polar; ++i) {
            const double b = theta * i / n_polar;
            dirs.push_back(std::cos(b) * axis + std::sin(b) * e1);
            dirs.push_back(std::cos(b) * axis - std::sin(b) * e1);
        }
        return dirs;
    }
    const Vec& e1 = frame[1];
    const Vec& e2 = frame[2];
    for (int i = 1; i <= n_polar; ++i) {
        const double b = theta * i / n_polar;
        for (int j = 0; j < n_azimuth; ++j) {
            const double psi = 2.0 * std::numbers::pi * j / n_azimuth;
            dirs.push_back(std::cos(b) * axis +
                           std::sin(b) * (std::cos(psi) * e1 + std::sin(psi) * e2));
        }
    }
    return dirs;
}

}  // namespace

Vec brute_force_project(const ProjectableSet& C, const Vec& x, const GridBounds& bounds,
                        double step)
{
    const Eigen::Index n = x.size();
    require_dim(x, C.dim(), "brute_force_project");
    require_dim(bounds.lower, n, "brute_force_project");
    require_dim(bounds.upper, n, "brute_force_project");
    if (n > 3) throw UnsupportedSize("brute_force_project: dimension above 3");
    if (!(step > 0.0)) throw InvalidArgument("brute_force_project: step must be > 0");
    if (!bounds.lower.allFinite() || !bounds.upper.allFinite() ||
        (bounds.upper - bounds.lower).minCoeff() <= 0.0)
        throw InvalidArgument("brute_force_project: bounds must be finite and nondegenerate");

    // x is its own nearest grid-tube point
    if (C.contains(x, step)) return x;

    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double extent = (bounds.upper - bounds.lower).maxCoeff();
    double h = step;
    while (extent / h > 32.0) h *= 2.0;

    auto point_at = [&](const Index3& idx, double spacing) {
        Vec c(n);
        for (Eigen::Index k = 0; k < n; ++k)
            c[k] = bounds.lower[k] + static_cast<double>(idx[static_cast<std::size_t>(k)]) * spacing;
        return c;
    };
    auto in_bounds = [&](const Vec& c) {
        return (c.array() >= bounds.lower.array() - 1e-12).all() &&
               (c.array() <= bounds.upper.array() + 1e-12).all();
    };

    // coarse level: full grid
    std::vector<Index3> level;
    {
        Index3 count{0, 0, 0};
        for (Eigen::Index k = 0; k < n; ++k)
            count[static_cast<std::size_t>(k)] =
                static_cast<long long>(std::ceil((bounds.upper[k] - bounds.lower[k]) / h));
        for (long long i = 0; i <= count[0]; ++i)
            for (long long j = 0; j <= count[1]; ++j)
                for (long long l = 0; l <= count[2]; ++l) level.push_back({i, j, l});
    }

    constexpr std::size_t kKeep = 64;
    Vec best_point;
    while (true) {
        const bool finest = h <= step;
        const double tube = finest ? step : step + 0.5 * sqrt_n * h;
        std::vector<Candidate> feasible;
        for (const Index3& idx : level) {
            const Vec c = point_at(idx, h);
            if (!in_bounds(c) || !C.contains(c, tube)) continue;
            feasible.push_back({idx, (c - x).norm()});
        }
        if (feasible.empty()) {
            if (best_point.size() == 0)
                throw InvalidArgument("brute_force_project: no feasible grid point");
            break;
        }
        std::sort(feasible.begin(), feasible.end(), [](const Candidate& a, const Candidate& b) {
            return a.dist < b.dist || (a.dist == b.dist && a.idx < b.idx);
        });
        best_point = point_at(feasible.front().idx, h);
        if (finest) break;

        const double slack = 2.0 * sqrt_n * h + step;
        std::map<Index3, bool> next;
        for (std::size_t c = 0; c < feasible.size() && c < kKeep; ++c) {
            if (feasible[c].dist > feasible.front().dist + slack) break;
            const Index3& idx = feasible[c].idx;
            for (long long di = -2; di <= 2; ++di)
                for (long long dj = (n > 1 ? -2 : 0); dj <= (n > 1 ? 2 : 0); ++dj)
                    for (long long dl = (n > 2 ? -2 : 0); dl <= (n > 2 ? 2 : 0); ++dl) {
                        Index3 child{2 * idx[0] + di, n > 1 ? 2 * idx[1] + dj : 0,
                                     n > 2 ? 2 * idx[2] + dl : 0};
                        if (child[0] < 0 || child[1] < 0 || child[2] < 0) continue;
                        next.emplace(child, true);
                    }
        }
        level.clear();
        for (const auto& kv : next) level.push_back(kv.first);
        h *= 0.5;
    }

    // directional polish through membership queries only
    const double dg = (best_point - x).norm();
    TubeSearch search(C, x, step);
    Vec axis = (best_point - x) / dg;
    const double lo = std::max(0.0, dg - 3.0 * step);
    double best_t = search.first_hit(axis, lo, dg + step);
    if (!std::isfinite(best_t)) return best_point;

    const double lens = std::sqrt(6.0 * dg * step) + 3.0 * step;
    double theta = lens >= dg ? std::numbers::pi : std::min(std::numbers::pi, 1.5 * std::asin(lens / dg));
    bool first = true;
    int rounds = 0;
    while (theta * dg > 1e-4 * step && rounds++ < 400) {
        const int n_polar = first ? 60 : 8;
        const int n_azimuth = first ? 32 : 16;
        bool moved = false;
        for (const Vec& u : cone_directions(axis, theta, n_polar, n_azimuth)) {
            const double t = search.first_hit(u, lo, best_t);
            if (t < best_t) {
                best_t = t;
                axis = u;
                moved = true;
            }
        }
        // recenter and keep the radius while the minimum keeps moving (flat valleys along edges)
        if (first) theta = 2.5 * theta / n_polar;
        else if (!moved) theta *= 0.5;
        first = false;
    }
    return x + (best_t + step) * axis;
}

IntersectionProjection project_onto_intersection(std::span<const ProjectableSet> sets, const Vec& x,
                                                 double tol, int max_iter)
{
    if (sets.empty()) throw InvalidArgument("project_onto_intersection: no sets");
    for (const ProjectableSet& s : sets) {
        if (!s.is_convex()) throw InvalidArgument("project_onto_intersection: nonconvex set");
        require_dim(x, s.dim(), "project_onto_intersection");
    }
    if (sets.size() == 1) return {sets[0].project(x), 0, true};

    std::vector<Vec> increments(sets.size(), Vec::Zero(x.size()));
    Vec cur = x;
    for (int it = 1; it <= max_iter; ++it) {
        const Vec start = cur;
        double change = 0.0;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const Vec y = cur + increments[i];
            const Vec p = sets[i].project(y);
            const Vec new_inc = y - p;
            change += (new_inc - increments[i]).squaredNorm();
            increments[i] = new_inc;
            cur = p;
        }
        if (!cur.allFinite()) throw NumericAbort("project_onto_intersection: non-finite iterate");
        const double scale = std::max(1.0, cur.norm());
        if ((cur - start).norm() <= tol * scale && std::sqrt(change) <= tol * scale)
            return {cur, it, true};
    }
    return {cur, max_iter, false};
}

}  // namespace gdr

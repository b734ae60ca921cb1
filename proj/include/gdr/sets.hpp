#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gdr/geometry.hpp"

namespace gdr {

/// Default tolerance of contains().
inline constexpr double kMembershipTol = 1e-9;

struct AffineSet {
    AffineSubspace subspace;
};

/// {x : <normal, x> = offset}, normal stored with unit length.
struct Hyperplane {
    Vec normal;
    double offset;
};

/// {x : <normal, x> <= offset}, normal stored with unit length.
struct Halfspace {
    Vec normal;
    double offset;
};

/// Componentwise bounds; entries may be -inf / +inf.
struct Box {
    Vec lower;
    Vec upper;
};

struct Ball {
    Vec center;
    double radius;
};

struct Sphere {
    Vec center;
    double radius;
};

struct FinitePoints {
    std::vector<Vec> points;
};

struct Polyhedron {
    std::vector<Halfspace> faces;
};

/// {x : |x[arg]| <= x[value]} in two coordinates, unconstrained in the others.
struct EpiAbs {
    Eigen::Index dim;
    Eigen::Index arg;
    Eigen::Index value;
};

enum class SetKind {
    Affine,
    Hyperplane,
    Halfspace,
    Box,
    Ball,
    Sphere,
    FinitePoints,
    Polyhedron,
    EpiAbs,
};

const char* to_string(SetKind kind);

/// A closed set with an exact projector. Values are immutable and cheap to copy.
class ProjectableSet {
public:
    using Variant = std::variant<AffineSet, Hyperplane, Halfspace, Box, Ball, Sphere, FinitePoints,
                                 Polyhedron, EpiAbs>;

    static ProjectableSet affine(AffineSubspace L);
    /// Normal is normalized; offset is rescaled accordingly.
    static ProjectableSet hyperplane(const Vec& normal, double offset);
    static ProjectableSet halfspace(const Vec& normal, double offset);
    static ProjectableSet box(Vec lower, Vec upper);
    static ProjectableSet ball(Vec center, double radius);
    static ProjectableSet sphere(Vec center, double radius);
    static ProjectableSet finite_points(std::vector<Vec> points);
    /// At most 20 faces; throws InvalidArgument when the intersection is empty.
    static ProjectableSet polyhedron(std::vector<Halfspace> faces);
    static ProjectableSet epi_abs(Eigen::Index dim, Eigen::Index arg, Eigen::Index value);

    Vec project(const Vec& x) const;
    double distance(const Vec& x) const;
    bool contains(const Vec& x, double tol = kMembershipTol) const;

    SetKind kind() const;
    bool is_convex() const;
    /// True for AffineSet and Hyperplane.
    bool is_affine() const;
    Eigen::Index dim() const { return dim_; }
    const Variant& variant() const { return *data_; }

    /// Finitely many points of the set whose affine hull is aff(C).
    std::vector<Vec> spanning_points() const;

private:
    ProjectableSet(Variant v, Eigen::Index dim)
        : data_(std::make_shared<const Variant>(std::move(v))), dim_(dim) {}

    std::shared_ptr<const Variant> data_;
    Eigen::Index dim_;
};

Vec project(const ProjectableSet& C, const Vec& x);
double distance(const ProjectableSet& C, const Vec& x);
bool contains(const ProjectableSet& C, const Vec& x, double tol = kMembershipTol);

/// P_C^lambda = (1 - lambda) Id + lambda P_C.
class RelaxedProjector {
public:
    /// lambda must lie in ]0, 2].
    RelaxedProjector(ProjectableSet set, double lambda);
    /// lambda = 0, i.e. the identity map.
    static RelaxedProjector identity(ProjectableSet set);

    const ProjectableSet& set() const { return set_; }
    double lambda() const { return lambda_; }
    Vec apply(const Vec& x) const;

private:
    RelaxedProjector(ProjectableSet set, double lambda, int /*tag*/)
        : set_(std::move(set)), lambda_(lambda) {}

    ProjectableSet set_;
    double lambda_;
};

Vec relaxed_project(const RelaxedProjector& R, const Vec& x);
/// (1 - lambda) x + lambda P_C x without building a RelaxedProjector.
Vec relaxed_project(const ProjectableSet& C, double lambda, const Vec& x);

/// Axis-aligned search region of the brute-force oracle.
struct GridBounds {
    Vec lower;
    Vec upper;
};

/// Testing oracle for project(): nearest point found only through contains(C, ., step).
/// A coarse-to-fine grid argmin over the region locates the nearest basin; a directional
/// search (first-hit distance of the step-tube along rays, by bisection) then polishes it.
/// Supports dimensions 1..3. Throws InvalidArgument when no grid point is feasible.
Vec brute_force_project(const ProjectableSet& C, const Vec& x, const GridBounds& bounds,
                        double step);

/// Result of projecting onto an intersection of convex sets.
struct IntersectionProjection {
    Vec point;
    int iterations;
    bool converged;
};

/// Dykstra's algorithm for P_{C_1 cap ... cap C_k} x with convex C_i. Stops when a full sweep
/// moves less than tol.
IntersectionProjection project_onto_intersection(std::span<const ProjectableSet> sets, const Vec& x,
                                                 double tol = 1e-12, int max_iter = 100000);

}  // namespace gdr

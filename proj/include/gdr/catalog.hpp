#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdr/cyclic.hpp"

namespace gdr {

/// Known regularity data of one schedule pair; missing entries are sampled.
struct AnalyticPair {
    std::optional<double> theta;
    std::optional<double> kappa;
};

struct AnalyticData {
    /// One entry per schedule pair.
    std::vector<AnalyticPair> pairs;
    /// Linear regularity modulus of the whole system {C_i}.
    std::optional<double> kappa;
    /// Per-step rate of d_C for the default operator, when known in closed form.
    std::optional<double> expected_rate;
    std::string notes;
};

struct ProblemInstance {
    std::string name;
    std::string description;
    Eigen::Index dim = 0;
    std::vector<ProjectableSet> sets;
    std::vector<PairSpec> pairs;
    /// The intersection C of all sets, when it has a closed form.
    std::optional<ProjectableSet> intersection_hint;
    /// A point of C used as the center of estimator balls.
    std::optional<Vec> reference_point;
    std::optional<Vec> default_x0;
    std::optional<AnalyticData> analytic;
    double estimation_delta = 1.0;

    CyclicSchedule schedule() const;
};

struct CatalogEntry {
    std::string name;
    std::string usage;
    std::string description;
};

std::vector<CatalogEntry> catalog_entries();

/// Builds a catalog instance from a name such as "two-lines-45deg", "two-lines:30",
/// "three-lines-epsilon:0.05" or "random-polyhedra:2,3,7". Throws InvalidArgument for unknown
/// names and bad parameters.
ProblemInstance make_instance(const std::string& spec);

// Individual builders, also used directly by tests.
ProblemInstance two_lines(double phi_degrees);
ProblemInstance parallel_lines_gap(double d);
ProblemInstance perpendicular_hyperplanes(Eigen::Index n);
ProblemInstance three_lines_epsilon(double eps);
ProblemInstance three_planes_epsilon(double eps);
ProblemInstance quadrant_pair();
ProblemInstance remark_str_lin();
ProblemInstance four_set_r3();
ProblemInstance epi_abs_axis();
ProblemInstance ball_vs_halfspace();
ProblemInstance random_polyhedra(int m, Eigen::Index n, std::uint64_t seed);

}  // namespace gdr

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdr/geometry.hpp"

namespace gdr {

/// Least-squares fit of ln d_n against n over a tail window.
struct RateFit {
    double rate = 0.0;
    double log_intercept = 0.0;
    double r_squared = 0.0;
    std::size_t window_begin = 0;
    std::size_t window_end = 0;
    bool per_cycle = false;
    /// Every entry sat below the distance floor (finite convergence); rate reported as 0.
    bool below_floor = false;
};

enum class AuditKind { QuasiFejer, QuasiCoercive, PerCycleContraction };

const char* to_string(AuditKind kind);

struct InequalityAudit {
    AuditKind kind = AuditKind::QuasiFejer;
    double worst_slack = 0.0;
    std::optional<std::size_t> violating_index;
    bool passed = false;
    /// QuasiFejer: gamma, beta. PerCycleContraction: rho. QuasiCoercive: estimated nu (0 when
    /// undefined).
    double gamma = 0.0;
    double beta = 0.0;
    double rho = 0.0;
    double nu_hat = 0.0;
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::string note;
};

/// Record of a cyclic run; every per-iterate vector has one entry per iterate.
struct TrajectoryReport {
    /// iterates[0] = x0, then one entry per operator application.
    std::vector<Vec> iterates;
    /// Operator index (0-based) producing each iterate; -1 for x0.
    std::vector<int> ops;
    /// Cycle number of each iterate (x0 belongs to cycle 0, the first cycle is 1).
    std::vector<int> cycles;
    /// Iterate indices at which a cycle ends (0 marks the start).
    std::vector<std::size_t> cycle_marks;
    /// set_distances[k][i] = d_{C_i}(iterates[k]).
    std::vector<std::vector<double>> set_distances;
    /// z_distances[k][j], filled only when requested.
    std::vector<std::vector<double>> z_distances;
    /// d_C(iterates[k]); empty without an intersection hint.
    std::vector<double> intersection_distances;
    /// residuals[k] = ||x_k - x_{k-1}||, residuals[0] = 0.
    std::vector<double> residuals;
    /// P_{C_1} x_k.
    std::vector<Vec> shadows;
    bool stopped_early = false;
    int cycles_completed = 0;

    std::optional<RateFit> fitted;
    std::vector<InequalityAudit> audits;

    const Vec& last() const { return iterates.back(); }
    bool has_intersection_distances() const { return !intersection_distances.empty(); }
};

}  // namespace gdr

#pragma once

#include <span>
#include <vector>

#include "gdr/sets.hpp"
#include "gdr/trajectory.hpp"

namespace gdr {

/// Entries at or below this value are excluded from log fits and contraction checks.
inline constexpr double kDistanceFloor = 1e-14;
/// Default relative audit tolerance.
inline constexpr double kAuditTol = 1e-9;

/// Least-squares line through (n, ln d_n) over the last `window_fraction` of the entries above
/// the distance floor; rate = exp(slope). When fewer than 5 usable entries remain because the
/// sequence dropped below the floor, the rate is 0 with below_floor set; otherwise too few
/// entries throw InvalidArgument.
RateFit fit_linear_rate(std::span<const double> d, double window_fraction = 0.5,
                        bool per_cycle = false);

/// d_C sampled at the cycle boundaries of a trajectory.
std::vector<double> per_cycle_distances(const TrajectoryReport& traj);

/// Slack gamma |x - a|^2 - |x+ - a|^2 - beta |x - x+|^2 per step, divided by max(1, |x - a|^2).
InequalityAudit audit_quasi_fejer(const TrajectoryReport& traj, const Vec& anchor, double gamma,
                                  double beta, double tol = kAuditTol);
/// Same with constants chosen by the operator that produced each step.
InequalityAudit audit_quasi_fejer(const TrajectoryReport& traj, const Vec& anchor,
                                  std::span<const double> gammas, std::span<const double> betas,
                                  double tol = kAuditTol);

/// P_target of the last iterate, the default anchor of Fejer audits.
Vec default_anchor(const TrajectoryReport& traj, const ProjectableSet& target);

/// nu_hat = min over steps of |x - x+| / d_target(x), skipping steps with d_target(x) < 1e-12.
/// Passes when nu_hat > 0, or trivially when every step was skipped.
InequalityAudit audit_quasi_coercive(const TrajectoryReport& traj, const ProjectableSet& target);

/// Per cycle, slack = (rho d_C(start) - d_C(end)) / d_C(start); cycles starting at the floor are
/// skipped. Needs recorded intersection distances.
InequalityAudit audit_per_cycle_contraction(const TrajectoryReport& traj, double rho,
                                            double tol = kAuditTol);

}  // namespace gdr

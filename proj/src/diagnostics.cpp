#include "gdr/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gdr {

const char* to_string(AuditKind kind)
{
    switch (kind) {
    case AuditKind::QuasiFejer: return "quasi_fejer";
    case AuditKind::QuasiCoercive: return "quasi_coercive";
    case AuditKind::PerCycleContraction: return "per_cycle_contraction";
    }
    return "unknown";
}

RateFit fit_linear_rate(std::span<const double> d, double window_fraction, bool per_cycle)
{
    if (!(window_fraction > 0.0 && window_fraction <= 1.0))
        throw InvalidArgument("fit_linear_rate: window fraction must lie in ]0, 1]");
    std::vector<std::size_t> usable;
    bool hit_floor = false;
    for (std::size_t n = 0; n < d.size(); ++n) {
        if (d[n] < 0.0 || std::isnan(d[n])) throw InvalidArgument("fit_linear_rate: negative or NaN entry");
        if (d[n] > kDistanceFloor) usable.push_back(n);
        else hit_floor = true;
    }
    RateFit fit;
    fit.per_cycle = per_cycle;
    const auto take = static_cast<std::size_t>(
        std::ceil(window_fraction * static_cast<double>(usable.size())));
    if (take < 5) {
        if (hit_floor) {
            fit.below_floor = true;
            fit.r_squared = 1.0;
            fit.window_begin = usable.empty() ? d.size() : usable.front();
            fit.window_end = d.size();
            return fit;
        }
        throw InvalidArgument("fit_linear_rate: fewer than 5 usable entries");
    }
    const std::size_t first = usable.size() - take;
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = first; k < usable.size(); ++k) {
        sx += static_cast<double>(usable[k]);
        sy += std::log(d[usable[k]]);
    }
    const double cnt = static_cast<double>(take);
    const double mx = sx / cnt;
    const double my = sy / cnt;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = first; k < usable.size(); ++k) {
        const double dx = static_cast<double>(usable[k]) - mx;
        const double dy = std::log(d[usable[k]]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;
    fit.rate = std::exp(slope);
    fit.log_intercept = my - slope * mx;
    const double ss_res = std::max(0.0, syy - slope * sxy);
    fit.r_squared = syy <= 1e-300 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    fit.window_begin = usable[first];
    fit.window_end = usable.back() + 1;
    return fit;
}

std::vector<double> per_cycle_distances(const TrajectoryReport& traj)
{
    if (!traj.has_intersection_distances())
        throw InvalidArgument("per_cycle_distances: no intersection distances recorded");
    std::vector<double> out;
    for (std::size_t k : traj.cycle_marks) out.push_back(traj.intersection_distances[k]);
    return out;
}

namespace {

InequalityAudit fejer_impl(const TrajectoryReport& traj, const Vec& anchor,
                           std::span<const double> gammas, std::span<const double> betas, double tol)
{
    require_finite(anchor, "audit_quasi_fejer");
    if (traj.iterates.empty()) throw InvalidArgument("audit_quasi_fejer: empty trajectory");
    require_dim(anchor, traj.iterates.front().size(), "audit_quasi_fejer");
    InequalityAudit a;
    a.kind = AuditKind::QuasiFejer;
    a.gamma = gammas.front();
    a.beta = betas.front();
    a.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < traj.iterates.size(); ++k) {
        const std::size_t op =
            gammas.size() == 1 ? 0 : static_cast<std::size_t>(std::max(0, traj.ops[k]));
        const Vec& x = traj.iterates[k - 1];
        const Vec& xp = traj.iterates[k];
        const double dx = (x - anchor).squaredNorm();
        const double slack =
            (gammas[op] * dx - (xp - anchor).squaredNorm() - betas[op] * (x - xp).squaredNorm()) /
            std::max(1.0, dx);
        ++a.checked;
        if (slack < a.worst_slack) {
            a.worst_slack = slack;
            if (slack < -tol) a.violating_index = k;
        }
    }
    if (a.checked == 0) a.worst_slack = 0.0;
    a.passed = a.worst_slack >= -tol;
    if (a.passed) a.violating_index.reset();
    return a;
}

}  // namespace

InequalityAudit audit_quasi_fejer(const TrajectoryReport& traj, const Vec& anchor, double gamma,
                                  double beta, double tol)
{
    const double g[1] = {gamma};
    const double b[1] = {beta};
    return fejer_impl(traj, anchor, g, b, tol);
}

InequalityAudit audit_quasi_fejer(const TrajectoryReport& traj, const Vec& anchor,
                                  std::span<const double> gammas, std::span<const double> betas,
                                  double tol)
{
    if (gammas.empty() || gammas.size() != betas.size())
        throw InvalidArgument("audit_quasi_fejer: need one gamma and beta per operator");
    for (int op : traj.ops) {
        if (op >= static_cast<int>(gammas.size()))
            throw InvalidArgument("audit_quasi_fejer: operator index without constants");
    }
    return fejer_impl(traj, anchor, gammas, betas, tol);
}

Vec default_anchor(const TrajectoryReport& traj, const ProjectableSet& target)
{
    if (traj.iterates.empty()) throw InvalidArgument("default_anchor: empty trajectory");
    return target.project(traj.last());
}

InequalityAudit audit_quasi_coercive(const TrajectoryReport& traj, const ProjectableSet& target)
{
    if (traj.iterates.size() < 2) throw InvalidArgument("audit_quasi_coercive: no steps");
    InequalityAudit a;
    a.kind = AuditKind::QuasiCoercive;
    double nu = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < traj.iterates.size(); ++k) {
        const double dc = target.distance(traj.iterates[k - 1]);
        if (dc < 1e-12) {
            ++a.skipped;
            continue;
        }
        ++a.checked;
        const double ratio = traj.residuals[k] / dc;
        if (ratio < nu) {
            nu = ratio;
            a.violating_index = k;
        }
    }
    if (a.checked == 0) {
        a.passed = true;
        a.violating_index.reset();
        a.note = "every step started in the target set";
        return a;
    }
    a.nu_hat = nu;
    a.worst_slack = nu;
    a.passed = nu > 0.0;
    if (a.passed) a.violating_index.reset();
    else a.note = "a step did not move while away from the target set";
    return a;
}

InequalityAudit audit_per_cycle_contraction(const TrajectoryReport& traj, double rho, double tol)
{
    if (!traj.has_intersection_distances())
        throw InvalidArgument("audit_per_cycle_contraction: no intersection distances recorded");
    InequalityAudit a;
    a.kind = AuditKind::PerCycleContraction;
    a.rho = rho;
    a.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t c = 1; c < traj.cycle_marks.size(); ++c) {
        const double start = traj.intersection_distances[traj.cycle_marks[c - 1]];
        const double end = traj.intersection_distances[traj.cycle_marks[c]];
        if (start <= kDistanceFloor) {
            ++a.skipped;
            continue;
        }
        ++a.checked;
        const double slack = (rho * start - end) / start;
        if (slack < a.worst_slack) {
            a.worst_slack = slack;
            if (slack < -tol) a.violating_index = c;
        }
    }
    if (a.checked == 0) a.worst_slack = 0.0;
    a.passed = a.worst_slack >= -tol;
    if (a.passed) a.violating_index.reset();
    return a;
}

}  // namespace gdr

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gdr/catalog.hpp"
#include "gdr/regularity.hpp"

namespace gdr {

using Json = nlohmann::ordered_json;

/// Version stamped into every report and accepted in configs.
inline constexpr int kSchemaVersion = 1;

/// Infinite entries are written as the strings "inf" / "-inf".
Json vec_to_json(const Vec& x);
Vec vec_from_json(const Json& j, const std::string& what);

/// Set specs use 1-based coordinate indices (epi_abs arg / value).
Json set_to_json(const ProjectableSet& C);
ProjectableSet set_from_json(const Json& j, Eigen::Index dim);

/// Schedule indices are 1-based in JSON.
Json instance_to_json(const ProblemInstance& p);
ProblemInstance instance_from_json(const Json& j);
/// A catalog name or an inline instance object.
ProblemInstance resolve_instance(const Json& j);

/// Explicit point, or a seeded uniform draw from B(center, radius).
struct X0Choice {
    std::optional<Vec> point;
    bool random = false;
    std::optional<Vec> center;
    double radius = 1.0;
};

struct RunConfig {
    ProblemInstance instance;
    bool operator_overridden = false;
    X0Choice x0;
    std::uint64_t seed = 1;
    int cycles = 200;
    double stop_tol = 1e-15;
    /// Audits requested for `run`; unset means every applicable audit.
    std::optional<std::vector<AuditKind>> audits;
    /// Contraction factor audited by `run`.
    double rho = 1.0;
    std::optional<double> delta;
    std::size_t samples = 10000;
    double eps = 0.0;
    KappaMode kappa_mode = KappaMode::PerPair;
    double margin = 0.05;
    bool record_z_distances = false;
    std::string out_dir = ".";

    double estimation_delta() const { return delta.value_or(instance.estimation_delta); }
};

/// Validates every field; unknown keys are rejected. Throws InvalidArgument.
RunConfig config_from_json(const Json& j);

/// The explicit point, the instance default, or a draw from the seeded ball.
Vec resolve_x0(const RunConfig& cfg);

/// Header `step,cycle,op,residual,dC,d1..dm,x1..xn`; op is 1-based (0 for x0); dC is empty
/// without an intersection hint. Numbers use %.17g.
void write_trajectory_csv(std::ostream& out, const TrajectoryReport& traj);

Json fit_to_json(const RateFit& f);
Json audit_to_json(const InequalityAudit& a);

}  // namespace gdr

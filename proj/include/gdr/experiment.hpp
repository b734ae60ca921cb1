#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdr/catalog.hpp"
#include "gdr/diagnostics.hpp"
#include "gdr/io.hpp"
#include "gdr/regularity.hpp"

namespace gdr {

enum class Provenance { Analytic, Sampled };
const char* to_string(Provenance p);

struct EstimatorSettings {
    double delta = 1.0;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
};

struct PairEstimate {
    double theta = 0.0;
    Provenance theta_source = Provenance::Sampled;
    double kappa = 1.0;
    Provenance kappa_source = Provenance::Sampled;
    bool hull_is_whole_space = false;
    std::string note;
};

struct InstancePrediction {
    std::vector<PairEstimate> pairs;
    double kappa = 1.0;
    Provenance kappa_source = Provenance::Sampled;
    /// Absent when a precondition fails (no common point, theta = 1, non-averaged operator).
    std::optional<RatePrediction> rate;
    bool admissible = false;
    std::string reason;
};

/// Per-pair theta and kappa (analytic when the instance knows them, sampled around the reference
/// point otherwise), the global kappa of the whole system, and the resulting rate bound.
InstancePrediction predict_instance(const ProblemInstance& p, double eps, const EstimatorSettings& est,
                                    KappaMode mode);

enum class Verdict { Pass, Fail, NotApplicable };
const char* to_string(Verdict v);

struct Certification {
    Verdict verdict = Verdict::NotApplicable;
    std::string explanation;
    InstancePrediction prediction;
    TrajectoryReport trajectory;
    std::optional<InequalityAudit> coercivity;
    std::optional<InequalityAudit> contraction;
    std::optional<RateFit> fit;
};

/// PASS iff the per-cycle contraction audit holds at the predicted rho and the per-step rate
/// fitted to d_C is at most rho_per_step + margin.
Certification certify_instance(const ProblemInstance& p, const Vec& x0, int cycles, double stop_tol,
                               double eps, const EstimatorSettings& est, KappaMode mode, double margin);

/// Outcome of one CLI subcommand.
struct CommandResult {
    Json report;
    int exit_code = 0;
    std::string summary;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitCertifyFail = 4;

/// Runs the schedule and writes trajectory.csv and report.json into cfg.out_dir.
CommandResult command_run(const RunConfig& cfg);
CommandResult command_predict(const RunConfig& cfg);
CommandResult command_certify(const RunConfig& cfg);
CommandResult command_estimate(const RunConfig& cfg);
CommandResult command_graph(const RunConfig& cfg);
Json catalog_listing();

/// Writes report.json into cfg.out_dir (creating the directory).
void write_report(const RunConfig& cfg, const Json& report);

}  // namespace gdr

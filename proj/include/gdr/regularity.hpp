#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "gdr/cyclic.hpp"

namespace gdr {

/// Uniform point of the ball B(center, radius): normalized Gaussian times radius * U^{1/n}.
Vec sample_ball(std::mt19937_64& rng, const Vec& center, double radius);

enum class EstimateKind { CQNumber, LinRegModulus, EpsDeltaRegularity };

const char* to_string(EstimateKind kind);

/// A sampled bound; never a certified value.
struct RegularityEstimate {
    EstimateKind kind = EstimateKind::CQNumber;
    double value = 0.0;
    double delta = 0.0;
    /// Samples that contributed (0 marks an unusable estimate).
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    bool is_lower_bound = true;
    bool is_upper_bound_witnessed = false;
    bool usable() const { return samples > 0; }
};

/// Monte Carlo lower bound on the CQ-number of (A, B) relative to L at w: maximum of <u, v> over
/// unit proximal normals u of A and v of -N_B at base points in B(w, delta), sampled from
/// B(w, delta) cap L.
RegularityEstimate estimate_cq_number(const ProjectableSet& A, const ProjectableSet& B,
                                      const AffineSubspace& L, const Vec& w, double delta,
                                      std::size_t n_samples, std::uint64_t seed);

/// Lower bound on the linear regularity modulus: max of d_C(x) / max_i d_{C_i}(x) over uniform
/// samples of B(center, radius). Samples with max_i d_{C_i}(x) < 1e-12 are skipped; a longer run
/// with the same seed extends a shorter one.
RegularityEstimate estimate_linreg_modulus(std::span<const ProjectableSet> sets,
                                           const ProjectableSet& intersection, const Vec& center,
                                           double radius, std::size_t n_samples,
                                           std::uint64_t seed);
/// Same with d_C given as a function (e.g. a Z-set distance).
RegularityEstimate estimate_linreg_modulus(
    const std::vector<std::function<double(const Vec&)>>& distances,
    const std::function<double(const Vec&)>& intersection_distance, const Vec& center,
    double radius, std::size_t n_samples, std::uint64_t seed);

struct EpsDeltaWitness {
    Vec x;
    Vec y;
    Vec u;
};

struct EpsDeltaReport {
    bool holds_on_samples = true;
    /// min of <u, x - y> / (|u| |x - y|), with u a proximal normal at x.
    double worst_ratio = 1.0;
    std::optional<EpsDeltaWitness> witness;
    std::size_t pairs_checked = 0;
};

EpsDeltaReport check_eps_delta_regular(const ProjectableSet& C, const Vec& w, double eps,
                                       double delta, std::size_t n_samples, std::uint64_t seed);

/// 4 mu^2 (1-theta^2) / (|1-mu| + sqrt((1-mu)^2 + 4 mu (1-theta^2)))^2.
double xi_bound(double theta, double mu);

struct PairConstants {
    double gamma = 1.0;
    double nu = 0.0;
    double nu_prime = 0.0;
    double beta = 0.0;
};

/// Constants of one gDR operator. `hull_is_whole_space` says aff(A cup B) = X, which (like
/// lambda = mu = 2) keeps nu' = nu.
PairConstants pair_constants(const GdrOperator& T, double eps1, double eps2, double theta,
                             double kappa, bool hull_is_whole_space = false);

struct OperatorConstants {
    double gamma = 1.0;
    double beta = 1.0;
};

struct RateBound {
    double Gamma = 1.0;
    double rho = 0.0;
    double rho_per_step = 0.0;
    double delta0_factor = 0.0;
    bool admissible = false;
};

/// rho = [Gamma^2 - (nu^2/kappa^2)(sum 1/beta_j)^{-1}]_+^{1/2} per cycle of l operators.
RateBound predicted_rate(std::span<const OperatorConstants> constants, double nu, double kappa);

struct AveragedConstants {
    double beta_hat = 0.0;
    double averaged_coeff = 0.0;
};

AveragedConstants averaged_constants(const GdrOperator& T);

/// Which modulus divides nu_j: the pair's own kappa_j, or the global kappa of {Z_j}.
enum class KappaMode { PerPair, Global };

const char* to_string(KappaMode mode);

struct PairRegularity {
    double theta = 0.0;
    double kappa = 1.0;
    bool hull_is_whole_space = false;
};

struct RatePrediction {
    std::vector<PairRegularity> pairs;
    std::vector<PairConstants> constants;
    double kappa = 1.0;
    double eps = 0.0;
    KappaMode mode = KappaMode::PerPair;
    double nu = 0.0;
    RateBound bound;
};

/// Full prediction for a schedule with eps_1 = eps_2 = eps on every pair.
RatePrediction predict_schedule_rate(const CyclicSchedule& S, std::span<const PairRegularity> pairs,
                                     double kappa, double eps, KappaMode mode = KappaMode::PerPair);

}  // namespace gdr

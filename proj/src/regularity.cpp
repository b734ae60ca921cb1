#include "gdr/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gdr {

Vec sample_ball(std::mt19937_64& rng, const Vec& center, double radius)
{
    const Eigen::Index n = center.size();
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vec g(n);
    double ng = 0.0;
    while (ng < 1e-12) {
        for (Eigen::Index k = 0; k < n; ++k) g[k] = gauss(rng);
        ng = g.norm();
    }
    const double r = radius * std::pow(unif(rng), 1.0 / static_cast<double>(n));
    return center + (r / ng) * g;
}

const char* to_string(EstimateKind kind)
{
    switch (kind) {
    case EstimateKind::CQNumber: return "cq_number";
    case EstimateKind::LinRegModulus: return "linreg_modulus";
    case EstimateKind::EpsDeltaRegularity: return "eps_delta_regularity";
    }
    return "unknown";
}

namespace {

// Uniform sample of B(center, radius) cap L, drawn in coordinates of L.
Vec sample_ball_in_subspace(std::mt19937_64& rng, const AffineSubspace& L, const Vec& center,
                            double radius)
{
    const Vec c = L.project(center);
    const double r2 = radius * radius - (center - c).squaredNorm();
    if (L.dim() == 0 || r2 <= 0.0) return c;
    const Vec coords = sample_ball(rng, Vec::Zero(L.dim()), std::sqrt(r2));
    Vec x = c;
    for (Eigen::Index k = 0; k < L.dim(); ++k) x += coords[k] * L.basis()[static_cast<std::size_t>(k)];
    return x;
}

}  // namespace

RegularityEstimate estimate_cq_number(const ProjectableSet& A, const ProjectableSet& B,
                                      const AffineSubspace& L, const Vec& w, double delta,
                                      std::size_t n_samples, std::uint64_t seed)
{
    if (!(delta > 0.0)) throw InvalidArgument("estimate_cq_number: delta must be > 0");
    require_dim(w, A.dim(), "estimate_cq_number");
    require_dim(w, B.dim(), "estimate_cq_number");
    if (!A.contains(w, 1e-9) || !B.contains(w, 1e-9))
        throw InvalidArgument("estimate_cq_number: w must lie in both sets");

    std::mt19937_64 rng(seed);
    std::vector<Vec> us;
    std::vector<Vec> vs;
    for (std::size_t s = 0; s < n_samples; ++s) {
        const Vec x = sample_ball_in_subspace(rng, L, w, delta);
        const Vec a = A.project(x);
        const Vec u = x - a;
        if ((a - w).norm() <= delta && u.norm() > 1e-14) us.push_back(u.normalized());
        const Vec b = B.project(x);
        const Vec v = b - x;
        if ((b - w).norm() <= delta && v.norm() > 1e-14) vs.push_back(v.normalized());
    }

    RegularityEstimate est;
    est.kind = EstimateKind::CQNumber;
    est.delta = delta;
    est.seed = seed;
    est.is_lower_bound = true;
    if (us.empty() || vs.empty()) return est;
    const Eigen::Index n = w.size();
    Eigen::MatrixXd V(n, static_cast<Eigen::Index>(vs.size()));
    for (std::size_t k = 0; k < vs.size(); ++k) V.col(static_cast<Eigen::Index>(k)) = vs[k];
    // max over all cross pairs, one block of u's at a time
    constexpr std::size_t kBlock = 256;
    double best = -1.0;
    for (std::size_t start = 0; start < us.size(); start += kBlock) {
        const std::size_t len = std::min(kBlock, us.size() - start);
        Eigen::MatrixXd U(n, static_cast<Eigen::Index>(len));
        for (std::size_t k = 0; k < len; ++k) U.col(static_cast<Eigen::Index>(k)) = us[start + k];
        best = std::max(best, (U.transpose() * V).maxCoeff());
    }
    est.value = std::clamp(best, -1.0, 1.0);
    est.samples = std::min(us.size(), vs.size());
    return est;
}

RegularityEstimate estimate_linreg_modulus(
    const std::vector<std::function<double(const Vec&)>>& distances,
    const std::function<double(const Vec&)>& intersection_distance, const Vec& center,
    double radius, std::size_t n_samples, std::uint64_t seed)
{
    if (distances.empty()) throw InvalidArgument("estimate_linreg_modulus: no sets");
    if (!(radius > 0.0)) throw InvalidArgument("estimate_linreg_modulus: radius must be > 0");
    std::mt19937_64 rng(seed);
    RegularityEstimate est;
    est.kind = EstimateKind::LinRegModulus;
    est.delta = radius;
    est.seed = seed;
    est.is_lower_bound = true;
    double best = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        const Vec x = sample_ball(rng, center, radius);
        double dmax = 0.0;
        for (const auto& d : distances) dmax = std::max(dmax, d(x));
        if (dmax < 1e-12) continue;
        best = std::max(best, intersection_distance(x) / dmax);
        ++est.samples;
    }
    if (est.samples == 0) throw InvalidArgument("estimate_linreg_modulus: every sample was skipped");
    est.value = best;
    return est;
}

RegularityEstimate estimate_linreg_modulus(std::span<const ProjectableSet> sets,
                                           const ProjectableSet& intersection, const Vec& center,
                                           double radius, std::size_t n_samples,
                                           std::uint64_t seed)
{
    std::vector<std::function<double(const Vec&)>> d;
    for (const ProjectableSet& C : sets) d.emplace_back([C](const Vec& x) { return C.distance(x); });
    return estimate_linreg_modulus(
        d, [&](const Vec& x) { return intersection.distance(x); }, center, radius, n_samples, seed);
}

// Rounding allowance on the normalized ratio; exact convex cases sit at 0.
constexpr double kRatioTol = 1e-9;

EpsDeltaReport check_eps_delta_regular(const ProjectableSet& C, const Vec& w, double eps,
                                       double delta, std::size_t n_samples, std::uint64_t seed)
{
    if (!(delta > 0.0) || eps < 0.0)
        throw InvalidArgument("check_eps_delta_regular: need eps >= 0 and delta > 0");
    require_dim(w, C.dim(), "check_eps_delta_regular");
    if (!C.contains(w, 1e-9)) throw InvalidArgument("check_eps_delta_regular: w must lie in C");

    std::mt19937_64 rng(seed);
    struct Normal {
        Vec base;
        Vec u;
    };
    std::vector<Normal> normals;
    std::vector<Vec> members{C.project(w)};
    for (std::size_t s = 0; s < n_samples; ++s) {
        const Vec z = sample_ball(rng, w, delta);
        const Vec p = C.project(z);
        if ((p - w).norm() > delta) continue;
        members.push_back(p);
        const Vec u = z - p;
        if (u.norm() > 1e-14) normals.push_back({p, u});
    }
    if (normals.empty()) throw InvalidArgument("check_eps_delta_regular: degenerate sampling");

    EpsDeltaReport rep;
    for (const Normal& nrm : normals) {
        const double nu = nrm.u.norm();
        for (const Vec& y : members) {
            const Vec diff = nrm.base - y;
            const double nd = diff.norm();
            if (nd <= 1e-12) continue;
            ++rep.pairs_checked;
            const double ratio = nrm.u.dot(diff) / (nu * nd);
            if (ratio < rep.worst_ratio) {
                rep.worst_ratio = ratio;
                if (ratio < -eps - kRatioTol) rep.witness = EpsDeltaWitness{nrm.base, y, nrm.u / nu};
            }
        }
    }
    rep.holds_on_samples = rep.worst_ratio >= -eps - kRatioTol;
    if (rep.holds_on_samples) rep.witness.reset();
    return rep;
}

double xi_bound(double theta, double mu)
{
    if (!(theta >= 0.0 && theta < 1.0)) throw InvalidArgument("xi_bound: theta must lie in [0, 1[");
    if (!(mu > 0.0 && mu <= 2.0)) throw InvalidArgument("xi_bound: mu must lie in ]0, 2]");
    const double s = 1.0 - theta * theta;
    const double den = std::abs(1.0 - mu) + std::sqrt((1.0 - mu) * (1.0 - mu) + 4.0 * mu * s);
    return 4.0 * mu * mu * s / (den * den);
}

PairConstants pair_constants(const GdrOperator& T, double eps1, double eps2, double theta,
                             double kappa, bool hull_is_whole_space)
{
    if (!(eps1 >= 0.0 && eps1 <= 1.0 / 3.0)) throw InvalidArgument("pair_constants: eps1 must lie in [0, 1/3]");
    if (!(eps2 >= 0.0 && eps2 < 1.0)) throw InvalidArgument("pair_constants: eps2 must lie in [0, 1[");
    if (!(theta >= 0.0 && theta < 1.0)) throw InvalidArgument("pair_constants: theta must lie in [0, 1[");
    if (!(kappa > 0.0)) throw InvalidArgument("pair_constants: kappa must be > 0");
    if (!T.is_averaged()) throw InvalidArgument("pair_constants: need alpha < 1 + beta_hat");

    const double l = T.lambda();
    const double m = T.mu();
    const double a = T.alpha();
    PairConstants c;
    c.gamma = 1.0 - a + a * (1.0 + l * eps1 / (1.0 - eps1)) * (1.0 + m * eps2 / (1.0 - eps2));
    const double s = 1.0 - theta * theta;
    const double den = std::abs(1.0 - m) + std::sqrt((1.0 - m) * (1.0 - m) + 4.0 * m * s);
    c.nu = a * std::sqrt(s) / kappa * std::min(l, 2.0 * m / den);
    c.nu_prime = (l == 2.0 && m == 2.0) || hull_is_whole_space
                     ? c.nu
                     : std::min(c.nu, a * (l + m - l * m));
    c.beta = (1.0 - a + T.beta_hat()) / a;
    return c;
}

RateBound predicted_rate(std::span<const OperatorConstants> constants, double nu, double kappa)
{
    if (constants.empty()) throw InvalidArgument("predicted_rate: no operators");
    if (!(nu > 0.0 && nu <= 1.0)) throw InvalidArgument("predicted_rate: nu must lie in ]0, 1]");
    if (!(kappa > 0.0)) throw InvalidArgument("predicted_rate: kappa must be > 0");
    double prod = 1.0;
    double inv_beta_sum = 0.0;
    for (const OperatorConstants& c : constants) {
        if (!(c.gamma >= 1.0)) throw InvalidArgument("predicted_rate: gamma must be >= 1");
        if (!(c.beta > 0.0)) throw InvalidArgument("predicted_rate: beta must be > 0");
        prod *= c.gamma;
        inv_beta_sum += 1.0 / c.beta;
    }
    RateBound r;
    r.Gamma = std::sqrt(prod);
    const double bracket = prod - (nu * nu) / (kappa * kappa) / inv_beta_sum;
    r.rho = std::sqrt(std::max(0.0, bracket));
    r.rho_per_step = std::pow(r.rho, 1.0 / static_cast<double>(constants.size()));
    r.delta0_factor = std::sqrt(constants.back().gamma) / (2.0 * r.Gamma);
    r.admissible = r.rho < 1.0;
    return r;
}

AveragedConstants averaged_constants(const GdrOperator& T)
{
    if (!T.is_averaged()) throw InvalidArgument("averaged_constants: need alpha < 1 + beta_hat");
    return {T.beta_hat(), T.alpha() / (1.0 + T.beta_hat())};
}

const char* to_string(KappaMode mode)
{
    return mode == KappaMode::PerPair ? "per_pair" : "global";
}

RatePrediction predict_schedule_rate(const CyclicSchedule& S, std::span<const PairRegularity> pairs,
                                     double kappa, double eps, KappaMode mode)
{
    if (static_cast<int>(pairs.size()) != S.ell())
        throw InvalidArgument("predict_schedule_rate: one regularity record per operator is required");
    RatePrediction p;
    p.pairs.assign(pairs.begin(), pairs.end());
    p.kappa = kappa;
    p.eps = eps;
    p.mode = mode;
    std::vector<OperatorConstants> oc;
    p.nu = 1.0;
    for (int j = 0; j < S.ell(); ++j) {
        const PairRegularity& r = pairs[static_cast<std::size_t>(j)];
        const double k = mode == KappaMode::PerPair ? r.kappa : kappa;
        const PairConstants c = pair_constants(S.operators()[static_cast<std::size_t>(j)], eps, eps,
                                               r.theta, k, r.hull_is_whole_space);
        p.constants.push_back(c);
        oc.push_back({c.gamma, c.beta});
        p.nu = std::min(p.nu, c.nu_prime);
    }
    p.bound = predicted_rate(oc, p.nu, kappa);
    return p;
}

}  // namespace gdr

#include "gdr/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>

#include "gdr/error.hpp"

namespace gdr {

namespace {

constexpr double kThetaOneTol = 1e-9;
constexpr double kConsensusTol = 1e-8;

std::optional<Vec> common_point(const ProblemInstance& p)
{
    if (p.reference_point) return p.reference_point;
    if (p.intersection_hint) return p.intersection_hint->project(Vec::Zero(p.dim));
    return std::nullopt;
}

AffineSubspace pair_hull(const ProjectableSet& a, const ProjectableSet& b)
{
    std::vector<Vec> pts = a.spanning_points();
    const std::vector<Vec> more = b.spanning_points();
    pts.insert(pts.end(), more.begin(), more.end());
    return affine_hull_of_points(pts);
}

bool all_convex(std::span<const ProjectableSet> sets)
{
    for (const auto& C : sets)
        if (!C.is_convex()) return false;
    return true;
}

/// Closed form of an intersection of affine sets; nullopt when some set is not affine.
std::optional<AffineSubspace> affine_intersection(std::span<const ProjectableSet> sets)
{
    std::vector<Vec> rows;
    std::vector<double> rhs;
    for (const auto& C : sets) {
        if (const auto* h = std::get_if<Hyperplane>(&C.variant())) {
            rows.push_back(h->normal);
            rhs.push_back(h->offset);
        } else if (const auto* a = std::get_if<AffineSet>(&C.variant())) {
            const AffineSubspace& L = a->subspace;
            for (Eigen::Index k = 0; k < L.dim_ambient(); ++k) {
                const Vec r = L.complement_component(L.anchor() + unit_vector(L.dim_ambient(), k));
                rows.push_back(r);
                rhs.push_back(r.dot(L.anchor()));
            }
        } else {
            return std::nullopt;
        }
    }
    Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), sets.front().dim());
    Vec b(static_cast<Eigen::Index>(rhs.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        A.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
        b(static_cast<Eigen::Index>(i)) = rhs[i];
    }
    return AffineSubspace::from_equations(A, b);
}

/// Distance to the intersection of `sets`: from a hint when given, in closed form for affine
/// sets, else by Dykstra's algorithm.
std::optional<std::function<double(const Vec&)>> intersection_distance(std::vector<ProjectableSet> sets,
                                                                       const std::optional<ProjectableSet>& hint)
{
    if (hint) return [h = *hint](const Vec& x) { return h.distance(x); };
    if (const auto L = affine_intersection(sets)) return [L = *L](const Vec& x) { return L.distance(x); };
    if (!all_convex(sets)) return std::nullopt;
    return [s = std::move(sets)](const Vec& x) { return (project_onto_intersection(s, x).point - x).norm(); };
}

RegularityEstimate sampled_kappa(std::vector<ProjectableSet> sets, const std::function<double(const Vec&)>& dC,
                                 const Vec& w, const EstimatorSettings& est, std::uint64_t seed)
{
    std::vector<std::function<double(const Vec&)>> ds;
    for (const auto& C : sets) ds.push_back([C](const Vec& x) { return C.distance(x); });
    return estimate_linreg_modulus(ds, dC, w, est.delta, est.samples, seed);
}

Json pair_estimate_json(const PairSpec& q, const PairEstimate& e, const PairConstants* c)
{
    Json j{{"pair", Json::array({q.s + 1, q.t + 1})},
           {"lambda", q.lambda},
           {"mu", q.mu},
           {"alpha", q.alpha},
           {"theta", {{"value", e.theta}, {"provenance", to_string(e.theta_source)}}},
           {"kappa", {{"value", e.kappa}, {"provenance", to_string(e.kappa_source)}}},
           {"hull_is_whole_space", e.hull_is_whole_space}};
    if (c) {
        j["gamma"] = c->gamma;
        j["nu"] = c->nu;
        j["nu_prime"] = c->nu_prime;
        j["beta"] = c->beta;
    }
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

Json prediction_json(const ProblemInstance& p, const InstancePrediction& pred, double eps, KappaMode mode,
                     const EstimatorSettings& est)
{
    Json j;
    j["eps"] = eps;
    j["kappa_mode"] = to_string(mode);
    j["kappa_mode_note"] =
        "per_pair divides nu_j by the pair modulus kappa_j; global divides by the modulus kappa of "
        "the whole system. Both readings are available.";
    j["estimator"] = {{"delta", est.delta}, {"samples", est.samples}, {"seed", est.seed}};
    j["kappa"] = {{"value", pred.kappa}, {"provenance", to_string(pred.kappa_source)}};
    Json pairs = Json::array();
    for (std::size_t k = 0; k < pred.pairs.size(); ++k) {
        const PairConstants* c = pred.rate ? &pred.rate->constants[k] : nullptr;
        pairs.push_back(pair_estimate_json(p.pairs[k], pred.pairs[k], c));
    }
    j["pairs"] = pairs;
    j["admissible"] = pred.admissible;
    if (pred.rate) {
        const RateBound& b = pred.rate->bound;
        j["nu"] = pred.rate->nu;
        j["Gamma"] = b.Gamma;
        j["rho"] = b.rho;
        j["rho_per_step"] = b.rho_per_step;
        j["delta0_factor"] = b.delta0_factor;
    } else {
        j["rho"] = nullptr;
    }
    if (!pred.reason.empty()) j["reason"] = pred.reason;
    return j;
}

Json instance_summary(const ProblemInstance& p)
{
    return instance_to_json(p);
}

Json base_report(const char* command, const RunConfig& cfg)
{
    Json r;
    r["schema_version"] = kSchemaVersion;
    r["command"] = command;
    r["instance"] = instance_summary(cfg.instance);
    return r;
}

EstimatorSettings estimator_settings(const RunConfig& cfg)
{
    return EstimatorSettings{cfg.estimation_delta(), cfg.samples, cfg.seed};
}

Json trajectory_summary(const TrajectoryReport& t)
{
    Json j{{"steps", t.iterates.size() - 1},
           {"cycles_completed", t.cycles_completed},
           {"stopped_early", t.stopped_early},
           {"final_iterate", vec_to_json(t.last())},
           {"final_residual", t.residuals.back()},
           {"final_set_distances", t.set_distances.back()}};
    j["final_intersection_distance"] = t.has_intersection_distances() ? Json(t.intersection_distances.back()) : Json(nullptr);
    return j;
}

Json consensus_json(const ShadowConsensus& c)
{
    Json projections = Json::array();
    for (const Vec& p : c.projections) projections.push_back(vec_to_json(p));
    return Json{{"projections", projections}, {"all_equal", c.all_equal}, {"in_intersection", c.in_intersection}};
}

}  // namespace

const char* to_string(Provenance p)
{
    return p == Provenance::Analytic ? "analytic" : "sampled";
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::NotApplicable: return "NOT-APPLICABLE";
    }
    return "unknown";
}

InstancePrediction predict_instance(const ProblemInstance& p, double eps, const EstimatorSettings& est,
                                    KappaMode mode)
{
    const CyclicSchedule S = p.schedule();
    InstancePrediction out;
    const auto w = common_point(p);
    if (!w) {
        out.reason = "the instance has no known common point (inconsistent or no intersection hint)";
        return out;
    }
    const AnalyticData* an = p.analytic ? &*p.analytic : nullptr;

    for (std::size_t j = 0; j < p.pairs.size(); ++j) {
        const PairSpec& q = p.pairs[j];
        const ProjectableSet& A = p.sets[q.s];
        const ProjectableSet& B = p.sets[q.t];
        const AffineSubspace hull = pair_hull(A, B);
        PairEstimate e;
        e.hull_is_whole_space = hull.is_whole_space();
        const AnalyticPair* ap = an && j < an->pairs.size() ? &an->pairs[j] : nullptr;
        const std::uint64_t seed = est.seed + 2 * j;

        if (ap && ap->theta) {
            e.theta = *ap->theta;
            e.theta_source = Provenance::Analytic;
        } else {
            const RegularityEstimate r = estimate_cq_number(A, B, hull, *w, est.delta, est.samples, seed);
            if (r.usable()) {
                e.theta = std::clamp(r.value, 0.0, 1.0);
            } else {
                e.theta = 0.0;
                e.note = "no proximal normals were sampled; theta taken as 0";
            }
        }
        if (ap && ap->kappa) {
            e.kappa = *ap->kappa;
            e.kappa_source = Provenance::Analytic;
        } else {
            const auto dC = intersection_distance({A, B}, q.intersection_hint);
            if (!dC) {
                out.reason = "pair " + std::to_string(j + 1) + " is nonconvex and has no intersection hint";
                out.pairs.push_back(e);
                return out;
            }
            try {
                e.kappa = std::max(1.0, sampled_kappa({A, B}, *dC, *w, est, seed + 1).value);
            } catch (const InvalidArgument&) {
                e.kappa = 1.0;
                e.note = "every sample lay in both sets; kappa taken as 1";
            }
        }
        out.pairs.push_back(e);
    }

    if (an && an->kappa) {
        out.kappa = *an->kappa;
        out.kappa_source = Provenance::Analytic;
    } else {
        const auto dC = intersection_distance(p.sets, p.intersection_hint);
        if (!dC) {
            out.reason = "the system is nonconvex and has no intersection hint";
            return out;
        }
        try {
            out.kappa = std::max(1.0, sampled_kappa(p.sets, *dC, *w, est, est.seed + 2 * p.pairs.size()).value);
        } catch (const InvalidArgument&) {
            out.kappa = 1.0;
        }
    }

    for (std::size_t j = 0; j < out.pairs.size(); ++j) {
        if (out.pairs[j].theta >= 1.0 - kThetaOneTol) {
            out.reason = "theta = 1 for pair " + std::to_string(j + 1) +
                         ": the pair is not affine-hull regular at the reference point";
            return out;
        }
    }
    std::vector<PairRegularity> regs;
    for (const auto& e : out.pairs) regs.push_back(PairRegularity{e.theta, e.kappa, e.hull_is_whole_space});
    try {
        out.rate = predict_schedule_rate(S, regs, out.kappa, eps, mode);
    } catch (const InvalidArgument& ex) {
        out.reason = ex.what();
        return out;
    }
    out.admissible = out.rate->bound.admissible;
    if (!out.admissible) out.reason = "rho >= 1: the bound gives no linear rate";
    return out;
}

Certification certify_instance(const ProblemInstance& p, const Vec& x0, int cycles, double stop_tol,
                               double eps, const EstimatorSettings& est, KappaMode mode, double margin)
{
    Certification c;
    c.prediction = predict_instance(p, eps, est, mode);
    const CyclicSchedule S = p.schedule();
    c.trajectory = cyclic_run(S, x0, cycles, stop_tol);
    if (p.intersection_hint && c.trajectory.iterates.size() >= 2)
        c.coercivity = audit_quasi_coercive(c.trajectory, *p.intersection_hint);

    if (!c.prediction.rate || !c.prediction.admissible || !p.intersection_hint) {
        c.verdict = Verdict::NotApplicable;
        c.explanation = c.prediction.reason.empty() ? "no intersection hint to measure d_C" : c.prediction.reason;
        if (c.coercivity && !c.coercivity->passed)
            c.explanation += "; the run is not quasi coercive (nu_hat = 0): " + c.coercivity->note;
        return c;
    }

    const RateBound& b = c.prediction.rate->bound;
    c.contraction = audit_per_cycle_contraction(c.trajectory, b.rho);
    try {
        c.fit = fit_linear_rate(c.trajectory.intersection_distances);
    } catch (const InvalidArgument& ex) {
        c.verdict = Verdict::Fail;
        c.explanation = std::string("no rate could be fitted: ") + ex.what();
        return c;
    }
    const bool contraction_ok = c.contraction->passed;
    const bool fit_ok = c.fit->rate <= b.rho_per_step + margin;
    c.verdict = contraction_ok && fit_ok ? Verdict::Pass : Verdict::Fail;
    if (!contraction_ok) c.explanation = "a cycle contracted d_C by less than the predicted rho";
    else if (!fit_ok) c.explanation = "the fitted rate exceeds rho_per_step + margin";
    else c.explanation = "every cycle contracted by rho and the fitted rate is within the margin";
    return c;
}

void write_report(const RunConfig& cfg, const Json& report)
{
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream f(std::filesystem::path(cfg.out_dir) / "report.json", std::ios::binary);
    if (!f) throw InvalidArgument("cannot write report.json into '" + cfg.out_dir + "'");
    f << report.dump(2) << '\n';
}

CommandResult command_run(const RunConfig& cfg)
{
    const ProblemInstance& p = cfg.instance;
    const CyclicSchedule S = p.schedule();
    const Vec x0 = resolve_x0(cfg);
    TrajectoryReport t = cyclic_run(S, x0, cfg.cycles, cfg.stop_tol, RunOptions{cfg.record_z_distances});

    Json r = base_report("run", cfg);
    r["config"] = {{"x0", vec_to_json(x0)},
                   {"seed", cfg.seed},
                   {"cycles", cfg.cycles},
                   {"stop_tol", cfg.stop_tol},
                   {"operator_overridden", cfg.operator_overridden}};
    r["trajectory"] = trajectory_summary(t);

    // rate of d_C when C is known, else of the step lengths
    std::vector<double> series;
    const char* series_name = "d_C";
    if (t.has_intersection_distances()) {
        series = t.intersection_distances;
    } else {
        series_name = "residual";
        series.assign(t.residuals.begin() + 1, t.residuals.end());
    }
    try {
        t.fitted = fit_linear_rate(series);
        Json f = fit_to_json(*t.fitted);
        f["series"] = series_name;
        r["fitted"] = f;
    } catch (const InvalidArgument& ex) {
        r["fitted"] = nullptr;
        r["fit_note"] = ex.what();
    }

    std::vector<AuditKind> kinds;
    if (cfg.audits) kinds = *cfg.audits;
    else kinds = {AuditKind::QuasiFejer, AuditKind::QuasiCoercive, AuditKind::PerCycleContraction};
    Json audits = Json::array();
    Json skipped = Json::array();
    for (AuditKind k : kinds) {
        const auto skip = [&](const std::string& why) {
            skipped.push_back({{"kind", to_string(k)}, {"reason", why}});
        };
        if (!p.intersection_hint) {
            skip("needs an intersection hint");
            continue;
        }
        if (k == AuditKind::QuasiFejer) {
            if (!all_convex(p.sets)) {
                skip("the certified constants need convex sets");
                continue;
            }
            std::vector<double> gammas, betas;
            bool ok = true;
            for (const auto& T : S.operators()) {
                if (!T.is_averaged()) ok = false;
                gammas.push_back(1.0);
                betas.push_back((1.0 - T.alpha() + T.beta_hat()) / T.alpha());
            }
            if (!ok) {
                skip("an operator is not averaged (alpha >= 1 + beta_hat)");
                continue;
            }
            const Vec anchor = default_anchor(t, *p.intersection_hint);
            Json a = audit_to_json(audit_quasi_fejer(t, anchor, gammas, betas));
            a["anchor"] = vec_to_json(anchor);
            a["betas"] = betas;
            audits.push_back(a);
        } else if (k == AuditKind::QuasiCoercive) {
            if (t.iterates.size() < 2) {
                skip("no steps were taken");
                continue;
            }
            audits.push_back(audit_to_json(audit_quasi_coercive(t, *p.intersection_hint)));
        } else {
            audits.push_back(audit_to_json(audit_per_cycle_contraction(t, cfg.rho)));
        }
    }
    r["audits"] = audits;
    if (!skipped.empty()) r["skipped_audits"] = skipped;
    r["shadow_consensus"] = consensus_json(shadow_consensus(S, t.last(), kConsensusTol));

    if (p.sets.size() == 2 && p.pairs.size() == 1 && !p.intersection_hint && all_convex(p.sets)) {
        const auto& q = p.pairs.front();
        const GapAnalysis gap = compute_gap(p.sets[q.s], p.sets[q.t]);
        const FixedPointReport fp = fixed_point_check(S.operators().front(), t.last(), 1e-8, gap);
        r["gap"] = {{"g", vec_to_json(gap.g)},
                    {"norm", gap.g.norm()},
                    {"converged", gap.converged},
                    {"fixed_point", {{"is_fixed", fp.is_fixed},
                                     {"residual", fp.residual},
                                     {"structure", fp.classification == FixedPointStructure::Holds      ? "holds"
                                                   : fp.classification == FixedPointStructure::Fails    ? "fails"
                                                                                                        : "not_applicable"}}}};
    }

    std::filesystem::create_directories(cfg.out_dir);
    const auto csv_path = std::filesystem::path(cfg.out_dir) / "trajectory.csv";
    {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write trajectory.csv into '" + cfg.out_dir + "'");
        write_trajectory_csv(f, t);
    }
    r["files"] = {{"trajectory_csv", csv_path.string()},
                  {"report_json", (std::filesystem::path(cfg.out_dir) / "report.json").string()}};

    CommandResult out;
    out.report = r;
    char buf[160];
    if (t.fitted)
        std::snprintf(buf, sizeof buf, "run: %zu steps, fitted rate %.6g (%s)", t.iterates.size() - 1,
                      t.fitted->rate, series_name);
    else
        std::snprintf(buf, sizeof buf, "run: %zu steps, no rate fitted", t.iterates.size() - 1);
    out.summary = buf;
    return out;
}

CommandResult command_predict(const RunConfig& cfg)
{
    const EstimatorSettings est = estimator_settings(cfg);
    const InstancePrediction pred = predict_instance(cfg.instance, cfg.eps, est, cfg.kappa_mode);
    Json r = base_report("predict", cfg);
    r["prediction"] = prediction_json(cfg.instance, pred, cfg.eps, cfg.kappa_mode, est);
    CommandResult out;
    out.report = r;
    char buf[160];
    if (pred.rate)
        std::snprintf(buf, sizeof buf, "predict: rho = %.6g per cycle, %.6g per step, admissible = %s",
                      pred.rate->bound.rho, pred.rate->bound.rho_per_step, pred.admissible ? "true" : "false");
    else
        std::snprintf(buf, sizeof buf, "predict: no bound (%s)", pred.reason.c_str());
    out.summary = buf;
    return out;
}

CommandResult command_certify(const RunConfig& cfg)
{
    const EstimatorSettings est = estimator_settings(cfg);
    const Vec x0 = resolve_x0(cfg);
    const Certification c =
        certify_instance(cfg.instance, x0, cfg.cycles, cfg.stop_tol, cfg.eps, est, cfg.kappa_mode, cfg.margin);
    Json r = base_report("certify", cfg);
    r["config"] = {{"x0", vec_to_json(x0)}, {"seed", cfg.seed}, {"cycles", cfg.cycles}, {"stop_tol", cfg.stop_tol},
                   {"margin", cfg.margin}};
    r["predicted"] = prediction_json(cfg.instance, c.prediction, cfg.eps, cfg.kappa_mode, est);
    Json emp;
    emp["trajectory"] = trajectory_summary(c.trajectory);
    emp["fitted"] = c.fit ? fit_to_json(*c.fit) : Json(nullptr);
    emp["contraction"] = c.contraction ? audit_to_json(*c.contraction) : Json(nullptr);
    emp["coercivity"] = c.coercivity ? audit_to_json(*c.coercivity) : Json(nullptr);
    r["empirical"] = emp;
    r["verdict"] = to_string(c.verdict);
    r["explanation"] = c.explanation;
    CommandResult out;
    out.report = r;
    out.exit_code = c.verdict == Verdict::Fail ? kExitCertifyFail : kExitOk;
    out.summary = std::string("certify: ") + to_string(c.verdict) + " (" + c.explanation + ")";
    return out;
}

CommandResult command_estimate(const RunConfig& cfg)
{
    const ProblemInstance& p = cfg.instance;
    const EstimatorSettings est = estimator_settings(cfg);
    Json r = base_report("estimate", cfg);
    const auto w = common_point(p);
    if (!w) throw InvalidArgument("estimate: the instance has no known common point");
    r["reference_point"] = vec_to_json(*w);
    r["estimator"] = {{"delta", est.delta}, {"samples", est.samples}, {"seed", est.seed}};

    Json pairs = Json::array();
    for (std::size_t j = 0; j < p.pairs.size(); ++j) {
        const PairSpec& q = p.pairs[j];
        const ProjectableSet& A = p.sets[q.s];
        const ProjectableSet& B = p.sets[q.t];
        const AffineSubspace hull = pair_hull(A, B);
        const std::uint64_t seed = est.seed + 2 * j;
        Json e{{"pair", Json::array({q.s + 1, q.t + 1})}, {"hull_is_whole_space", hull.is_whole_space()}};
        const RegularityEstimate cq = estimate_cq_number(A, B, hull, *w, est.delta, est.samples, seed);
        e["cq_number"] = cq.usable() ? Json(cq.value) : Json(nullptr);
        e["cq_samples"] = cq.samples;
        if (const auto dC = intersection_distance({A, B}, q.intersection_hint)) {
            try {
                e["linreg_modulus"] = sampled_kappa({A, B}, *dC, *w, est, seed + 1).value;
            } catch (const InvalidArgument&) {
                e["linreg_modulus"] = nullptr;
            }
        } else {
            e["linreg_modulus"] = nullptr;
            e["note"] = "nonconvex pair without an intersection hint";
        }
        if (p.analytic && j < p.analytic->pairs.size()) {
            const AnalyticPair& a = p.analytic->pairs[j];
            e["analytic_theta"] = a.theta ? Json(*a.theta) : Json(nullptr);
            e["analytic_kappa"] = a.kappa ? Json(*a.kappa) : Json(nullptr);
        }
        pairs.push_back(e);
    }
    r["pairs"] = pairs;

    Json sys;
    if (const auto dC = intersection_distance(p.sets, p.intersection_hint)) {
        try {
            sys["linreg_modulus"] = sampled_kappa(p.sets, *dC, *w, est, est.seed + 2 * p.pairs.size()).value;
        } catch (const InvalidArgument&) {
            sys["linreg_modulus"] = nullptr;
        }
    } else {
        sys["linreg_modulus"] = nullptr;
    }
    sys["analytic_kappa"] = p.analytic && p.analytic->kappa ? Json(*p.analytic->kappa) : Json(nullptr);
    r["system"] = sys;

    Json sets = Json::array();
    for (std::size_t i = 0; i < p.sets.size(); ++i) {
        Json e{{"set", i + 1}, {"kind", to_string(p.sets[i].kind())}, {"eps", cfg.eps}};
        try {
            const EpsDeltaReport rep = check_eps_delta_regular(p.sets[i], *w, cfg.eps, est.delta,
                                                               std::min<std::size_t>(est.samples, 2000), est.seed + i);
            e["holds_on_samples"] = rep.holds_on_samples;
            e["worst_ratio"] = rep.worst_ratio;
            if (rep.witness)
                e["witness"] = {{"x", vec_to_json(rep.witness->x)}, {"y", vec_to_json(rep.witness->y)},
                                {"u", vec_to_json(rep.witness->u)}};
        } catch (const InvalidArgument& ex) {
            e["holds_on_samples"] = nullptr;
            e["note"] = ex.what();
        }
        sets.push_back(e);
    }
    r["eps_delta"] = sets;

    CommandResult out;
    out.report = r;
    out.summary = "estimate: " + std::to_string(p.pairs.size()) + " pairs, " + std::to_string(p.sets.size()) + " sets";
    return out;
}

CommandResult command_graph(const RunConfig& cfg)
{
    const CyclicSchedule S = cfg.instance.schedule();
    Json r = base_report("graph", cfg);
    Json edges = Json::array();
    for (const auto& q : S.pairs()) edges.push_back(Json::array({q.s + 1, q.t + 1}));
    r["edges"] = edges;
    r["connected"] = is_connected(S);
    try {
        const FullConnectivity f = is_fully_connected(S);
        r["fully_connected"] = f.fully_connected;
        if (f.fully_connected) {
            Json cycle = Json::array(), star = Json::array();
            for (int i : f.cycle) cycle.push_back(i + 1);
            for (int i : f.star) star.push_back(i + 1);
            r["witness"] = {{"anchor", f.cycle.front() + 1}, {"cycle", cycle}, {"star", star}};
        } else {
            r["witness"] = nullptr;
        }
    } catch (const UnsupportedSize& ex) {
        r["fully_connected"] = nullptr;
        r["note"] = ex.what();
    }
    CommandResult out;
    out.report = r;
    out.summary = std::string("graph: connected = ") + (r["connected"].get<bool>() ? "true" : "false") +
                  ", fully_connected = " + r["fully_connected"].dump();
    return out;
}

Json catalog_listing()
{
    Json list = Json::array();
    for (const CatalogEntry& e : catalog_entries())
        list.push_back({{"name", e.name}, {"usage", e.usage}, {"description", e.description}});
    return Json{{"schema_version", kSchemaVersion}, {"catalog", list}};
}

}  // namespace gdr

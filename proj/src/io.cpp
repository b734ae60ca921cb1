#include "gdr/io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <set>

#include "gdr/error.hpp"

namespace gdr {

namespace {

Json number_to_json(double v)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double number_from_json(const Json& j, const std::string& what)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw InvalidArgument(what + ": expected a number");
}

double finite_from_json(const Json& j, const std::string& what)
{
    const double v = number_from_json(j, what);
    if (!std::isfinite(v)) throw InvalidArgument(what + ": expected a finite number");
    return v;
}

const Json& field(const Json& j, const char* key, const std::string& what)
{
    if (!j.is_object() || !j.contains(key)) throw InvalidArgument(what + ": missing '" + key + "'");
    return j.at(key);
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& what)
{
    if (!j.is_object()) throw InvalidArgument(what + ": expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : j.items())
        if (!ok.count(item.key())) throw InvalidArgument(what + ": unknown key '" + item.key() + "'");
}

Vec sized_vec(const Json& j, Eigen::Index dim, const std::string& what)
{
    Vec v = vec_from_json(j, what);
    if (v.size() != dim)
        throw InvalidArgument(what + ": expected " + std::to_string(dim) + " coordinates");
    return v;
}

Eigen::Index index_from_json(const Json& j, Eigen::Index dim, const std::string& what)
{
    if (!j.is_number_integer()) throw InvalidArgument(what + ": expected an integer index");
    const auto k = j.get<long long>();
    if (k < 1 || k > dim) throw InvalidArgument(what + ": index out of range (1-based)");
    return static_cast<Eigen::Index>(k - 1);
}

Json halfspace_to_json(const Vec& normal, double offset)
{
    return Json{{"normal", vec_to_json(normal)}, {"offset", number_to_json(offset)}};
}

std::optional<NamedKind> named_kind(const std::string& s)
{
    for (NamedKind k : {NamedKind::AlternatingProjections, NamedKind::ClassicalDR, NamedKind::RAAR,
                        NamedKind::AffineCombo})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

/// Applies an operator spec ("dr", {"name": "raar", "param": 0.7} or {"lambda", "mu", "alpha"})
/// to one pair.
void apply_operator(const Json& j, PairSpec& pair, const std::vector<ProjectableSet>& sets,
                    const std::string& what)
{
    std::string name;
    double param = 0.5;
    if (j.is_string()) {
        name = j.get<std::string>();
    } else {
        check_keys(j, {"name", "param", "lambda", "mu", "alpha"}, what);
        if (j.contains("name")) name = j.at("name").get<std::string>();
        if (j.contains("param")) param = finite_from_json(j.at("param"), what + ".param");
    }
    if (!name.empty()) {
        const auto kind = named_kind(name);
        if (!kind) throw InvalidArgument(what + ": unknown operator '" + name + "'");
        const GdrOperator T = named_operator(*kind, sets[pair.s], sets[pair.t], param);
        pair.lambda = T.lambda();
        pair.mu = T.mu();
        pair.alpha = T.alpha();
    }
    if (j.is_object()) {
        if (j.contains("lambda")) pair.lambda = finite_from_json(j.at("lambda"), what + ".lambda");
        if (j.contains("mu")) pair.mu = finite_from_json(j.at("mu"), what + ".mu");
        if (j.contains("alpha")) pair.alpha = finite_from_json(j.at("alpha"), what + ".alpha");
    }
}

std::optional<double> optional_number(const Json& j, const char* key, const std::string& what)
{
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return finite_from_json(j.at(key), what + "." + key);
}

}  // namespace

Json vec_to_json(const Vec& x)
{
    Json a = Json::array();
    for (Eigen::Index k = 0; k < x.size(); ++k) a.push_back(number_to_json(x(k)));
    return a;
}

Vec vec_from_json(const Json& j, const std::string& what)
{
    if (!j.is_array() || j.empty()) throw InvalidArgument(what + ": expected a nonempty array");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = number_from_json(j[k], what);
    return v;
}

Json set_to_json(const ProjectableSet& C)
{
    return std::visit(
        [&](const auto& s) -> Json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, AffineSet>) {
                Json dirs = Json::array();
                for (const Vec& b : s.subspace.basis()) dirs.push_back(vec_to_json(b));
                return Json{{"type", "affine"}, {"point", vec_to_json(s.subspace.anchor())}, {"directions", dirs}};
            } else if constexpr (std::is_same_v<T, Hyperplane> || std::is_same_v<T, Halfspace>) {
                Json o = halfspace_to_json(s.normal, s.offset);
                o["type"] = std::is_same_v<T, Hyperplane> ? "hyperplane" : "halfspace";
                return o;
            } else if constexpr (std::is_same_v<T, Box>) {
                return Json{{"type", "box"}, {"lower", vec_to_json(s.lower)}, {"upper", vec_to_json(s.upper)}};
            } else if constexpr (std::is_same_v<T, Ball> || std::is_same_v<T, Sphere>) {
                return Json{{"type", std::is_same_v<T, Ball> ? "ball" : "sphere"},
                            {"center", vec_to_json(s.center)},
                            {"radius", s.radius}};
            } else if constexpr (std::is_same_v<T, FinitePoints>) {
                Json pts = Json::array();
                for (const Vec& p : s.points) pts.push_back(vec_to_json(p));
                return Json{{"type", "finite_points"}, {"points", pts}};
            } else if constexpr (std::is_same_v<T, Polyhedron>) {
                Json faces = Json::array();
                for (const Halfspace& h : s.faces) faces.push_back(halfspace_to_json(h.normal, h.offset));
                return Json{{"type", "polyhedron"}, {"faces", faces}};
            } else {
                return Json{{"type", "epi_abs"}, {"dim", s.dim}, {"arg", s.arg + 1}, {"value", s.value + 1}};
            }
        },
        C.variant());
}

ProjectableSet set_from_json(const Json& j, Eigen::Index dim)
{
    const std::string what = "set";
    const Json& type_j = field(j, "type", what);
    if (!type_j.is_string()) throw InvalidArgument("set.type: expected a string");
    const std::string type = type_j.get<std::string>();
    const std::string w = "set(" + type + ")";
    if (type == "affine") {
        check_keys(j, {"type", "point", "directions"}, w);
        std::vector<Vec> dirs;
        if (j.contains("directions")) {
            if (!j.at("directions").is_array()) throw InvalidArgument(w + ".directions: expected an array");
            for (const Json& d : j.at("directions")) dirs.push_back(sized_vec(d, dim, w + ".directions"));
        }
        return ProjectableSet::affine(AffineSubspace(sized_vec(field(j, "point", w), dim, w + ".point"), dirs));
    }
    if (type == "hyperplane" || type == "halfspace") {
        check_keys(j, {"type", "normal", "offset"}, w);
        const Vec n = sized_vec(field(j, "normal", w), dim, w + ".normal");
        const double b = finite_from_json(field(j, "offset", w), w + ".offset");
        return type == "hyperplane" ? ProjectableSet::hyperplane(n, b) : ProjectableSet::halfspace(n, b);
    }
    if (type == "box") {
        check_keys(j, {"type", "lower", "upper"}, w);
        return ProjectableSet::box(sized_vec(field(j, "lower", w), dim, w + ".lower"),
                                   sized_vec(field(j, "upper", w), dim, w + ".upper"));
    }
    if (type == "ball" || type == "sphere") {
        check_keys(j, {"type", "center", "radius"}, w);
        const Vec c = sized_vec(field(j, "center", w), dim, w + ".center");
        const double r = finite_from_json(field(j, "radius", w), w + ".radius");
        return type == "ball" ? ProjectableSet::ball(c, r) : ProjectableSet::sphere(c, r);
    }
    if (type == "finite_points") {
        check_keys(j, {"type", "points"}, w);
        const Json& pts = field(j, "points", w);
        if (!pts.is_array()) throw InvalidArgument(w + ".points: expected an array");
        std::vector<Vec> points;
        for (const Json& p : pts) points.push_back(sized_vec(p, dim, w + ".points"));
        return ProjectableSet::finite_points(std::move(points));
    }
    if (type == "polyhedron") {
        check_keys(j, {"type", "faces"}, w);
        const Json& fs = field(j, "faces", w);
        if (!fs.is_array()) throw InvalidArgument(w + ".faces: expected an array");
        std::vector<Halfspace> faces;
        for (const Json& f : fs) {
            check_keys(f, {"normal", "offset"}, w + ".faces");
            faces.push_back(Halfspace{sized_vec(field(f, "normal", w), dim, w + ".normal"),
                                      finite_from_json(field(f, "offset", w), w + ".offset")});
        }
        return ProjectableSet::polyhedron(std::move(faces));
    }
    if (type == "epi_abs") {
        check_keys(j, {"type", "dim", "arg", "value"}, w);
        if (j.contains("dim") && j.at("dim") != Json(dim)) throw InvalidArgument(w + ".dim: must equal the instance dimension");
        return ProjectableSet::epi_abs(dim, index_from_json(field(j, "arg", w), dim, w + ".arg"),
                                       index_from_json(field(j, "value", w), dim, w + ".value"));
    }
    throw InvalidArgument("set.type: unknown type '" + type + "'");
}

Json instance_to_json(const ProblemInstance& p)
{
    Json j;
    j["name"] = p.name;
    j["description"] = p.description;
    j["dimension"] = p.dim;
    Json sets = Json::array();
    for (const auto& C : p.sets) sets.push_back(set_to_json(C));
    j["sets"] = sets;
    Json sched = Json::array();
    for (const auto& q : p.pairs) {
        Json e{{"s", q.s + 1}, {"t", q.t + 1}, {"lambda", q.lambda}, {"mu", q.mu}, {"alpha", q.alpha}};
        if (q.intersection_hint) e["intersection_hint"] = set_to_json(*q.intersection_hint);
        sched.push_back(e);
    }
    j["schedule"] = sched;
    if (p.intersection_hint) j["intersection_hint"] = set_to_json(*p.intersection_hint);
    if (p.reference_point) j["reference_point"] = vec_to_json(*p.reference_point);
    if (p.default_x0) j["x0"] = vec_to_json(*p.default_x0);
    if (p.analytic) {
        Json a;
        Json pairs = Json::array();
        for (const auto& q : p.analytic->pairs) {
            Json e;
            e["theta"] = q.theta ? Json(*q.theta) : Json(nullptr);
            e["kappa"] = q.kappa ? Json(*q.kappa) : Json(nullptr);
            pairs.push_back(e);
        }
        a["pairs"] = pairs;
        a["kappa"] = p.analytic->kappa ? Json(*p.analytic->kappa) : Json(nullptr);
        a["expected_rate"] = p.analytic->expected_rate ? Json(*p.analytic->expected_rate) : Json(nullptr);
        a["notes"] = p.analytic->notes;
        j["analytic"] = a;
    }
    j["estimation_delta"] = p.estimation_delta;
    return j;
}

ProblemInstance instance_from_json(const Json& j)
{
    const std::string w = "instance";
    check_keys(j, {"name", "description", "dimension", "sets", "schedule", "intersection_hint",
                   "reference_point", "x0", "analytic", "estimation_delta"},
               w);
    ProblemInstance p;
    p.name = j.contains("name") ? j.at("name").get<std::string>() : "inline";
    if (j.contains("description")) p.description = j.at("description").get<std::string>();
    const Json& dim_j = field(j, "dimension", w);
    if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1)
        throw InvalidArgument("instance.dimension: expected a positive integer");
    p.dim = dim_j.get<Eigen::Index>();

    const Json& sets = field(j, "sets", w);
    if (!sets.is_array() || sets.empty()) throw InvalidArgument("instance.sets: expected a nonempty array");
    for (const Json& s : sets) p.sets.push_back(set_from_json(s, p.dim));
    const auto m = static_cast<Eigen::Index>(p.sets.size());

    const Json& sched = field(j, "schedule", w);
    if (!sched.is_array() || sched.empty()) throw InvalidArgument("instance.schedule: expected a nonempty array");
    for (const Json& e : sched) {
        check_keys(e, {"s", "t", "operator", "lambda", "mu", "alpha", "intersection_hint"}, "schedule entry");
        PairSpec q;
        q.s = static_cast<int>(index_from_json(field(e, "s", "schedule entry"), m, "schedule.s"));
        q.t = static_cast<int>(index_from_json(field(e, "t", "schedule entry"), m, "schedule.t"));
        if (e.contains("operator")) apply_operator(e.at("operator"), q, p.sets, "schedule.operator");
        Json params = Json::object();
        for (const char* k : {"lambda", "mu", "alpha"})
            if (e.contains(k)) params[k] = e.at(k);
        if (!params.empty()) apply_operator(params, q, p.sets, "schedule entry");
        if (e.contains("intersection_hint")) q.intersection_hint = set_from_json(e.at("intersection_hint"), p.dim);
        p.pairs.push_back(q);
    }
    if (j.contains("intersection_hint")) p.intersection_hint = set_from_json(j.at("intersection_hint"), p.dim);
    if (j.contains("reference_point"))
        p.reference_point = sized_vec(j.at("reference_point"), p.dim, "instance.reference_point");
    if (j.contains("x0")) p.default_x0 = sized_vec(j.at("x0"), p.dim, "instance.x0");
    if (j.contains("estimation_delta")) {
        p.estimation_delta = finite_from_json(j.at("estimation_delta"), "instance.estimation_delta");
        if (!(p.estimation_delta > 0)) throw InvalidArgument("instance.estimation_delta: must be > 0");
    }
    if (j.contains("analytic")) {
        const Json& a = j.at("analytic");
        check_keys(a, {"pairs", "kappa", "expected_rate", "notes"}, "instance.analytic");
        AnalyticData d;
        if (a.contains("pairs")) {
            if (!a.at("pairs").is_array() || a.at("pairs").size() != p.pairs.size())
                throw InvalidArgument("instance.analytic.pairs: need one entry per schedule pair");
            for (const Json& e : a.at("pairs")) {
                check_keys(e, {"theta", "kappa"}, "instance.analytic.pairs");
                AnalyticPair q;
                q.theta = optional_number(e, "theta", "analytic.pairs");
                q.kappa = optional_number(e, "kappa", "analytic.pairs");
                d.pairs.push_back(q);
            }
        } else {
            d.pairs.resize(p.pairs.size());
        }
        d.kappa = optional_number(a, "kappa", "analytic");
        d.expected_rate = optional_number(a, "expected_rate", "analytic");
        if (a.contains("notes")) d.notes = a.at("notes").get<std::string>();
        p.analytic = d;
    }
    // validates coverage, indices and operator parameters
    (void)p.schedule();
    return p;
}

ProblemInstance resolve_instance(const Json& j)
{
    if (j.is_string()) return make_instance(j.get<std::string>());
    if (j.is_object()) return instance_from_json(j);
    throw InvalidArgument("instance: expected a catalog name or an object");
}

RunConfig config_from_json(const Json& j)
{
    const std::string w = "config";
    check_keys(j, {"schema_version", "instance", "operator", "x0", "seed", "cycles", "stop_tol", "audits",
                   "rho", "estimator", "eps", "kappa_mode", "margin", "record_z_distances", "out"},
               w);
    if (j.contains("schema_version") && j.at("schema_version") != Json(kSchemaVersion))
        throw InvalidArgument("config.schema_version: unsupported version");
    RunConfig c;
    c.instance = resolve_instance(field(j, "instance", w));
    if (j.contains("operator")) {
        for (auto& q : c.instance.pairs) apply_operator(j.at("operator"), q, c.instance.sets, "config.operator");
        c.operator_overridden = true;
        if (c.instance.analytic) c.instance.analytic->expected_rate.reset();
        (void)c.instance.schedule();
    }
    if (j.contains("seed")) {
        const Json& s = j.at("seed");
        if (!s.is_number_integer() || s.get<long long>() < 0) throw InvalidArgument("config.seed: expected a nonnegative integer");
        c.seed = s.get<std::uint64_t>();
    }
    if (j.contains("x0")) {
        const Json& x = j.at("x0");
        if (x.is_array()) {
            c.x0.point = sized_vec(x, c.instance.dim, "config.x0");
            if (!c.x0.point->allFinite()) throw InvalidArgument("config.x0: entries must be finite");
        } else if (x == Json("random")) {
            c.x0.random = true;
        } else if (x.is_object()) {
            check_keys(x, {"center", "radius"}, "config.x0");
            c.x0.random = true;
            if (x.contains("center")) c.x0.center = sized_vec(x.at("center"), c.instance.dim, "config.x0.center");
            if (x.contains("radius")) c.x0.radius = finite_from_json(x.at("radius"), "config.x0.radius");
            if (!(c.x0.radius > 0)) throw InvalidArgument("config.x0.radius: must be > 0");
        } else {
            throw InvalidArgument("config.x0: expected a point, \"random\" or {center, radius}");
        }
    }
    if (j.contains("cycles")) {
        const Json& n = j.at("cycles");
        if (!n.is_number_integer() || n.get<long long>() < 1 || n.get<long long>() > 100000000)
            throw InvalidArgument("config.cycles: expected a positive integer");
        c.cycles = n.get<int>();
    }
    if (j.contains("stop_tol")) {
        c.stop_tol = finite_from_json(j.at("stop_tol"), "config.stop_tol");
        if (c.stop_tol < 0) throw InvalidArgument("config.stop_tol: must be >= 0");
    }
    if (j.contains("audits")) {
        if (!j.at("audits").is_array()) throw InvalidArgument("config.audits: expected an array");
        std::vector<AuditKind> kinds;
        for (const Json& a : j.at("audits")) {
            const std::string s = a.is_string() ? a.get<std::string>() : "";
            bool found = false;
            for (AuditKind k : {AuditKind::QuasiFejer, AuditKind::QuasiCoercive, AuditKind::PerCycleContraction}) {
                if (s == to_string(k)) {
                    kinds.push_back(k);
                    found = true;
                }
            }
            if (!found) throw InvalidArgument("config.audits: unknown audit '" + s + "'");
        }
        c.audits = kinds;
    }
    if (j.contains("rho")) {
        c.rho = finite_from_json(j.at("rho"), "config.rho");
        if (c.rho < 0) throw InvalidArgument("config.rho: must be >= 0");
    }
    if (j.contains("estimator")) {
        const Json& e = j.at("estimator");
        check_keys(e, {"delta", "samples"}, "config.estimator");
        if (e.contains("delta")) {
            c.delta = finite_from_json(e.at("delta"), "config.estimator.delta");
            if (!(*c.delta > 0)) throw InvalidArgument("config.estimator.delta: must be > 0");
        }
        if (e.contains("samples")) {
            const Json& s = e.at("samples");
            if (!s.is_number_integer() || s.get<long long>() < 1) throw InvalidArgument("config.estimator.samples: expected a positive integer");
            c.samples = s.get<std::size_t>();
        }
    }
    if (j.contains("eps")) {
        c.eps = finite_from_json(j.at("eps"), "config.eps");
        if (c.eps < 0 || c.eps > 1.0 / 3.0) throw InvalidArgument("config.eps: must lie in [0, 1/3]");
    }
    if (j.contains("kappa_mode")) {
        const Json& k = j.at("kappa_mode");
        if (k == Json(to_string(KappaMode::PerPair))) c.kappa_mode = KappaMode::PerPair;
        else if (k == Json(to_string(KappaMode::Global))) c.kappa_mode = KappaMode::Global;
        else throw InvalidArgument("config.kappa_mode: expected \"per_pair\" or \"global\"");
    }
    if (j.contains("margin")) {
        c.margin = finite_from_json(j.at("margin"), "config.margin");
        if (c.margin < 0) throw InvalidArgument("config.margin: must be >= 0");
    }
    if (j.contains("record_z_distances")) {
        if (!j.at("record_z_distances").is_boolean()) throw InvalidArgument("config.record_z_distances: expected a boolean");
        c.record_z_distances = j.at("record_z_distances").get<bool>();
    }
    if (j.contains("out")) {
        if (!j.at("out").is_string()) throw InvalidArgument("config.out: expected a string");
        c.out_dir = j.at("out").get<std::string>();
    }
    return c;
}

Vec resolve_x0(const RunConfig& cfg)
{
    if (cfg.x0.point) return *cfg.x0.point;
    if (!cfg.x0.random && cfg.instance.default_x0) return *cfg.instance.default_x0;
    const Vec center = cfg.x0.center.value_or(cfg.instance.reference_point.value_or(Vec::Zero(cfg.instance.dim)));
    std::mt19937_64 rng(cfg.seed);
    return sample_ball(rng, center, cfg.x0.radius);
}

void write_trajectory_csv(std::ostream& out, const TrajectoryReport& traj)
{
    if (traj.iterates.empty()) throw InvalidArgument("write_trajectory_csv: empty trajectory");
    const std::size_t m = traj.set_distances.front().size();
    const auto n = traj.iterates.front().size();
    out << "step,cycle,op,residual,dC";
    for (std::size_t i = 1; i <= m; ++i) out << ",d" << i;
    for (Eigen::Index k = 1; k <= n; ++k) out << ",x" << k;
    out << '\n';
    char buf[40];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << ',' << buf;
    };
    for (std::size_t k = 0; k < traj.iterates.size(); ++k) {
        out << k << ',' << traj.cycles[k] << ',' << traj.ops[k] + 1;
        num(traj.residuals[k]);
        if (traj.has_intersection_distances()) num(traj.intersection_distances[k]);
        else out << ',';
        for (double d : traj.set_distances[k]) num(d);
        for (Eigen::Index i = 0; i < n; ++i) num(traj.iterates[k](i));
        out << '\n';
    }
}

Json fit_to_json(const RateFit& f)
{
    return Json{{"rate", f.rate},
                {"log_intercept", f.log_intercept},
                {"r_squared", f.r_squared},
                {"window", Json::array({f.window_begin, f.window_end})},
                {"per_cycle", f.per_cycle},
                {"below_floor", f.below_floor}};
}

Json audit_to_json(const InequalityAudit& a)
{
    Json j{{"kind", to_string(a.kind)}, {"passed", a.passed}, {"worst_slack", a.worst_slack}};
    // step numbers match the CSV `step` column; contraction audits count cycles from 1
    const char* key = a.kind == AuditKind::PerCycleContraction ? "violating_cycle" : "violating_step";
    j[key] = a.violating_index ? Json(*a.violating_index) : Json(nullptr);
    switch (a.kind) {
    case AuditKind::QuasiFejer:
        j["gamma"] = a.gamma;
        j["beta"] = a.beta;
        break;
    case AuditKind::QuasiCoercive:
        j["nu_hat"] = a.checked > 0 ? Json(a.nu_hat) : Json(nullptr);
        break;
    case AuditKind::PerCycleContraction:
        j["rho"] = a.rho;
        break;
    }
    j["checked"] = a.checked;
    j["skipped"] = a.skipped;
    if (!a.note.empty()) j["note"] = a.note;
    return j;
}

}  // namespace gdr

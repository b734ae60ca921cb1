#include "gdr/catalog.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gdr/error.hpp"

namespace gdr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ProjectableSet line_through_origin(const Vec& dir)
{
    return ProjectableSet::affine(AffineSubspace(Vec::Zero(dir.size()), std::span<const Vec>(&dir, 1)));
}

double hyperplane_kappa(double c)
{
    return std::sqrt(2.0 / (1.0 - std::abs(c)));
}

PairSpec dr(int s, int t)
{
    return PairSpec{s, t, 2.0, 2.0, 0.5, std::nullopt};
}

double parse_number(const std::string& text, const std::string& what)
{
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end || text.empty())
        throw InvalidArgument("catalog: bad " + what + " '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t p = s.find(sep, start);
        out.push_back(s.substr(start, p == std::string::npos ? std::string::npos : p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return out;
}

std::string format_param(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

CyclicSchedule ProblemInstance::schedule() const
{
    return CyclicSchedule(sets, pairs, intersection_hint);
}

ProblemInstance two_lines(double phi_degrees)
{
    if (!(phi_degrees > 0.0 && phi_degrees < 180.0))
        throw InvalidArgument("two-lines: angle must lie in ]0, 180[ degrees");
    const double phi = phi_degrees * std::numbers::pi / 180.0;
    const double c = std::cos(phi);
    ProblemInstance p;
    p.name = "two-lines-" + format_param(phi_degrees) + "deg";
    p.description = "x-axis and the line at angle phi through the origin in R^2";
    p.dim = 2;
    p.sets = {ProjectableSet::hyperplane(vec({0, 1}), 0),
              ProjectableSet::hyperplane(vec({-std::sin(phi), std::cos(phi)}), 0)};
    p.pairs = {dr(0, 1)};
    p.intersection_hint = ProjectableSet::finite_points({Vec::Zero(2)});
    p.reference_point = Vec::Zero(2);
    p.default_x0 = vec({1, 0});
    p.analytic = AnalyticData{{AnalyticPair{std::abs(c), hyperplane_kappa(c)}},
                              hyperplane_kappa(c),
                              std::abs(c),
                              "theta = |cos phi|, kappa = sqrt(2/(1-|cos phi|)); classical DR "
                              "contracts by cos phi per step"};
    return p;
}

ProblemInstance parallel_lines_gap(double d)
{
    if (!(d > 0.0)) throw InvalidArgument("parallel-lines-gap: need d > 0");
    ProblemInstance p;
    p.name = "parallel-lines-gap:" + format_param(d);
    p.description = "inconsistent pair {y = 0}, {y = d} in R^2 with gap vector (0, d)";
    p.dim = 2;
    p.sets = {ProjectableSet::hyperplane(vec({0, 1}), 0), ProjectableSet::hyperplane(vec({0, 1}), d)};
    p.pairs = {dr(0, 1)};
    p.default_x0 = vec({3, 7});
    return p;
}

ProblemInstance perpendicular_hyperplanes(Eigen::Index n)
{
    if (n < 2) throw InvalidArgument("perpendicular-hyperplanes: need n >= 2");
    ProblemInstance p;
    p.name = n == 3 ? "perpendicular-hyperplanes-r3" : "perpendicular-hyperplanes:" + std::to_string(n);
    p.description = "{x_1 = 0} and {x_2 = 0} in R^n";
    p.dim = n;
    Vec e1 = Vec::Zero(n), e2 = Vec::Zero(n);
    e1(0) = 1;
    e2(1) = 1;
    p.sets = {ProjectableSet::hyperplane(e1, 0), ProjectableSet::hyperplane(e2, 0)};
    p.pairs = {dr(0, 1)};
    std::vector<Vec> dirs;
    for (Eigen::Index k = 2; k < n; ++k) dirs.push_back(Vec::Unit(n, k));
    p.intersection_hint = ProjectableSet::affine(AffineSubspace(Vec::Zero(n), dirs));
    p.reference_point = Vec::Zero(n);
    p.default_x0 = Vec::Ones(n);
    p.analytic = AnalyticData{{AnalyticPair{0.0, std::sqrt(2.0)}}, std::sqrt(2.0), 0.0,
                              "orthogonal normals: theta = 0, kappa = sqrt(2)"};
    return p;
}

ProblemInstance three_lines_epsilon(double eps)
{
    if (!(eps > 0.0)) throw InvalidArgument("three-lines-epsilon: need eps > 0");
    ProblemInstance p;
    p.name = "three-lines-epsilon:" + format_param(eps);
    p.description = "x-axis, the line through (1, eps) and the y-axis in R^2";
    p.dim = 2;
    p.sets = {ProjectableSet::hyperplane(vec({0, 1}), 0), line_through_origin(vec({1, eps})),
              ProjectableSet::hyperplane(vec({1, 0}), 0)};
    p.pairs = {dr(0, 1), dr(1, 2), dr(2, 0)};
    p.intersection_hint = ProjectableSet::finite_points({Vec::Zero(2)});
    p.reference_point = Vec::Zero(2);
    p.default_x0 = vec({1, 1});
    const double r = std::sqrt(1 + eps * eps);
    const double c12 = 1.0 / r;
    const double c23 = eps / r;
    p.analytic = AnalyticData{{AnalyticPair{c12, hyperplane_kappa(c12)},
                               AnalyticPair{c23, hyperplane_kappa(c23)},
                               AnalyticPair{0.0, std::sqrt(2.0)}},
                              std::sqrt(2.0),
                              std::nullopt,
                              "the triple has modulus sqrt(2); the pair {C1, C2} has modulus at "
                              "least sqrt(1 + 1/eps^2)"};
    return p;
}

ProblemInstance three_planes_epsilon(double eps)
{
    if (!(eps > 0.0)) throw InvalidArgument("three-planes-epsilon: need eps > 0");
    ProblemInstance p;
    p.name = "three-planes-epsilon:" + format_param(eps);
    p.description = "R^2 x {0}, {0} x R^2 and the plane through 0, (eps,1,0), (0,1,eps) in R^3";
    p.dim = 3;
    const Vec n3 = vec({1, -eps, 1}) / std::sqrt(2 + eps * eps);
    p.sets = {ProjectableSet::hyperplane(vec({0, 0, 1}), 0), ProjectableSet::hyperplane(vec({1, 0, 0}), 0),
              ProjectableSet::hyperplane(n3, 0)};
    p.pairs = {dr(0, 1), dr(1, 2), dr(2, 0)};
    p.intersection_hint = ProjectableSet::finite_points({Vec::Zero(3)});
    p.reference_point = Vec::Zero(3);
    p.default_x0 = vec({1, 1, 1});
    const double c13 = n3(2);
    const double c23 = n3(0);
    p.analytic = AnalyticData{{AnalyticPair{0.0, std::sqrt(2.0)},
                               AnalyticPair{c23, hyperplane_kappa(c23)},
                               AnalyticPair{c13, hyperplane_kappa(c13)}},
                              std::nullopt,
                              std::nullopt,
                              "pairwise moduli are bounded; the whole system has modulus at least "
                              "sqrt(1 + 1/eps^2), witnessed at (eps^2, eps, 0)"};
    return p;
}

ProblemInstance quadrant_pair()
{
    ProblemInstance p;
    p.name = "quadrant-pair";
    p.description = "the closed positive and negative quadrants of R^2";
    p.dim = 2;
    p.sets = {ProjectableSet::box(vec({0, 0}), vec({kInf, kInf})),
              ProjectableSet::box(vec({-kInf, -kInf}), vec({0, 0}))};
    p.pairs = {dr(0, 1)};
    p.intersection_hint = ProjectableSet::finite_points({Vec::Zero(2)});
    p.reference_point = Vec::Zero(2);
    p.default_x0 = vec({1, -2});
    p.analytic = AnalyticData{{AnalyticPair{1.0, std::sqrt(2.0)}}, std::sqrt(2.0), std::nullopt,
                              "linearly regular with modulus sqrt(2) but not affine-hull regular "
                              "at the origin (theta = 1)"};
    return p;
}

ProblemInstance remark_str_lin()
{
    ProblemInstance p;
    p.name = "remark-str-lin";
    p.description = "{x + z <= 0}, {x - z <= 0}, {x >= 0} in R^2";
    p.dim = 2;
    p.sets = {ProjectableSet::halfspace(vec({1, 1}), 0), ProjectableSet::halfspace(vec({1, -1}), 0),
              ProjectableSet::halfspace(vec({-1, 0}), 0)};
    p.pairs = {dr(0, 1), dr(1, 2), dr(2, 0)};
    p.intersection_hint = ProjectableSet::finite_points({Vec::Zero(2)});
    p.reference_point = Vec::Zero(2);
    p.default_x0 = vec({2, 1});
    return p;
}

ProblemInstance four_set_r3()
{
    ProblemInstance p;
    p.name = "four-set-r3";
    p.description = "four convex sets in R^3 whose fixed point (1,1,1) has different shadows";
    p.dim = 3;
    const std::vector<Vec> plane{vec({1, 0, 0}), vec({0, 1, 1})};
    p.sets = {ProjectableSet::box(vec({0, -kInf, 0}), vec({kInf, kInf, 0})),
              ProjectableSet::box(vec({-kInf, 0, 0}), vec({kInf, kInf, 0})),
              ProjectableSet::affine(AffineSubspace(Vec::Zero(3), plane)),
              ProjectableSet::halfspace(vec({-1, 0, 0}), 0)};
    p.pairs = {PairSpec{0, 1, 2, 2, 0.5, std::nullopt}, PairSpec{2, 3, 1, 1, 1, std::nullopt}};
    p.intersection_hint = ProjectableSet::box(vec({0, 0, 0}), vec({kInf, 0, 0}));
    p.reference_point = Vec::Zero(3);
    p.default_x0 = vec({1, 1, 1});
    return p;
}

ProblemInstance epi_abs_axis()
{
    ProblemInstance p;
    p.name = "epi-abs-axis";
    p.description = "epigraph of |.| and the x-axis in R^2; (0,-1) is a fixed point of classical DR";
    p.dim = 2;
    p.sets = {ProjectableSet::epi_abs(2, 0, 1), ProjectableSet::hyperplane(vec({0, 1}), 0)};
    p.pairs = {dr(0, 1)};
    p.intersection_hint = ProjectableSet::finite_points({Vec::Zero(2)});
    p.reference_point = Vec::Zero(2);
    p.default_x0 = vec({0, -1});
    p.analytic = AnalyticData{{AnalyticPair{1.0, std::nullopt}}, std::nullopt, std::nullopt,
                              "the normal (0,-1) of the epigraph at 0 is also a normal of the axis, "
                              "so theta = 1 and DR is not quasi coercive at the origin"};
    return p;
}

ProblemInstance ball_vs_halfspace()
{
    ProblemInstance p;
    p.name = "ball-vs-halfspace";
    p.description = "unit ball and {x_1 >= 2} in R^2, gap vector (1, 0)";
    p.dim = 2;
    p.sets = {ProjectableSet::ball(Vec::Zero(2), 1), ProjectableSet::halfspace(vec({-1, 0}), -2)};
    p.pairs = {PairSpec{0, 1, 1, 1, 1, std::nullopt}};
    p.default_x0 = vec({0, 3});
    return p;
}

ProblemInstance random_polyhedra(int m, Eigen::Index n, std::uint64_t seed)
{
    if (m < 2 || m > 8) throw InvalidArgument("random-polyhedra: need 2 <= m <= 8");
    if (n < 1 || n > 10) throw InvalidArgument("random-polyhedra: need 1 <= n <= 10");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    Vec point(n);
    for (Eigen::Index k = 0; k < n; ++k) point(k) = N(rng);

    ProblemInstance p;
    p.name = "random-polyhedra:" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(seed);
    p.description = "m random polyhedra in R^n sharing a boundary point";
    p.dim = n;
    std::vector<Halfspace> all;
    for (int i = 0; i < m; ++i) {
        std::vector<Halfspace> faces;
        for (Eigen::Index f = 0; f <= n; ++f) {
            Vec a(n);
            for (Eigen::Index k = 0; k < n; ++k) a(k) = N(rng);
            a.normalize();
            // the first face passes through the common point
            const double slack = f == 0 ? 0.0 : U(rng);
            faces.push_back(Halfspace{a, a.dot(point) + slack});
        }
        all.insert(all.end(), faces.begin(), faces.end());
        p.sets.push_back(ProjectableSet::polyhedron(std::move(faces)));
    }
    for (int i = 0; i < m; ++i) p.pairs.push_back(dr(i, (i + 1) % m));
    if (m == 2) p.pairs.pop_back();
    if (all.size() <= 20) p.intersection_hint = ProjectableSet::polyhedron(std::move(all));
    p.reference_point = point;
    p.default_x0 = point + Vec::Constant(n, 3.0);
    return p;
}

std::vector<CatalogEntry> catalog_entries()
{
    return {
        {"two-lines", "two-lines-<deg>deg | two-lines:<deg>", "two lines through 0 in R^2 at angle phi"},
        {"parallel-lines-gap", "parallel-lines-gap[:d]", "inconsistent parallel lines at distance d (default 1)"},
        {"perpendicular-hyperplanes", "perpendicular-hyperplanes-r3 | perpendicular-hyperplanes:<n>",
         "two orthogonal hyperplanes in R^n"},
        {"three-lines-epsilon", "three-lines-epsilon:<eps>", "three lines in R^2 with a nearly parallel pair"},
        {"three-planes-epsilon", "three-planes-epsilon:<eps>", "three planes in R^3 with a badly regular triple"},
        {"quadrant-pair", "quadrant-pair", "positive and negative quadrants of R^2"},
        {"remark-str-lin", "remark-str-lin", "three halfplanes meeting only at the origin"},
        {"four-set-r3", "four-set-r3", "four sets in R^3 with a fixed point of mismatched shadows"},
        {"epi-abs-axis", "epi-abs-axis", "epigraph of |.| against the x-axis"},
        {"ball-vs-halfspace", "ball-vs-halfspace", "disjoint ball and halfplane"},
        {"random-polyhedra", "random-polyhedra:<m>,<n>,<seed>", "m random polyhedra in R^n with a common point"},
    };
}

ProblemInstance make_instance(const std::string& spec)
{
    const std::size_t colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    const auto need_arg = [&](const char* what) {
        if (arg.empty()) throw InvalidArgument("catalog: '" + head + "' needs a parameter (" + what + ")");
        return parse_number(arg, what);
    };

    if (head.starts_with("two-lines-") && head.ends_with("deg") && colon == std::string::npos)
        return two_lines(parse_number(head.substr(10, head.size() - 13), "angle"));
    if (head == "two-lines") return two_lines(need_arg("angle in degrees"));
    if (head == "parallel-lines-gap") return parallel_lines_gap(arg.empty() ? 1.0 : parse_number(arg, "gap"));
    if (head == "perpendicular-hyperplanes-r3" && arg.empty()) return perpendicular_hyperplanes(3);
    if (head == "perpendicular-hyperplanes") {
        const double n = need_arg("dimension");
        if (n != std::floor(n)) throw InvalidArgument("catalog: dimension must be an integer");
        return perpendicular_hyperplanes(static_cast<Eigen::Index>(n));
    }
    if (head == "three-lines-epsilon") return three_lines_epsilon(need_arg("eps"));
    if (head == "three-planes-epsilon") return three_planes_epsilon(need_arg("eps"));
    if (arg.empty()) {
        if (head == "quadrant-pair") return quadrant_pair();
        if (head == "remark-str-lin") return remark_str_lin();
        if (head == "four-set-r3") return four_set_r3();
        if (head == "epi-abs-axis") return epi_abs_axis();
        if (head == "ball-vs-halfspace") return ball_vs_halfspace();
    }
    if (head == "random-polyhedra") {
        const auto parts = split(arg, ',');
        if (parts.size() != 3) throw InvalidArgument("catalog: random-polyhedra needs m,n,seed");
        const double m = parse_number(parts[0], "m");
        const double n = parse_number(parts[1], "n");
        const double seed = parse_number(parts[2], "seed");
        if (m != std::floor(m) || n != std::floor(n) || seed != std::floor(seed) || seed < 0)
            throw InvalidArgument("catalog: random-polyhedra parameters must be integers");
        return random_polyhedra(static_cast<int>(m), static_cast<Eigen::Index>(n),
                                static_cast<std::uint64_t>(seed));
    }
    throw InvalidArgument("catalog: unknown instance '" + spec + "'");
}

}  // namespace gdr

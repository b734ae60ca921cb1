#include "gdr/cyclic.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace gdr {

CyclicSchedule::CyclicSchedule(std::vector<ProjectableSet> sets, std::vector<PairSpec> pairs,
                               std::optional<ProjectableSet> intersection_hint)
    : sets_(std::move(sets)), pairs_(std::move(pairs)), hint_(std::move(intersection_hint))
{
    if (sets_.empty()) throw InvalidArgument("schedule: no sets");
    if (pairs_.empty()) throw InvalidArgument("schedule: no pairs");
    const Eigen::Index n = sets_.front().dim();
    for (const ProjectableSet& C : sets_) {
        if (C.dim() != n)
            throw DimensionMismatch(static_cast<std::size_t>(n), static_cast<std::size_t>(C.dim()),
                                    "schedule");
    }
    if (hint_ && hint_->dim() != n)
        throw DimensionMismatch(static_cast<std::size_t>(n), static_cast<std::size_t>(hint_->dim()),
                                "schedule intersection hint");

    std::vector<bool> covered(sets_.size(), false);
    for (const PairSpec& p : pairs_) {
        if (p.s < 0 || p.t < 0 || p.s >= m() || p.t >= m())
            throw InvalidArgument("schedule: pair index out of range");
        if (p.s == p.t) throw InvalidArgument("schedule: pair with s == t");
        covered[static_cast<std::size_t>(p.s)] = true;
        covered[static_cast<std::size_t>(p.t)] = true;
        operators_.emplace_back(sets_[static_cast<std::size_t>(p.s)],
                                sets_[static_cast<std::size_t>(p.t)], p.lambda, p.mu, p.alpha);
    }
    for (std::size_t i = 0; i < covered.size(); ++i) {
        if (!covered[i])
            throw InvalidArgument("schedule: set " + std::to_string(i + 1) + " is not covered by any pair");
    }
}

ZSet::ZSet(int j, ProjectableSet s_set, ProjectableSet t_set, std::optional<AffineSubspace> hull,
           std::optional<ProjectableSet> intersection_hint)
    : j_(j), s_set_(std::move(s_set)), t_set_(std::move(t_set)), hull_(std::move(hull)),
      hint_(std::move(intersection_hint))
{
}

double ZSet::distance(const Vec& x) const
{
    const Vec y = hull_ ? hull_->project(x) : x;
    if (hint_) return hint_->distance(y);
    if (!s_set_.is_convex() || !t_set_.is_convex())
        throw InvalidArgument("Z-set distance of a nonconvex pair needs an intersection hint");
    const std::vector<ProjectableSet> pair{s_set_, t_set_};
    const IntersectionProjection p = project_onto_intersection(pair, y);
    return (y - p.point).norm();
}

std::vector<ZSet> z_sets(const CyclicSchedule& S)
{
    std::vector<ZSet> out;
    for (int j = 0; j < S.ell(); ++j) {
        const PairSpec& p = S.pairs()[static_cast<std::size_t>(j)];
        const ProjectableSet& cs = S.sets()[static_cast<std::size_t>(p.s)];
        const ProjectableSet& ct = S.sets()[static_cast<std::size_t>(p.t)];
        std::optional<AffineSubspace> hull;
        if (p.lambda == 2.0 && p.mu == 2.0) {
            std::vector<Vec> pts = cs.spanning_points();
            const std::vector<Vec> more = ct.spanning_points();
            pts.insert(pts.end(), more.begin(), more.end());
            hull = affine_hull_of_points(pts);
            if (hull->is_whole_space()) hull.reset();
        }
        out.emplace_back(j, cs, ct, std::move(hull), p.intersection_hint);
    }
    return out;
}

TrajectoryReport cyclic_run(const CyclicSchedule& S, const Vec& x0, int n_cycles, double stop_tol,
                            const RunOptions& options)
{
    require_dim(x0, S.dim(), "cyclic_run");
    require_finite(x0, "cyclic_run");
    if (n_cycles < 0) throw InvalidArgument("cyclic_run: negative cycle count");

    std::vector<ZSet> zs;
    if (options.record_z_distances) zs = z_sets(S);

    TrajectoryReport r;
    auto record = [&](const Vec& x, int op, int cycle, double residual) {
        r.iterates.push_back(x);
        r.ops.push_back(op);
        r.cycles.push_back(cycle);
        r.residuals.push_back(residual);
        std::vector<double> d;
        d.reserve(S.sets().size());
        for (const ProjectableSet& C : S.sets()) d.push_back(C.distance(x));
        r.set_distances.push_back(std::move(d));
        if (S.intersection_hint()) r.intersection_distances.push_back(S.intersection_hint()->distance(x));
        r.shadows.push_back(S.sets().front().project(x));
        if (options.record_z_distances) {
            std::vector<double> dz;
            for (const ZSet& z : zs) dz.push_back(z.distance(x));
            r.z_distances.push_back(std::move(dz));
        }
    };

    record(x0, -1, 0, 0.0);
    r.cycle_marks.push_back(0);
    Vec x = x0;
    for (int c = 1; c <= n_cycles; ++c) {
        const Vec start = x;
        for (int j = 0; j < S.ell(); ++j) {
            Vec next = S.operators()[static_cast<std::size_t>(j)].apply(x);
            if (!next.allFinite())
                throw NumericAbort("cyclic_run: non-finite iterate in cycle " + std::to_string(c) +
                                   ", operator " + std::to_string(j + 1));
            const double residual = (next - x).norm();
            x = std::move(next);
            record(x, j, c, residual);
        }
        r.cycle_marks.push_back(r.iterates.size() - 1);
        r.cycles_completed = c;
        if ((x - start).norm() < stop_tol) {
            r.stopped_early = c < n_cycles;
            break;
        }
    }
    return r;
}

namespace {

std::vector<std::pair<int, int>> edge_list(const CyclicSchedule& S)
{
    std::vector<std::pair<int, int>> e;
    for (const PairSpec& p : S.pairs()) e.emplace_back(p.s, p.t);
    return e;
}

std::vector<std::vector<int>> adjacency(int m, const std::vector<std::pair<int, int>>& edges,
                                        bool reverse)
{
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(m));
    for (auto [s, t] : edges) {
        if (s < 0 || t < 0 || s >= m || t >= m) throw InvalidArgument("graph: index out of range");
        if (reverse) std::swap(s, t);
        adj[static_cast<std::size_t>(s)].push_back(t);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

// BFS distances/parents from `from`, restricted to nodes with allowed[v].
std::vector<int> bfs_parents(const std::vector<std::vector<int>>& adj, int from,
                             const std::vector<bool>& allowed)
{
    std::vector<int> parent(adj.size(), -2);
    parent[static_cast<std::size_t>(from)] = -1;
    std::deque<int> q{from};
    while (!q.empty()) {
        const int u = q.front();
        q.pop_front();
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (!allowed[static_cast<std::size_t>(v)] || parent[static_cast<std::size_t>(v)] != -2)
                continue;
            parent[static_cast<std::size_t>(v)] = u;
            q.push_back(v);
        }
    }
    return parent;
}

std::vector<bool> reachable(const std::vector<std::vector<int>>& adj, int from)
{
    const std::vector<bool> all(adj.size(), true);
    const std::vector<int> parent = bfs_parents(adj, from, all);
    std::vector<bool> out(adj.size());
    for (std::size_t v = 0; v < adj.size(); ++v) out[v] = parent[v] != -2;
    return out;
}

}  // namespace

bool is_connected(int m, const std::vector<std::pair<int, int>>& edges)
{
    if (m <= 0) throw InvalidArgument("graph: no vertices");
    std::vector<std::pair<int, int>> both = edges;
    for (auto [s, t] : edges) both.emplace_back(t, s);
    const std::vector<bool> seen = reachable(adjacency(m, both, false), 0);
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

bool is_connected(const CyclicSchedule& S) { return is_connected(S.m(), edge_list(S)); }

FullConnectivity is_fully_connected(int m, const std::vector<std::pair<int, int>>& edges)
{
    if (m <= 0) throw InvalidArgument("graph: no vertices");
    if (m > 8) throw UnsupportedSize("is_fully_connected: at most 8 sets are supported");
    const auto fwd = adjacency(m, edges, false);
    const auto bwd = adjacency(m, edges, true);

    for (int a = 0; a < m; ++a) {
        const std::vector<bool> out_reach = reachable(fwd, a);
        const std::vector<bool> in_reach = reachable(bwd, a);
        std::vector<bool> scc(static_cast<std::size_t>(m));
        for (int v = 0; v < m; ++v)
            scc[static_cast<std::size_t>(v)] = out_reach[static_cast<std::size_t>(v)] &&
                                               in_reach[static_cast<std::size_t>(v)];
        const auto& nbrs = fwd[static_cast<std::size_t>(a)];
        bool covers = true;
        for (int v = 0; v < m && covers; ++v) {
            covers = scc[static_cast<std::size_t>(v)] ||
                     std::binary_search(nbrs.begin(), nbrs.end(), v);
        }
        if (!covers) continue;

        FullConnectivity out;
        out.fully_connected = true;
        // closed walk from a through every vertex of its strong component
        out.cycle.push_back(a);
        std::vector<bool> visited(static_cast<std::size_t>(m), false);
        visited[static_cast<std::size_t>(a)] = true;
        int cur = a;
        auto walk_to = [&](int target) {
            const std::vector<int> parent = bfs_parents(fwd, cur, scc);
            std::vector<int> path;
            for (int v = target; v != cur; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
            std::reverse(path.begin(), path.end());
            for (int v : path) {
                visited[static_cast<std::size_t>(v)] = true;
                out.cycle.push_back(v);
            }
            cur = target;
        };
        for (int v = 0; v < m; ++v) {
            if (scc[static_cast<std::size_t>(v)] && !visited[static_cast<std::size_t>(v)]) walk_to(v);
        }
        if (cur != a) {
            walk_to(a);
            out.cycle.pop_back();  // the return to the anchor is implicit
        }
        for (int v = 0; v < m; ++v) {
            if (!scc[static_cast<std::size_t>(v)]) out.star.push_back(v);
        }
        return out;
    }
    return {};
}

FullConnectivity is_fully_connected(const CyclicSchedule& S)
{
    return is_fully_connected(S.m(), edge_list(S));
}

ShadowConsensus shadow_consensus(const CyclicSchedule& S, const Vec& x_bar, double tol)
{
    require_dim(x_bar, S.dim(), "shadow_consensus");
    ShadowConsensus out;
    for (const ProjectableSet& C : S.sets()) out.projections.push_back(C.project(x_bar));
    out.all_equal = std::all_of(out.projections.begin(), out.projections.end(), [&](const Vec& p) {
        return (p - out.projections.front()).norm() <= tol;
    });
    if (out.all_equal) {
        out.in_intersection = std::all_of(S.sets().begin(), S.sets().end(), [&](const ProjectableSet& C) {
            return C.contains(out.projections.front(), tol);
        });
    }
    return out;
}

}  // namespace gdr

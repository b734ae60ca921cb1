#pragma once

#include <optional>
#include <vector>

#include "gdr/operators.hpp"
#include "gdr/trajectory.hpp"

namespace gdr {

/// One operator of the schedule: T = (1-alpha) Id + alpha P_{C_t}^mu P_{C_s}^lambda.
/// Indices are 0-based.
struct PairSpec {
    int s = 0;
    int t = 1;
    double lambda = 2.0;
    double mu = 2.0;
    double alpha = 0.5;
    /// C_s cap C_t, needed for Z-set distances of nonconvex pairs.
    std::optional<ProjectableSet> intersection_hint;
};

class CyclicSchedule {
public:
    /// Checks s != t, index ranges and coverage of every set.
    CyclicSchedule(std::vector<ProjectableSet> sets, std::vector<PairSpec> pairs,
                   std::optional<ProjectableSet> intersection_hint = std::nullopt);

    const std::vector<ProjectableSet>& sets() const { return sets_; }
    const std::vector<PairSpec>& pairs() const { return pairs_; }
    const std::vector<GdrOperator>& operators() const { return operators_; }
    const std::optional<ProjectableSet>& intersection_hint() const { return hint_; }
    int m() const { return static_cast<int>(sets_.size()); }
    int ell() const { return static_cast<int>(pairs_.size()); }
    Eigen::Index dim() const { return sets_.front().dim(); }

private:
    std::vector<ProjectableSet> sets_;
    std::vector<PairSpec> pairs_;
    std::vector<GdrOperator> operators_;
    std::optional<ProjectableSet> hint_;
};

/// Z_j = (C_s cap C_t) + (L_j - L_j)^perp when lambda = mu = 2, else C_s cap C_t,
/// with L_j = aff(C_s cup C_t).
class ZSet {
public:
    ZSet(int j, ProjectableSet s_set, ProjectableSet t_set, std::optional<AffineSubspace> hull,
         std::optional<ProjectableSet> intersection_hint);

    int j() const { return j_; }
    bool has_complement_part() const { return hull_.has_value(); }
    const std::optional<AffineSubspace>& hull() const { return hull_; }

    /// d_{C_s cap C_t}(P_L x).
    double distance(const Vec& x) const;
    bool contains(const Vec& x, double tol = kMembershipTol) const { return distance(x) <= tol; }

private:
    int j_;
    ProjectableSet s_set_;
    ProjectableSet t_set_;
    std::optional<AffineSubspace> hull_;
    std::optional<ProjectableSet> hint_;
};

std::vector<ZSet> z_sets(const CyclicSchedule& S);

struct RunOptions {
    bool record_z_distances = false;
};

/// Applies T_1, ..., T_l cyclically for up to n_cycles cycles; stops after a cycle whose total
/// displacement is below stop_tol. Throws NumericAbort on a non-finite iterate.
TrajectoryReport cyclic_run(const CyclicSchedule& S, const Vec& x0, int n_cycles, double stop_tol,
                            const RunOptions& options = {});

/// Undirected connectivity of the pair graph.
bool is_connected(const CyclicSchedule& S);
bool is_connected(int m, const std::vector<std::pair<int, int>>& edges);

struct FullConnectivity {
    bool fully_connected = false;
    /// Closed walk i_1, ..., i_r (i_1 = anchor; a single entry when r = 1).
    std::vector<int> cycle;
    /// Star leaves i_{r+1}, ..., i_q reached by edges (i_1, k).
    std::vector<int> star;
};

/// Directed test: some anchor i_1 has a closed directed walk through i_1 and star edges from i_1
/// that together cover I. Throws UnsupportedSize for m > 8.
FullConnectivity is_fully_connected(const CyclicSchedule& S);
FullConnectivity is_fully_connected(int m, const std::vector<std::pair<int, int>>& edges);

struct ShadowConsensus {
    std::vector<Vec> projections;
    bool all_equal = false;
    bool in_intersection = false;
};

ShadowConsensus shadow_consensus(const CyclicSchedule& S, const Vec& x_bar, double tol);

}  // namespace gdr

#pragma once

#include <optional>
#include <string>

#include "gdr/sets.hpp"

namespace gdr {

/// (lambda/(2-lambda) + mu/(2-mu))^{-1}, and 0 when lambda = 2 or mu = 2.
double beta_hat(double lambda, double mu);

/// T = (1 - alpha) Id + alpha P_B^mu P_A^lambda.
class GdrOperator {
public:
    /// lambda, mu in ]0, 2]; alpha > 0.
    GdrOperator(ProjectableSet a, ProjectableSet b, double lambda, double mu, double alpha);

    const ProjectableSet& set_a() const { return a_; }
    const ProjectableSet& set_b() const { return b_; }
    double lambda() const { return lambda_; }
    double mu() const { return mu_; }
    double alpha() const { return alpha_; }
    double beta_hat() const { return beta_hat_; }
    /// 1 - alpha + alpha (1 - lambda)(1 - mu).
    double eta() const { return eta_; }
    /// alpha < 1 + beta_hat.
    bool is_averaged() const { return alpha_ < 1.0 + beta_hat_; }
    /// Convergence theory needs alpha strictly below 1 + beta_hat.
    bool convergence_warning() const { return !is_averaged(); }
    bool is_convex() const { return a_.is_convex() && b_.is_convex(); }

    Vec apply(const Vec& x) const;

private:
    ProjectableSet a_;
    ProjectableSet b_;
    double lambda_;
    double mu_;
    double alpha_;
    double beta_hat_;
    double eta_;
};

Vec gdr_step(const GdrOperator& T, const Vec& x);

enum class NamedKind { AlternatingProjections, ClassicalDR, RAAR, AffineCombo };

const char* to_string(NamedKind kind);

/// Parameter triples: AP (1,1,1); DR (2,2,1/2); RAAR(a) (2,2a,1/2); AffineCombo(a)
/// (1+a,1+a,1/(1+a)), which requires an affine B. `param` is ignored for AP and DR.
GdrOperator named_operator(NamedKind kind, const ProjectableSet& a, const ProjectableSet& b,
                           double param = 0.5);

/// || T_{2,2a}^{1/2} x - [(1-a) P_A x + (a/2)(x + R_B R_A x)] ||.
double raar_identity_check(const ProjectableSet& a, const ProjectableSet& b, double alpha,
                           const Vec& x);

/// Gap vector g = b - a of a mutually nearest pair, found by alternating projections from P_A(0).
struct GapAnalysis {
    Vec g;
    Vec a;
    Vec b;
    bool converged = false;
    int iterations = 0;
    double tol = 0.0;

    /// x in E = A cap (B - g).
    bool in_e(const ProjectableSet& A, const ProjectableSet& B, const Vec& x, double tol) const;
    /// x in F = (A + g) cap B.
    bool in_f(const ProjectableSet& A, const ProjectableSet& B, const Vec& x, double tol) const;
};

/// `start` replaces the default starting point P_A(0).
GapAnalysis compute_gap(const ProjectableSet& a, const ProjectableSet& b, double tol = 1e-12,
                        int max_iter = 100000, const std::optional<Vec>& start = std::nullopt);

enum class FixedPointStructure {
    /// Not convex, or lambda = mu = 2 where no closed form is claimed.
    NotApplicable,
    Holds,
    Fails,
};

const char* to_string(FixedPointStructure s);

struct FixedPointReport {
    bool is_fixed = false;
    double residual = 0.0;
    FixedPointStructure classification = FixedPointStructure::NotApplicable;
    /// d_B(P_A x + g).
    double shadow_gap_distance = 0.0;
    /// || (x - P_A x) - mu/(lambda+mu-lambda mu) g ||.
    double displacement_error = 0.0;
};

/// Residual ||x - T x||; for convex pairs with min(lambda, mu) < 2 also checks
/// P_A x in E and x - P_A x = mu/(lambda+mu-lambda mu) g.
FixedPointReport fixed_point_check(const GdrOperator& T, const Vec& x, double tol,
                                   const GapAnalysis& gap);
/// Same, computing the gap vector first.
FixedPointReport fixed_point_check(const GdrOperator& T, const Vec& x, double tol);

/// P_A x.
Vec shadow(const GdrOperator& T, const Vec& x);

}  // namespace gdr

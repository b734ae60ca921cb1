#include "gdr/operators.hpp"

#include <cmath>

namespace gdr {

double beta_hat(double lambda, double mu)
{
    if (lambda == 2.0 || mu == 2.0) return 0.0;
    return 1.0 / (lambda / (2.0 - lambda) + mu / (2.0 - mu));
}

GdrOperator::GdrOperator(ProjectableSet a, ProjectableSet b, double lambda, double mu, double alpha)
    : a_(std::move(a)), b_(std::move(b)), lambda_(lambda), mu_(mu), alpha_(alpha)
{
    if (a_.dim() != b_.dim())
        throw DimensionMismatch(static_cast<std::size_t>(a_.dim()),
                                static_cast<std::size_t>(b_.dim()), "GdrOperator");
    if (!(lambda > 0.0 && lambda <= 2.0) || !(mu > 0.0 && mu <= 2.0))
        throw InvalidArgument("GdrOperator: lambda and mu must lie in ]0, 2]");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw InvalidArgument("GdrOperator: alpha must be > 0");
    beta_hat_ = gdr::beta_hat(lambda, mu);
    eta_ = 1.0 - alpha + alpha * (1.0 - lambda) * (1.0 - mu);
}

Vec GdrOperator::apply(const Vec& x) const
{
    const Vec z = relaxed_project(a_, lambda_, x);
    // an overflowing reflection would otherwise reach P_B as a bad argument
    if (!z.allFinite()) throw NumericAbort("gDR step: non-finite intermediate point");
    const Vec y = relaxed_project(b_, mu_, z);
    return (1.0 - alpha_) * x + alpha_ * y;
}

Vec gdr_step(const GdrOperator& T, const Vec& x) { return T.apply(x); }

const char* to_string(NamedKind kind)
{
    switch (kind) {
    case NamedKind::AlternatingProjections: return "ap";
    case NamedKind::ClassicalDR: return "dr";
    case NamedKind::RAAR: return "raar";
    case NamedKind::AffineCombo: return "affine_combo";
    }
    return "unknown";
}

GdrOperator named_operator(NamedKind kind, const ProjectableSet& a, const ProjectableSet& b,
                           double param)
{
    switch (kind) {
    case NamedKind::AlternatingProjections: return GdrOperator(a, b, 1.0, 1.0, 1.0);
    case NamedKind::ClassicalDR: return GdrOperator(a, b, 2.0, 2.0, 0.5);
    case NamedKind::RAAR:
        if (!(param > 0.0 && param <= 1.0)) throw InvalidArgument("RAAR: parameter must lie in ]0, 1]");
        return GdrOperator(a, b, 2.0, 2.0 * param, 0.5);
    case NamedKind::AffineCombo:
        if (!b.is_affine()) throw InvalidArgument("AffineCombo: B must be affine");
        if (!(param > 0.0 && param <= 1.0))
            throw InvalidArgument("AffineCombo: parameter must lie in ]0, 1]");
        return GdrOperator(a, b, 1.0 + param, 1.0 + param, 1.0 / (1.0 + param));
    }
    throw InvalidArgument("named_operator: unknown kind");
}

double raar_identity_check(const ProjectableSet& a, const ProjectableSet& b, double alpha,
                           const Vec& x)
{
    const GdrOperator T = named_operator(NamedKind::RAAR, a, b, alpha);
    const Vec pa = a.project(x);
    const Vec ra = 2.0 * pa - x;
    const Vec rbra = 2.0 * b.project(ra) - ra;
    const Vec rhs = (1.0 - alpha) * pa + 0.5 * alpha * (x + rbra);
    return (T.apply(x) - rhs).norm();
}

bool GapAnalysis::in_e(const ProjectableSet& A, const ProjectableSet& B, const Vec& x,
                       double tol) const
{
    return A.contains(x, tol) && B.contains(x + g, tol);
}

bool GapAnalysis::in_f(const ProjectableSet& A, const ProjectableSet& B, const Vec& x,
                       double tol) const
{
    return B.contains(x, tol) && A.contains(x - g, tol);
}

GapAnalysis compute_gap(const ProjectableSet& a, const ProjectableSet& b, double tol, int max_iter,
                        const std::optional<Vec>& start)
{
    if (!a.is_convex() || !b.is_convex()) throw InvalidArgument("compute_gap: sets must be convex");
    if (a.dim() != b.dim())
        throw DimensionMismatch(static_cast<std::size_t>(a.dim()),
                                static_cast<std::size_t>(b.dim()), "compute_gap");
    GapAnalysis out;
    out.tol = tol;
    Vec cur = a.project(start ? *start : Vec::Zero(a.dim()));
    for (int it = 1; it <= max_iter; ++it) {
        const Vec next = a.project(b.project(cur));
        if (!next.allFinite()) throw NumericAbort("compute_gap: non-finite iterate");
        const double move = (next - cur).norm();
        cur = next;
        out.iterations = it;
        if (move < tol) {
            out.converged = true;
            break;
        }
    }
    out.a = cur;
    out.b = b.project(cur);
    out.g = out.b - out.a;
    return out;
}

const char* to_string(FixedPointStructure s)
{
    switch (s) {
    case FixedPointStructure::NotApplicable: return "not_applicable";
    case FixedPointStructure::Holds: return "holds";
    case FixedPointStructure::Fails: return "fails";
    }
    return "unknown";
}

FixedPointReport fixed_point_check(const GdrOperator& T, const Vec& x, double tol,
                                   const GapAnalysis& gap)
{
    FixedPointReport r;
    r.residual = (x - T.apply(x)).norm();
    r.is_fixed = r.residual <= tol;
    if (!T.is_convex() || std::min(T.lambda(), T.mu()) >= 2.0) return r;

    require_dim(gap.g, x.size(), "fixed_point_check");
    const Vec pa = T.set_a().project(x);
    const double scale = T.mu() / (T.lambda() + T.mu() - T.lambda() * T.mu());
    r.shadow_gap_distance = T.set_b().distance(pa + gap.g);
    r.displacement_error = ((x - pa) - scale * gap.g).norm();
    r.classification = r.shadow_gap_distance <= tol && r.displacement_error <= tol
                           ? FixedPointStructure::Holds
                           : FixedPointStructure::Fails;
    return r;
}

FixedPointReport fixed_point_check(const GdrOperator& T, const Vec& x, double tol)
{
    if (!T.is_convex() || std::min(T.lambda(), T.mu()) >= 2.0) {
        GapAnalysis none;
        none.g = Vec::Zero(x.size());
        return fixed_point_check(T, x, tol, none);
    }
    return fixed_point_check(T, x, tol, compute_gap(T.set_a(), T.set_b()));
}

Vec shadow(const GdrOperator& T, const Vec& x) { return T.set_a().project(x); }

}  // namespace gdr

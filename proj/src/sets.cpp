#include "rsfp/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rsfp/errors.hpp"

namespace rsfp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dim(const ConvexSet& S, const Vec& x, const char* op) {
    if (static_cast<int>(x.size()) != S.dim)
        throw PreconditionError(std::string(op) + ": point dimension " +
                                std::to_string(x.size()) + " does not match set dimension " +
                                std::to_string(S.dim));
}

Vec basis_vec(int d, int i, double v = 1.0) {
    Vec e(d, 0.0);
    e[i] = v;
    return e;
}

// Projection onto a single halfspace {z : <g,z> <= h}.
Vec project_halfspace(const Vec& x, const Vec& g, double h) {
    const double v = dot(g, x) - h;
    if (v <= 0.0) return x;
    Vec z = x;
    axpy(-v / dot(g, g), g, z);
    return z;
}

double max_violation(const HalfspaceSystem& sys, const Vec& x) {
    double worst = 0.0;
    for (int i = 0; i < sys.G.rows; ++i) {
        const Vec g = sys.G.row(i);
        worst = std::max(worst, (dot(g, x) - sys.h[i]) / norm(g));
    }
    return worst;
}

}  // namespace

ConvexSet ConvexSet::nonneg_orthant(int d) {
    ConvexSet s;
    s.kind = SetKind::NonnegOrthant;
    s.dim = d;
    return s;
}

ConvexSet ConvexSet::nonpos_orthant(int d) {
    ConvexSet s;
    s.kind = SetKind::NonposOrthant;
    s.dim = d;
    return s;
}

ConvexSet ConvexSet::box(Vec lo, Vec hi) {
    ConvexSet s;
    s.kind = SetKind::Box;
    s.dim = static_cast<int>(lo.size());
    s.lo = std::move(lo);
    s.hi = std::move(hi);
    return s;
}

ConvexSet ConvexSet::ball(Vec center, double radius) {
    ConvexSet s;
    s.kind = SetKind::Ball;
    s.dim = static_cast<int>(center.size());
    s.center = std::move(center);
    s.radius = radius;
    return s;
}

ConvexSet ConvexSet::halfspaces(Mat G, Vec h) {
    ConvexSet s;
    s.kind = SetKind::Halfspaces;
    s.dim = G.cols;
    s.G = std::move(G);
    s.h = std::move(h);
    return s;
}

ConvexSet ConvexSet::fingen_cone(std::vector<Vec> generators) {
    ConvexSet s;
    s.kind = SetKind::FinGenCone;
    s.dim = generators.empty() ? 0 : static_cast<int>(generators.front().size());
    s.generators = std::move(generators);
    return s;
}

ConvexSet ConvexSet::singleton(Vec point) {
    ConvexSet s;
    s.kind = SetKind::Singleton;
    s.dim = static_cast<int>(point.size());
    s.point = std::move(point);
    return s;
}

ConvexSet ConvexSet::whole_space(int d) {
    ConvexSet s;
    s.kind = SetKind::WholeSpace;
    s.dim = d;
    return s;
}

std::string ConvexSet::kind_name() const {
    switch (kind) {
        case SetKind::NonnegOrthant: return "nonneg_orthant";
        case SetKind::NonposOrthant: return "nonpos_orthant";
        case SetKind::Box: return "box";
        case SetKind::Ball: return "ball";
        case SetKind::Halfspaces: return "halfspaces";
        case SetKind::FinGenCone: return "fingen_cone";
        case SetKind::Singleton: return "singleton";
        case SetKind::WholeSpace: return "whole";
    }
    return "?";
}

bool ConvexSet::is_cone() const {
    switch (kind) {
        case SetKind::NonnegOrthant:
        case SetKind::NonposOrthant:
        case SetKind::FinGenCone:
        case SetKind::WholeSpace:
            return true;
        case SetKind::Halfspaces: {
            for (double v : h)
                if (v != 0.0) return false;
            return true;
        }
        case SetKind::Singleton: {
            for (double v : point)
                if (v != 0.0) return false;
            return true;  // {0}
        }
        default:
            return false;
    }
}

bool ConvexSet::is_polyhedral() const {
    switch (kind) {
        case SetKind::NonnegOrthant:
        case SetKind::NonposOrthant:
        case SetKind::Box:
        case SetKind::Halfspaces:
        case SetKind::Singleton:
        case SetKind::WholeSpace:
            return true;
        default:
            return false;
    }
}

void ConvexSet::validate() const {
    if (dim < 1) throw SchemaError("set dimension must be >= 1");
    switch (kind) {
        case SetKind::Box:
            if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
                throw SchemaError("box payload dimension mismatch");
            if (!all_finite(lo) || !all_finite(hi)) throw SchemaError("box bounds must be finite");
            for (int i = 0; i < dim; ++i)
                if (lo[i] > hi[i]) throw SchemaError("box requires lo <= hi componentwise");
            break;
        case SetKind::Ball:
            if (static_cast<int>(center.size()) != dim)
                throw SchemaError("ball payload dimension mismatch");
            if (!all_finite(center) || !std::isfinite(radius))
                throw SchemaError("ball payload must be finite");
            if (radius < 0.0) throw SchemaError("ball radius must be >= 0");
            break;
        case SetKind::Halfspaces:
            if (G.cols != dim || G.rows != static_cast<int>(h.size()) || G.rows < 1)
                throw SchemaError("halfspaces payload dimension mismatch");
            if (!all_finite(G) || !all_finite(h)) throw SchemaError("halfspaces must be finite");
            for (int i = 0; i < G.rows; ++i)
                if (norm(G.row(i)) == 0.0) throw SchemaError("halfspaces rows must be nonzero");
            break;
        case SetKind::FinGenCone:
            for (const Vec& g : generators) {
                if (static_cast<int>(g.size()) != dim)
                    throw SchemaError("fingen_cone generator dimension mismatch");
                if (!all_finite(g)) throw SchemaError("fingen_cone generators must be finite");
            }
            break;
        case SetKind::Singleton:
            if (static_cast<int>(point.size()) != dim)
                throw SchemaError("singleton payload dimension mismatch");
            if (!all_finite(point)) throw SchemaError("singleton point must be finite");
            break;
        default:
            break;
    }
}

Projection project(const ConvexSet& S, const Vec& x, const Tolerances& tol) {
    require_dim(S, x, "project");
    switch (S.kind) {
        case SetKind::NonnegOrthant: {
            Vec p = x;
            for (double& v : p) v = std::max(0.0, v);
            return {p, norm_diff(x, p)};
        }
        case SetKind::NonposOrthant: {
            Vec p = x;
            for (double& v : p) v = std::min(0.0, v);
            return {p, norm_diff(x, p)};
        }
        case SetKind::Box: {
            Vec p = x;
            for (int i = 0; i < S.dim; ++i) p[i] = std::clamp(p[i], S.lo[i], S.hi[i]);
            return {p, norm_diff(x, p)};
        }
        case SetKind::Ball: {
            const Vec d = sub(x, S.center);
            const double nd = norm(d);
            if (nd <= S.radius) return {x, 0.0};
            Vec p = S.center;
            axpy(S.radius / nd, d, p);
            return {p, nd - S.radius};
        }
        case SetKind::Singleton:
            return {S.point, norm_diff(x, S.point)};
        case SetKind::WholeSpace:
            return {x, 0.0};
        case SetKind::Halfspaces: {
            // One violated row whose projection is feasible settles the
            // problem exactly; otherwise run Dykstra.
            int violated = -1;
            int nviol = 0;
            for (int i = 0; i < S.G.rows; ++i) {
                if (dot(S.G.row(i), x) - S.h[i] > 0.0) {
                    violated = i;
                    ++nviol;
                }
            }
            if (nviol == 0) return {x, 0.0};
            const HalfspaceSystem sys{S.G, S.h, S.dim};
            if (nviol == 1) {
                Vec z = project_halfspace(x, S.G.row(violated), S.h[violated]);
                if (max_violation(sys, z) <= tol.feas) return {z, norm_diff(x, z)};
            }
            DykstraResult r = dykstra_halfspaces(sys, x, tol);
            if (!r.converged)
                throw NonConvergence("project: Dykstra did not converge (gap " +
                                         std::to_string(r.violation) + ")",
                                     r.point, r.violation);
            return {r.point, r.distance};
        }
        case SetKind::FinGenCone: {
            std::vector<Vec> gens;
            for (const Vec& g : S.generators)
                if (norm(g) > 0.0) gens.push_back(g);
            if (gens.empty()) {
                Vec origin(S.dim, 0.0);
                return {origin, norm(x)};
            }
            NnlsResult r = nnls_min(gens, x, tol.proj, tol.max_proj_iter);
            if (!r.converged)
                throw NonConvergence("project: cone NNLS did not converge", r.point, r.residual);
            return {r.point, r.residual};
        }
    }
    throw Error("project: unreachable");
}

double distance(const ConvexSet& S, const Vec& x, const Tolerances& tol) {
    return project(S, x, tol).distance;
}

bool contains(const ConvexSet& S, const Vec& x, double tol_feas, const Tolerances& tol) {
    require_dim(S, x, "contains");
    switch (S.kind) {
        case SetKind::NonnegOrthant:
            return std::all_of(x.begin(), x.end(), [&](double v) { return v >= -tol_feas; });
        case SetKind::NonposOrthant:
            return std::all_of(x.begin(), x.end(), [&](double v) { return v <= tol_feas; });
        case SetKind::Box: {
            for (int i = 0; i < S.dim; ++i)
                if (x[i] < S.lo[i] - tol_feas || x[i] > S.hi[i] + tol_feas) return false;
            return true;
        }
        case SetKind::Ball:
            return norm_diff(x, S.center) <= S.radius + tol_feas;
        case SetKind::Singleton:
            return norm_diff(x, S.point) <= tol_feas;
        case SetKind::WholeSpace:
            return true;
        case SetKind::Halfspaces: {
            for (int i = 0; i < S.G.rows; ++i) {
                const Vec g = S.G.row(i);
                if (dot(g, x) - S.h[i] > tol_feas * norm(g)) return false;
            }
            return true;
        }
        case SetKind::FinGenCone:
            return distance(S, x, tol) <= tol_feas;
    }
    throw Error("contains: unreachable");
}

double support(const ConvexSet& S, const Vec& u, const Tolerances& tol) {
    require_dim(S, u, "support");
    switch (S.kind) {
        case SetKind::Box: {
            double s = 0.0;
            for (int i = 0; i < S.dim; ++i) s += std::max(S.lo[i] * u[i], S.hi[i] * u[i]);
            return s;
        }
        case SetKind::Ball:
            return dot(S.center, u) + S.radius * norm(u);
        case SetKind::Singleton:
            return dot(S.point, u);
        case SetKind::NonnegOrthant:
            for (double v : u)
                if (v > tol.dual) return kInf;
            return 0.0;
        case SetKind::NonposOrthant:
            for (double v : u)
                if (v < -tol.dual) return kInf;
            return 0.0;
        case SetKind::FinGenCone:
            // u in the polar iff <g,u> <= 0 for every generator.
            for (const Vec& g : S.generators)
                if (dot(g, u) > tol.dual * std::max(1.0, norm(g))) return kInf;
            return 0.0;
        case SetKind::WholeSpace:
            return norm(u) <= tol.dual ? 0.0 : kInf;
        case SetKind::Halfspaces: {
            if (!S.is_cone())
                throw UnsupportedOperation("support: general halfspace systems are unsupported");
            std::vector<Vec> rows;
            for (int i = 0; i < S.G.rows; ++i) rows.push_back(S.G.row(i));
            return polar_membership(rows, u, tol.dual) ? 0.0 : kInf;
        }
    }
    throw Error("support: unreachable");
}

namespace {

void push_unique_ray(std::vector<Vec>& out, const Vec& candidate) {
    const double n = norm(candidate);
    if (n < 1e-12) return;
    const Vec c = scaled(candidate, 1.0 / n);
    for (const Vec& g : out) {
        const Vec gn = unit(g);
        if (norm_diff(gn, c) < 1e-9) return;
    }
    out.push_back(c);
}

// Extreme rays of the pointed cone {y in R^r : R y <= 0}, R full column rank.
// Standard algebraic test: a ray lies in the kernel of r-1 independent rows.
std::vector<Vec> pointed_cone_rays(const Mat& R, double tol) {
    const int r = R.cols;
    std::vector<Vec> rays;
    double scale = 1.0;
    for (double v : R.a) scale = std::max(scale, std::fabs(v));
    auto feasible = [&](const Vec& y) {
        for (int i = 0; i < R.rows; ++i)
            if (dot(R.row(i), y) > tol * scale) return false;
        return true;
    };
    if (r == 1) {
        for (double s : {1.0, -1.0}) {
            Vec y{s};
            if (feasible(y)) push_unique_ray(rays, y);
        }
        return rays;
    }
    std::vector<int> idx(r - 1);
    // Enumerate (r-1)-subsets of rows.
    std::vector<int> comb(r - 1);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
        Mat sub(r - 1, r);
        for (int i = 0; i < r - 1; ++i)
            for (int j = 0; j < r; ++j) sub(i, j) = R(comb[i], j);
        const std::vector<Vec> ns = nullspace_basis(sub, tol);
        if (ns.size() == 1) {
            if (feasible(ns[0])) push_unique_ray(rays, ns[0]);
            const Vec neg = scaled(ns[0], -1.0);
            if (feasible(neg)) push_unique_ray(rays, neg);
        }
        // next combination
        int i = r - 2;
        while (i >= 0 && comb[i] == R.rows - (r - 1) + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < r - 1; ++j) comb[j] = comb[j - 1] + 1;
    }
    return rays;
}

}  // namespace

std::vector<Vec> polar_generators(const ConvexSet& S) {
    switch (S.kind) {
        case SetKind::NonnegOrthant: {
            std::vector<Vec> g;
            for (int i = 0; i < S.dim; ++i) g.push_back(basis_vec(S.dim, i, -1.0));
            return g;
        }
        case SetKind::NonposOrthant: {
            std::vector<Vec> g;
            for (int i = 0; i < S.dim; ++i) g.push_back(basis_vec(S.dim, i, 1.0));
            return g;
        }
        case SetKind::WholeSpace:
            return {};
        case SetKind::Halfspaces: {
            if (!S.is_cone())
                throw UnsupportedOperation("polar_generators: halfspace set is not a cone");
            // Farkas: the polar of {x : Gx <= 0} is the cone spanned by the rows.
            std::vector<Vec> g;
            for (int i = 0; i < S.G.rows; ++i) g.push_back(S.G.row(i));
            return g;
        }
        case SetKind::Singleton: {
            if (!S.is_cone())
                throw UnsupportedOperation("polar_generators: singleton set is not a cone");
            // polar of {0} is the whole space
            std::vector<Vec> g;
            for (int i = 0; i < S.dim; ++i) {
                g.push_back(basis_vec(S.dim, i, 1.0));
                g.push_back(basis_vec(S.dim, i, -1.0));
            }
            return g;
        }
        case SetKind::FinGenCone: {
            std::vector<Vec> gens;
            for (const Vec& g : S.generators)
                if (norm(g) > 0.0) gens.push_back(g);
            std::vector<Vec> out;
            if (gens.empty()) {
                // polar of {0}
                for (int i = 0; i < S.dim; ++i) {
                    out.push_back(basis_vec(S.dim, i, 1.0));
                    out.push_back(basis_vec(S.dim, i, -1.0));
                }
                return out;
            }
            // Split the polar into the lineality part (orthogonal complement
            // of span{gens}) and a pointed cone inside the span.
            Mat Grows(static_cast<int>(gens.size()), S.dim);
            for (size_t i = 0; i < gens.size(); ++i)
                for (int j = 0; j < S.dim; ++j) Grows(static_cast<int>(i), j) = gens[i][j];
            for (const Vec& nvec : nullspace_basis(Grows)) {
                out.push_back(nvec);
                out.push_back(scaled(nvec, -1.0));
            }
            const std::vector<Vec> B = orthonormal_span(gens);
            const int r = static_cast<int>(B.size());
            Mat R(static_cast<int>(gens.size()), r);
            for (size_t i = 0; i < gens.size(); ++i)
                for (int j = 0; j < r; ++j) R(static_cast<int>(i), j) = dot(gens[i], B[j]);
            for (const Vec& y : pointed_cone_rays(R, 1e-10)) {
                Vec u(S.dim, 0.0);
                for (int j = 0; j < r; ++j) axpy(y[j], B[j], u);
                out.push_back(u);
            }
            return out;
        }
        default:
            throw UnsupportedOperation("polar_generators: " + S.kind_name() + " is not a cone variant");
    }
}

std::vector<Vec> normal_cone_generators(const ConvexSet& S, const Vec& x, double tol_active,
                                        const Tolerances& tol) {
    require_dim(S, x, "normal_cone_generators");
    if (!contains(S, x, tol.feas, tol))
        throw PreconditionError("normal_cone_generators: point is not in the set");
    std::vector<Vec> out;
    switch (S.kind) {
        case SetKind::NonnegOrthant:
            for (int i = 0; i < S.dim; ++i)
                if (x[i] <= tol_active) out.push_back(basis_vec(S.dim, i, -1.0));
            return out;
        case SetKind::NonposOrthant:
            for (int i = 0; i < S.dim; ++i)
                if (x[i] >= -tol_active) out.push_back(basis_vec(S.dim, i, 1.0));
            return out;
        case SetKind::Box:
            for (int i = 0; i < S.dim; ++i) {
                if (x[i] <= S.lo[i] + tol_active) out.push_back(basis_vec(S.dim, i, -1.0));
                if (x[i] >= S.hi[i] - tol_active) out.push_back(basis_vec(S.dim, i, 1.0));
            }
            return out;
        case SetKind::Halfspaces:
            for (int i = 0; i < S.G.rows; ++i) {
                const Vec g = S.G.row(i);
                if (std::fabs(dot(g, x) - S.h[i]) <= tol_active * norm(g)) out.push_back(g);
            }
            return out;
        case SetKind::Singleton:
            for (int i = 0; i < S.dim; ++i) {
                out.push_back(basis_vec(S.dim, i, 1.0));
                out.push_back(basis_vec(S.dim, i, -1.0));
            }
            return out;
        case SetKind::WholeSpace:
            return out;
        case SetKind::Ball: {
            if (S.radius <= tol_active) {
                for (int i = 0; i < S.dim; ++i) {
                    out.push_back(basis_vec(S.dim, i, 1.0));
                    out.push_back(basis_vec(S.dim, i, -1.0));
                }
                return out;
            }
            const Vec d = sub(x, S.center);
            if (norm(d) >= S.radius - tol_active * std::max(1.0, S.radius))
                out.push_back(unit(d));
            return out;
        }
        case SetKind::FinGenCone:
            throw UnsupportedOperation("normal_cone_generators: fingen_cone is unsupported");
    }
    throw Error("normal_cone_generators: unreachable");
}

Vec simplex_project(const Vec& w) {
    if (w.empty()) throw PreconditionError("simplex_project: empty vector");
    Vec u = w;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    int rho = 0;
    for (size_t j = 0; j < u.size(); ++j) {
        css += u[j];
        const double t = (1.0 - css) / static_cast<double>(j + 1);
        if (u[j] + t > 0.0) {
            rho = static_cast<int>(j + 1);
            theta = t;
        }
    }
    (void)rho;
    Vec out = w;
    for (double& v : out) v = std::max(0.0, v + theta);
    return out;
}

bool polar_membership(const std::vector<Vec>& gens, const Vec& v, double tol_dual, int max_iter) {
    if (gens.empty()) return norm(v) <= tol_dual;
    const NnlsResult r = nnls_min(gens, v, std::min(1e-12, tol_dual * 1e-3), max_iter);
    return r.residual <= tol_dual;
}

HalfspaceSystem polyhedral_rows(const ConvexSet& S) {
    HalfspaceSystem sys;
    sys.dim = S.dim;
    switch (S.kind) {
        case SetKind::NonnegOrthant: {
            sys.G = Mat(S.dim, S.dim);
            sys.h.assign(S.dim, 0.0);
            for (int i = 0; i < S.dim; ++i) sys.G(i, i) = -1.0;
            return sys;
        }
        case SetKind::NonposOrthant: {
            sys.G = Mat::identity(S.dim);
            sys.h.assign(S.dim, 0.0);
            return sys;
        }
        case SetKind::Box: {
            sys.G = Mat(2 * S.dim, S.dim);
            sys.h.assign(2 * S.dim, 0.0);
            for (int i = 0; i < S.dim; ++i) {
                sys.G(i, i) = 1.0;
                sys.h[i] = S.hi[i];
                sys.G(S.dim + i, i) = -1.0;
                sys.h[S.dim + i] = -S.lo[i];
            }
            return sys;
        }
        case SetKind::Halfspaces:
            sys.G = S.G;
            sys.h = S.h;
            return sys;
        case SetKind::Singleton: {
            sys.G = Mat(2 * S.dim, S.dim);
            sys.h.assign(2 * S.dim, 0.0);
            for (int i = 0; i < S.dim; ++i) {
                sys.G(i, i) = 1.0;
                sys.h[i] = S.point[i];
                sys.G(S.dim + i, i) = -1.0;
                sys.h[S.dim + i] = -S.point[i];
            }
            return sys;
        }
        case SetKind::WholeSpace: {
            sys.G = Mat(0, S.dim);
            sys.h.clear();
            return sys;
        }
        default:
            throw UnsupportedOperation("polyhedral_rows: " + S.kind_name() + " is not polyhedral");
    }
}

DykstraResult dykstra_halfspaces(const HalfspaceSystem& sys, const Vec& x, const Tolerances& tol) {
    const int m = sys.G.rows;
    if (m == 0) return {x, 0.0, 0, true, 0.0, 0.0};
    std::vector<Vec> rows;
    rows.reserve(m);
    for (int i = 0; i < m; ++i) rows.push_back(sys.G.row(i));

    Vec cur = x;
    std::vector<Vec> corr(m, Vec(x.size(), 0.0));
    int pass = 0;
    double move = kInf, viol = kInf;
    for (; pass < tol.max_proj_iter; ++pass) {
        const Vec start = cur;
        for (int i = 0; i < m; ++i) {
            Vec y = add(cur, corr[i]);
            Vec z = project_halfspace(y, rows[i], sys.h[i]);
            corr[i] = sub(y, z);
            cur = std::move(z);
        }
        move = norm_diff(cur, start);
        viol = max_violation(sys, cur);
        if (move < tol.proj && viol < tol.feas) {
            return {cur, norm_diff(x, cur), pass + 1, true, viol, move};
        }
    }
    return {cur, norm_diff(x, cur), pass, false, viol, move};
}

NnlsResult nnls_min(const std::vector<Vec>& cols, const Vec& target, double stop_tol,
                    int max_iter) {
    const int k = static_cast<int>(cols.size());
    if (k == 0) throw PreconditionError("nnls_min: no columns");
    Mat gram(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) gram(i, j) = dot(cols[i], cols[j]);
    const double L = std::max(1e-300, lambda_extremes_sym(gram).lambda_max);
    Vec gt(k);
    for (int i = 0; i < k; ++i) gt[i] = dot(cols[i], target);

    Vec c(k, 0.0);
    auto point_of = [&](const Vec& coeffs) {
        Vec p(target.size(), 0.0);
        for (int i = 0; i < k; ++i) axpy(coeffs[i], cols[i], p);
        return p;
    };
    int it = 0;
    bool converged = false;
    for (; it < max_iter; ++it) {
        // gradient of 1/2 ||sum c_i col_i - target||^2
        Vec grad = matvec(gram, c);
        axpy(-1.0, gt, grad);
        Vec next = c;
        axpy(-1.0 / L, grad, next);
        for (double& v : next) v = std::max(0.0, v);
        const double move = norm_diff(next, c);
        c = std::move(next);
        if (move <= stop_tol * std::max(1.0, norm(c))) {
            converged = true;
            ++it;
            break;
        }
    }
    const Vec p = point_of(c);
    return {c, p, norm_diff(p, target), it, converged};
}

}  // namespace rsfp

#pragma once

#include <string>
#include <vector>

#include "rsfp/linalg.hpp"

namespace rsfp {

// Tolerances shared across the geometric and certification routines. All
// overridable per problem; defaults follow the library-wide conventions.
struct Tolerances {
    double feas = 1e-9;       // feasibility / region classification
    double proj = 1e-10;      // iterative projection accuracy
    double eig = 1e-12;       // Jacobi off-diagonal stop
    double active = 1e-8;     // active-constraint detection
    double dual = 1e-8;       // polar membership residual
    int max_proj_iter = 100000;
    int max_minnorm_iter = 10000;
};

enum class SetKind {
    NonnegOrthant,
    NonposOrthant,
    Box,
    Ball,
    Halfspaces,
    FinGenCone,
    Singleton,
    WholeSpace,
};

// A closed convex set in one of the supported descriptions. Only the payload
// fields of the active kind are meaningful.
struct ConvexSet {
    SetKind kind = SetKind::WholeSpace;
    int dim = 0;
    Vec lo, hi;                   // Box
    Vec center;                   // Ball
    double radius = 0.0;          // Ball
    Mat G;                        // Halfspaces {x : Gx <= h}
    Vec h;                        // Halfspaces
    std::vector<Vec> generators;  // FinGenCone
    Vec point;                    // Singleton

    static ConvexSet nonneg_orthant(int d);
    static ConvexSet nonpos_orthant(int d);
    static ConvexSet box(Vec lo, Vec hi);
    static ConvexSet ball(Vec center, double radius);
    static ConvexSet halfspaces(Mat G, Vec h);
    static ConvexSet fingen_cone(std::vector<Vec> generators);
    static ConvexSet singleton(Vec point);
    static ConvexSet whole_space(int d);

    std::string kind_name() const;
    bool is_cone() const;        // closed under nonnegative scaling
    bool is_polyhedral() const;  // expressible as finitely many halfspaces
    void validate() const;
};

struct Projection {
    Vec point;
    double distance;
};

// Euclidean nearest point. Closed form for all variants except Halfspaces
// with several rows (Dykstra) and FinGenCone (nonnegative least squares);
// those throw NonConvergence past tol.max_proj_iter.
Projection project(const ConvexSet& S, const Vec& x, const Tolerances& tol = {});

double distance(const ConvexSet& S, const Vec& x, const Tolerances& tol = {});

// Per-variant membership test (no projection for the closed-form kinds).
bool contains(const ConvexSet& S, const Vec& x, double tol_feas, const Tolerances& tol = {});

// Support function sup_{y in S} <y,u>. Returns +infinity outside the domain.
// Supported: Box, Ball, Singleton, orthants, FinGenCone, polyhedral cones
// (Halfspaces with h = 0) and WholeSpace.
double support(const ConvexSet& S, const Vec& u, const Tolerances& tol = {});

// Generators of the negative dual cone S°. Cone variants only.
std::vector<Vec> polar_generators(const ConvexSet& S);

// Generators of the normal cone N(x; S) at a feasible x. Polyhedral variants
// and Ball; every constraint within tol_active of active is included.
std::vector<Vec> normal_cone_generators(const ConvexSet& S, const Vec& x, double tol_active,
                                        const Tolerances& tol = {});

// Euclidean projection onto the unit simplex {w >= 0, sum w = 1}.
Vec simplex_project(const Vec& w);

// Is v in the cone generated by gens? Decided by the residual of a
// nonnegative least-squares fit (projected gradient).
bool polar_membership(const std::vector<Vec>& gens, const Vec& v, double tol_dual,
                      int max_iter = 100000);

// Halfspace description {x : Gx <= h} of a polyhedral variant.
struct HalfspaceSystem {
    Mat G;
    Vec h;
    int dim = 0;
};
HalfspaceSystem polyhedral_rows(const ConvexSet& S);

struct DykstraResult {
    Vec point;
    double distance;   // from the query point
    int iterations;    // full passes over the constraint list
    bool converged;
    double violation;  // max constraint violation at the final iterate
    double last_move;  // iterate displacement over the final pass
};

// Dykstra's alternating projection scheme over the individual halfspaces.
// Converges to the exact projection when the intersection is nonempty; a
// non-vanishing violation after the iteration budget signals a likely-empty
// intersection.
DykstraResult dykstra_halfspaces(const HalfspaceSystem& sys, const Vec& x,
                                 const Tolerances& tol = {});

struct NnlsResult {
    Vec coeffs;
    Vec point;        // sum coeffs_i cols_i
    double residual;  // || point - target ||
    int iterations;
    bool converged;
};

// min_{c >= 0} || sum_i c_i cols_i - target || by projected gradient with
// fixed step 1/L, L = lambda_max of the Gram matrix.
NnlsResult nnls_min(const std::vector<Vec>& cols, const Vec& target, double stop_tol,
                    int max_iter);

}  // namespace rsfp

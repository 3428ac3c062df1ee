#pragma once

#include <initializer_list>
#include <vector>

namespace rsfp {

using Vec = std::vector<double>;

// Dense row-major matrix. Everything here is desk scale (a handful of rows
// and columns), so no attempt is made at blocking or sparsity.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0);
    static Mat identity(int n);
    static Mat from_rows(std::initializer_list<std::initializer_list<double>> rws);

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    Vec row(int i) const;
};

bool all_finite(const Vec& v);
bool all_finite(const Mat& m);

double dot(const Vec& x, const Vec& y);
double norm(const Vec& x);
double norm_diff(const Vec& x, const Vec& y);
Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);
Vec scaled(const Vec& x, double s);
void axpy(double a, const Vec& x, Vec& y);  // y += a x
Vec unit(const Vec& x);                     // x / ||x||, throws on zero

Vec matvec(const Mat& A, const Vec& x);
Vec mat_tvec(const Mat& A, const Vec& y);  // A^T y
Mat mat_mul(const Mat& A, const Mat& B);
Mat transpose(const Mat& A);
Mat aat(const Mat& A);  // A A^T
Mat ata(const Mat& A);  // A^T A

struct EigExtremes {
    double lambda_min;
    double lambda_max;
    int sweeps;
};

// Smallest and largest eigenvalue of a symmetric matrix by cyclic Jacobi
// rotations. Rejects matrices whose relative asymmetry exceeds 1e-12; the
// computation runs on the symmetrized copy. Sweeps stop when the off-diagonal
// Frobenius norm falls below tol_eig.
EigExtremes lambda_extremes_sym(const Mat& S, double tol_eig = 1e-12);

// sqrt(lambda_max(A^T A)), the spectral norm.
double operator_norm(const Mat& A);

// Exact covering bound: min_{||u||=1} ||A^T u|| = sqrt(max(0, lambda_min(A A^T))).
double sur(const Mat& A);

int rank(const Mat& A, double tol = 1e-10);

// Orthonormal basis of the null space of A (solutions of Ax = 0).
std::vector<Vec> nullspace_basis(const Mat& A, double tol = 1e-10);

// Orthonormal basis of span{vs} by modified Gram-Schmidt.
std::vector<Vec> orthonormal_span(const std::vector<Vec>& vs, double tol = 1e-10);

}  // namespace rsfp

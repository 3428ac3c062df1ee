#include "rsfp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "rsfp/errors.hpp"

namespace rsfp {

Mat::Mat(int r, int c, double fill) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {
    if (r < 0 || c < 0) throw PreconditionError("matrix dimensions must be nonnegative");
}

Mat Mat::identity(int n) {
    Mat m(n, n, 0.0);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<double>> rws) {
    Mat m(static_cast<int>(rws.size()), rws.size() ? static_cast<int>(rws.begin()->size()) : 0);
    int i = 0;
    for (const auto& r : rws) {
        if (static_cast<int>(r.size()) != m.cols)
            throw PreconditionError("ragged row list in matrix literal");
        int j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

Vec Mat::row(int i) const {
    Vec r(cols);
    for (int j = 0; j < cols; ++j) r[j] = (*this)(i, j);
    return r;
}

bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

bool all_finite(const Mat& m) {
    for (double x : m.a)
        if (!std::isfinite(x)) return false;
    return true;
}

double dot(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw PreconditionError("dot: dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm(const Vec& x) { return std::sqrt(dot(x, x)); }

double norm_diff(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw PreconditionError("norm_diff: dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Vec add(const Vec& x, const Vec& y) {
    Vec z = x;
    axpy(1.0, y, z);
    return z;
}

Vec sub(const Vec& x, const Vec& y) {
    Vec z = x;
    axpy(-1.0, y, z);
    return z;
}

Vec scaled(const Vec& x, double s) {
    Vec z = x;
    for (double& v : z) v *= s;
    return z;
}

void axpy(double a, const Vec& x, Vec& y) {
    if (x.size() != y.size()) throw PreconditionError("axpy: dimension mismatch");
    for (size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

Vec unit(const Vec& x) {
    const double n = norm(x);
    if (n == 0.0) throw PreconditionError("unit: zero vector");
    return scaled(x, 1.0 / n);
}

Vec matvec(const Mat& A, const Vec& x) {
    if (static_cast<int>(x.size()) != A.cols) throw PreconditionError("matvec: dimension mismatch");
    Vec y(A.rows, 0.0);
    for (int i = 0; i < A.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < A.cols; ++j) s += A(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Vec mat_tvec(const Mat& A, const Vec& y) {
    if (static_cast<int>(y.size()) != A.rows) throw PreconditionError("mat_tvec: dimension mismatch");
    Vec x(A.cols, 0.0);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) x[j] += A(i, j) * y[i];
    return x;
}

Mat mat_mul(const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw PreconditionError("mat_mul: dimension mismatch");
    Mat C(A.rows, B.cols, 0.0);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const double aik = A(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < B.cols; ++j) C(i, j) += aik * B(k, j);
        }
    return C;
}

Mat transpose(const Mat& A) {
    Mat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

Mat aat(const Mat& A) { return mat_mul(A, transpose(A)); }
Mat ata(const Mat& A) { return mat_mul(transpose(A), A); }

namespace {

double offdiag_fro(const Mat& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (i != j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

}  // namespace

EigExtremes lambda_extremes_sym(const Mat& S, double tol_eig) {
    if (S.rows != S.cols) throw PreconditionError("lambda_extremes_sym: matrix must be square");
    if (!all_finite(S)) throw PreconditionError("lambda_extremes_sym: non-finite entries");
    const int n = S.rows;
    double scale = 1.0, asym = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            scale = std::max(scale, std::fabs(S(i, j)));
            asym = std::max(asym, std::fabs(S(i, j) - S(j, i)));
        }
    if (asym > 1e-12 * scale)
        throw PreconditionError("lambda_extremes_sym: input is not symmetric");

    Mat A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = 0.5 * (S(i, j) + S(j, i));

    if (n == 1) return {A(0, 0), A(0, 0), 0};

    const int max_sweeps = 64;
    int sweep = 0;
    while (offdiag_fro(A) > tol_eig && sweep < max_sweeps) {
        ++sweep;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (apq == 0.0) continue;
                const double app = A(p, p), aqq = A(q, q);
                const double theta = 0.5 * (aqq - app) / apq;
                // Stable tangent of the rotation angle.
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;
            }
        }
    }
    if (offdiag_fro(A) > tol_eig) {
        throw NonConvergence("lambda_extremes_sym: Jacobi sweeps did not converge", A.a,
                             offdiag_fro(A));
    }
    double lmin = A(0, 0), lmax = A(0, 0);
    for (int i = 1; i < n; ++i) {
        lmin = std::min(lmin, A(i, i));
        lmax = std::max(lmax, A(i, i));
    }
    return {lmin, lmax, sweep};
}

double operator_norm(const Mat& A) {
    if (A.rows == 0 || A.cols == 0) throw PreconditionError("operator_norm: empty matrix");
    const EigExtremes e = lambda_extremes_sym(ata(A));
    return std::sqrt(std::max(0.0, e.lambda_max));
}

double sur(const Mat& A) {
    if (A.rows == 0 || A.cols == 0) throw PreconditionError("sur: empty matrix");
    const EigExtremes e = lambda_extremes_sym(aat(A));
    return std::sqrt(std::max(0.0, e.lambda_min));
}

namespace {

// Row echelon with partial pivoting; returns pivot column indices.
std::vector<int> echelon(Mat& M, double tol) {
    std::vector<int> pivots;
    int r = 0;
    double scale = 1.0;
    for (double v : M.a) scale = std::max(scale, std::fabs(v));
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int best = r;
        for (int i = r + 1; i < M.rows; ++i)
            if (std::fabs(M(i, c)) > std::fabs(M(best, c))) best = i;
        if (std::fabs(M(best, c)) <= tol * scale) continue;
        if (best != r)
            for (int j = 0; j < M.cols; ++j) std::swap(M(r, j), M(best, j));
        const double piv = M(r, c);
        for (int j = 0; j < M.cols; ++j) M(r, j) /= piv;
        for (int i = 0; i < M.rows; ++i) {
            if (i == r) continue;
            const double f = M(i, c);
            if (f == 0.0) continue;
            for (int j = 0; j < M.cols; ++j) M(i, j) -= f * M(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int rank(const Mat& A, double tol) {
    Mat M = A;
    return static_cast<int>(echelon(M, tol).size());
}

std::vector<Vec> nullspace_basis(const Mat& A, double tol) {
    Mat M = A;
    const std::vector<int> pivots = echelon(M, tol);
    std::vector<bool> is_pivot(A.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int c = 0; c < A.cols; ++c) {
        if (is_pivot[c]) continue;
        Vec v(A.cols, 0.0);
        v[c] = 1.0;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -M(static_cast<int>(r), c);
        basis.push_back(v);
    }
    return orthonormal_span(basis, tol);
}

std::vector<Vec> orthonormal_span(const std::vector<Vec>& vs, double tol) {
    std::vector<Vec> basis;
    for (const Vec& v0 : vs) {
        Vec v = v0;
        for (const Vec& b : basis) axpy(-dot(v, b), b, v);
        // Second pass for numerical safety.
        for (const Vec& b : basis) axpy(-dot(v, b), b, v);
        const double n = norm(v);
        if (n > tol * std::max(1.0, norm(v0))) basis.push_back(scaled(v, 1.0 / n));
    }
    return basis;
}

}  // namespace rsfp

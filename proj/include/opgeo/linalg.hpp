#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "opgeo/rng.hpp"

namespace opgeo {

using Vec = std::vector<double>;

// Dense row-major matrix. Everything here is desk-scale (dim <= ~32),
// so the kernels favor determinism and accuracy over speed.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Vec col(std::size_t j) const {
        Vec v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_col(std::size_t j, const Vec& v) {
        for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = v[i];
    }
};

bool operator==(const Mat& x, const Mat& y);

double dot(const Vec& x, const Vec& y);
double nrm2(const Vec& x);
Vec scaled(const Vec& x, double c);
Vec vadd(const Vec& x, const Vec& y);
Vec vsub(const Vec& x, const Vec& y);

Vec matvec(const Mat& m, const Vec& x);
Vec matTvec(const Mat& m, const Vec& x);
Mat matmul(const Mat& x, const Mat& y);
Mat transpose(const Mat& m);
Mat madd(const Mat& x, const Mat& y);
Mat msub(const Mat& x, const Mat& y);
Mat mscale(const Mat& m, double c);
double max_abs(const Mat& m);

// Rank-one update m + c * u v^T.
Mat rank1_update(const Mat& m, double c, const Vec& u, const Vec& v);

// A = U diag(sigma) V^T with U (m x m), V (n x n) orthogonal and sigma
// descending of length min(m, n). One-sided Jacobi; columns of U and V are
// sign-fixed so the first coordinate above 1e-12 in each V column is
// positive, making results reproducible.
struct SvdResult {
    Mat u;
    Vec sigma;
    Mat v;
};
SvdResult svd(const Mat& m);

double spectral_norm(const Mat& m);

// Symmetric eigendecomposition, eigenvalues descending, eigenvectors as
// columns. Cyclic two-sided Jacobi.
struct EighResult {
    Vec values;
    Mat vectors;
};
EighResult eigh_jacobi(const Mat& sym);

// Lower-triangular L with A = L L^T, or nullopt if A is not positive
// definite (pivot <= tol * max diagonal).
std::optional<Mat> cholesky(const Mat& sym, double tol = 1e-12);

Vec solve_lower(const Mat& l, const Vec& b);   // L y = b
Vec solve_upper_t(const Mat& l, const Vec& b); // L^T y = b

// Dense solve with partial pivoting; throws NumericalFailure on a
// numerically singular system.
Vec solve(const Mat& m, const Vec& b);
Mat inverse(const Mat& m);

// Orthonormal basis of the hyperplane orthogonal to a unit vector x,
// returned as an n x (n-1) matrix of columns (Householder complement).
Mat householder_complement(const Vec& x);

// Haar-distributed orthogonal matrix (Gram-Schmidt of a Gaussian sample,
// diagonal sign fix).
Mat random_orthogonal(std::size_t n, SplitMix64& rng);

}  // namespace opgeo

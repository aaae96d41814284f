#include "opgeo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "opgeo/errors.hpp"

namespace opgeo {

bool operator==(const Mat& x, const Mat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}

double dot(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double nrm2(const Vec& x) { return std::sqrt(dot(x, x)); }

Vec scaled(const Vec& x, double c) {
    Vec r(x);
    for (double& v : r) v *= c;
    return r;
}

Vec vadd(const Vec& x, const Vec& y) {
    Vec r(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
    return r;
}

Vec vsub(const Vec& x, const Vec& y) {
    Vec r(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    return r;
}

Vec matvec(const Mat& m, const Vec& x) {
    Vec r(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

Vec matTvec(const Mat& m, const Vec& x) {
    Vec r(m.cols, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r[j] += m(i, j) * x[i];
    return r;
}

Mat matmul(const Mat& x, const Mat& y) {
    Mat r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const double v = x(i, k);
            if (v == 0.0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
        }
    return r;
}

Mat transpose(const Mat& m) {
    Mat r(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r(j, i) = m(i, j);
    return r;
}

Mat madd(const Mat& x, const Mat& y) {
    Mat r(x);
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

Mat msub(const Mat& x, const Mat& y) {
    Mat r(x);
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

Mat mscale(const Mat& m, double c) {
    Mat r(m);
    for (double& v : r.a) v *= c;
    return r;
}

double max_abs(const Mat& m) {
    double r = 0.0;
    for (double v : m.a) r = std::max(r, std::abs(v));
    return r;
}

Mat rank1_update(const Mat& m, double c, const Vec& u, const Vec& v) {
    Mat r(m);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r(i, j) += c * u[i] * v[j];
    return r;
}

namespace {

// Flip column sign so the first coordinate with magnitude above 1e-12 is
// positive. Returns the applied sign.
double canonical_sign(Mat& m, std::size_t j) {
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (std::abs(m(i, j)) > 1e-12) return m(i, j) > 0.0 ? 1.0 : -1.0;
    }
    return 1.0;
}

// Fill zero columns of u (in place) with an orthonormal completion against
// all other columns. For each fill the standard basis vector with the
// largest residual after orthogonalization is taken (first index on ties),
// so the result is deterministic; the best residual is at least 1/sqrt(m).
void complete_orthonormal(Mat& u, std::vector<bool> needs_fill) {
    const std::size_t m = u.rows;
    auto orthogonalized = [&](std::size_t probe, std::size_t target) {
        Vec cand(m, 0.0);
        cand[probe] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < u.cols; ++k) {
                if (k == target || needs_fill[k]) continue;
                const Vec ck = u.col(k);
                const double proj = dot(cand, ck);
                for (std::size_t i = 0; i < m; ++i) cand[i] -= proj * ck[i];
            }
        }
        return cand;
    };
    for (std::size_t j = 0; j < u.cols; ++j) {
        if (!needs_fill[j]) continue;
        double best_norm = 0.0;
        std::size_t best_probe = m;
        for (std::size_t probe = 0; probe < m; ++probe) {
            const double nn = nrm2(orthogonalized(probe, j));
            if (nn > best_norm) {
                best_norm = nn;
                best_probe = probe;
            }
        }
        if (best_probe == m || best_norm < 1e-3)
            throw NumericalFailure("orthonormal_completion", "could not complete basis");
        const Vec cand = orthogonalized(best_probe, j);
        u.set_col(j, scaled(cand, 1.0 / nrm2(cand)));
        needs_fill[j] = false;
    }
}

// One-sided Jacobi on an m x n matrix with m >= n. B's columns are driven
// to mutual orthogonality; accumulated rotations give V.
SvdResult svd_tall(const Mat& a) {
    const std::size_t m = a.rows, n = a.cols;
    Mat b(a);
    Mat v = Mat::identity(n);

    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    app += b(i, p) * b(i, p);
                    aqq += b(i, q) * b(i, q);
                    apq += b(i, p) * b(i, q);
                }
                if (std::abs(apq) <= 1e-300 ||
                    std::abs(apq) <= 1e-15 * std::sqrt(app * aqq))
                    continue;
                rotated = true;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double bp = b(i, p), bq = b(i, q);
                    b(i, p) = cs * bp - sn * bq;
                    b(i, q) = sn * bp + cs * bq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = cs * vp - sn * vq;
                    v(i, q) = sn * vp + cs * vq;
                }
            }
        }
        if (!rotated) break;
    }

    Vec sig(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += b(i, j) * b(i, j);
        sig[j] = std::sqrt(s);
    }

    // Stable descending order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return sig[i] > sig[j]; });

    SvdResult r;
    r.sigma.resize(n);
    r.u = Mat(m, m);
    r.v = Mat(n, n);
    std::vector<bool> u_fill(m, true);
    const double tiny = 1e-300;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        r.sigma[j] = sig[src];
        r.v.set_col(j, v.col(src));
        if (sig[src] > tiny && j < m) {
            r.u.set_col(j, scaled(b.col(src), 1.0 / sig[src]));
            u_fill[j] = false;
        }
    }
    complete_orthonormal(r.u, u_fill);

    for (std::size_t j = 0; j < n; ++j) {
        const double s = canonical_sign(r.v, j);
        if (s < 0.0) {
            for (std::size_t i = 0; i < n; ++i) r.v(i, j) = -r.v(i, j);
            if (j < m)
                for (std::size_t i = 0; i < m; ++i) r.u(i, j) = -r.u(i, j);
        }
    }
    return r;
}

}  // namespace

SvdResult svd(const Mat& m) {
    if (m.rows == 0 || m.cols == 0)
        throw InvalidInput("empty_matrix", "svd of an empty matrix");
    if (m.rows >= m.cols) return svd_tall(m);
    SvdResult t = svd_tall(transpose(m));
    SvdResult r;
    r.u = t.v;
    r.v = t.u;
    r.sigma = t.sigma;
    // Keep the V-column sign convention after the swap.
    for (std::size_t j = 0; j < r.v.cols; ++j) {
        const double s = canonical_sign(r.v, j);
        if (s < 0.0) {
            for (std::size_t i = 0; i < r.v.rows; ++i) r.v(i, j) = -r.v(i, j);
            if (j < r.u.cols)
                for (std::size_t i = 0; i < r.u.rows; ++i) r.u(i, j) = -r.u(i, j);
        }
    }
    return r;
}

double spectral_norm(const Mat& m) {
    SvdResult s = svd(m);
    return s.sigma.empty() ? 0.0 : s.sigma[0];
}

EighResult eigh_jacobi(const Mat& sym) {
    const std::size_t n = sym.rows;
    Mat a(sym);
    Mat q = Mat::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (std::sqrt(off) <= 1e-15 * (1.0 + max_abs(a))) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t qq = p + 1; qq < n; ++qq) {
                if (std::abs(a(p, qq)) <= 1e-18 * (1.0 + max_abs(a))) continue;
                const double theta = (a(qq, qq) - a(p, p)) / (2.0 * a(p, qq));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, qq);
                    a(k, p) = cs * akp - sn * akq;
                    a(k, qq) = sn * akp + cs * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(qq, k);
                    a(p, k) = cs * apk - sn * aqk;
                    a(qq, k) = sn * apk + cs * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double qkp = q(k, p), qkq = q(k, qq);
                    q(k, p) = cs * qkp - sn * qkq;
                    q(k, qq) = sn * qkp + cs * qkq;
                }
            }
        }
    }
    Vec vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = a(i, i);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return vals[i] > vals[j]; });
    EighResult r;
    r.values.resize(n);
    r.vectors = Mat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        r.values[j] = vals[order[j]];
        r.vectors.set_col(j, q.col(order[j]));
        if (canonical_sign(r.vectors, j) < 0.0)
            for (std::size_t i = 0; i < n; ++i) r.vectors(i, j) = -r.vectors(i, j);
    }
    return r;
}

std::optional<Mat> cholesky(const Mat& sym, double tol) {
    const std::size_t n = sym.rows;
    double dmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) dmax = std::max(dmax, std::abs(sym(i, i)));
    Mat l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = sym(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (d <= tol * std::max(dmax, 1.0)) return std::nullopt;
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = sym(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

Vec solve_lower(const Mat& l, const Vec& b) {
    const std::size_t n = l.rows;
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    return y;
}

Vec solve_upper_t(const Mat& l, const Vec& b) {
    const std::size_t n = l.rows;
    Vec y(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * y[k];
        y[ii] = s / l(ii, ii);
    }
    return y;
}

Vec solve(const Mat& m, const Vec& b) {
    const std::size_t n = m.rows;
    Mat a(m);
    Vec x(b);
    std::vector<std::size_t> piv(n);
    std::iota(piv.begin(), piv.end(), 0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > std::abs(a(best, col))) best = i;
        if (std::abs(a(best, col)) < 1e-300)
            throw NumericalFailure("singular_system", "singular linear system");
        if (best != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(best, j));
            std::swap(x[col], x[best]);
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            const double f = a(i, col) / a(col, col);
            a(i, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) a(i, j) -= f * a(col, j);
            x[i] -= f * x[col];
        }
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
        x[ii] = s / a(ii, ii);
    }
    return x;
}

Mat inverse(const Mat& m) {
    const std::size_t n = m.rows;
    Mat r(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec e(n, 0.0);
        e[j] = 1.0;
        r.set_col(j, solve(m, e));
    }
    return r;
}

Mat householder_complement(const Vec& x) {
    const std::size_t n = x.size();
    // u = x + sign(x0) e0 avoids cancellation; H = I - 2 u u^T / <u,u>
    // maps e0 to -sign(x0) x, so columns 1..n-1 of H span the complement.
    Vec u(x);
    const double s = (x[0] >= 0.0) ? 1.0 : -1.0;
    u[0] += s;
    const double uu = dot(u, u);
    Mat r(n, n - 1);
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double e = (i == j) ? 1.0 : 0.0;
            r(i, j - 1) = e - 2.0 * u[i] * u[j] / uu;
        }
    }
    return r;
}

Mat random_orthogonal(std::size_t n, SplitMix64& rng) {
    Mat q(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec c(n);
        for (double& v : c) v = rng.gaussian();
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < j; ++k) {
                const Vec ck = q.col(k);
                const double p = dot(c, ck);
                for (std::size_t i = 0; i < n; ++i) c[i] -= p * ck[i];
            }
        const double nn = nrm2(c);
        if (nn < 1e-8) return random_orthogonal(n, rng);  // essentially never
        q.set_col(j, scaled(c, 1.0 / nn));
    }
    return q;
}

}  // namespace opgeo

#include "opgeo/basis.hpp"

#include <algorithm>
#include <cmath>

#include "opgeo/errors.hpp"

namespace opgeo {

namespace {

void require_hilbert(const OperatorSpec& op) {
    if (!is_euclidean_like(op.domain) || !is_euclidean_like(op.codomain))
        throw InvalidInput("not_euclidean",
                           "the deflation basis requires Euclidean domain and codomain");
}

}  // namespace

Vec subspace_representative(const Mat& basis_cols) {
    const std::size_t n = basis_cols.rows;
    for (std::size_t j = 0; j < n; ++j) {
        // Projection of e_j onto the subspace; its normalization maximizes
        // |v_j| over unit vectors of the subspace.
        Vec q(n, 0.0);
        for (std::size_t c = 0; c < basis_cols.cols; ++c) {
            const Vec col = basis_cols.col(c);
            const double coeff = col[j];
            for (std::size_t i = 0; i < n; ++i) q[i] += coeff * col[i];
        }
        const double nn = nrm2(q);
        if (nn > 1e-9) return canonical_unit(scaled(q, 1.0 / nn));
    }
    throw NumericalFailure("empty_subspace", "no representative in a null basis");
}

BasisResult greedy_orthogonal_basis(const OperatorSpec& op, std::uint64_t /*seed*/) {
    require_hilbert(op);
    const Mat m = whitened_matrix(op);
    const std::size_t n = op.domain.dim;

    Mat complement = Mat::identity(n);
    std::vector<Vec> vectors_w;
    Vec norms(n, 0.0);

    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t mdim = complement.cols;
        const Mat me = matmul(m, complement);
        const SvdResult s = svd(me);
        // Pad to the complement dimension: a wide restriction has a null
        // space beyond its listed singular values.
        Vec sig(mdim, 0.0);
        for (std::size_t j = 0; j < s.sigma.size() && j < mdim; ++j) sig[j] = s.sigma[j];
        const double top = sig[0];
        std::size_t mult = 1;
        while (mult < mdim && sig[mult] >= top - 1e-10 * std::max(1.0, top)) ++mult;
        // Ambient span of the tied top singular subspace.
        Mat w(n, mult);
        for (std::size_t j = 0; j < mult; ++j)
            w.set_col(j, matvec(complement, s.v.col(j)));
        const Vec x = subspace_representative(w);
        vectors_w.push_back(x);
        norms[step] = nrm2(matvec(m, x));

        if (mdim == 1) break;
        // Shrink the complement by the chosen direction.
        Vec t = matTvec(complement, x);
        t = scaled(t, 1.0 / nrm2(t));
        complement = matmul(complement, householder_complement(t));
    }

    // The maximum over each smaller complement cannot exceed the previous
    // one; clamp the rounding wobble, and treat anything beyond rounding
    // scale as a genuine defect.
    for (std::size_t i = 1; i < n; ++i) {
        if (norms[i] > norms[i - 1]) {
            if (norms[i] > norms[i - 1] + 1e-10 * (1.0 + norms[0]))
                throw NumericalFailure("deflation_monotonicity",
                                       "deflation produced an increasing image norm");
            norms[i] = norms[i - 1];
        }
    }

    BasisResult r;
    r.image_norms = norms;
    r.image_gram = Mat(n, n);
    std::vector<Vec> images;
    images.reserve(n);
    for (const Vec& xw : vectors_w) images.push_back(matvec(m, xw));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.image_gram(i, j) = dot(images[i], images[j]);
    for (const Vec& xw : vectors_w) {
        Vec x = domain_from_whitened(op.domain, xw);
        x = scaled(x, 1.0 / norm(op.domain, x));
        r.vectors.push_back(canonical_unit(x));
    }
    return r;
}

bool verify_orthogonality_on_basis(const OperatorSpec& op, const BasisResult& result,
                                   double tol) {
    require_hilbert(op);
    if (result.vectors.size() != op.domain.dim)
        throw InvalidInput("dimension_mismatch", "basis size does not match the operator");
    const Mat m = whitened_matrix(op);
    std::vector<Vec> images;
    double max_sq = 0.0;
    for (const Vec& x : result.vectors) {
        detail::require_dim(op.domain, x);
        images.push_back(matvec(m, domain_to_whitened(op.domain, x)));
        max_sq = std::max(max_sq, dot(images.back(), images.back()));
    }
    const double bound = tol * (max_sq + 2.220446049250313e-16);
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j)
            if (std::abs(dot(images[i], images[j])) > bound) return false;
    return true;
}

SvdComparison compare_with_svd(const OperatorSpec& op) {
    require_hilbert(op);
    const Mat m = whitened_matrix(op);
    const std::size_t n = op.domain.dim;
    const SvdResult s = svd(m);
    const BasisResult greedy = greedy_orthogonal_basis(op);

    SvdComparison cmp;
    cmp.singular_values.assign(n, 0.0);
    for (std::size_t i = 0; i < s.sigma.size() && i < n; ++i)
        cmp.singular_values[i] = s.sigma[i];

    for (std::size_t i = 0; i < n; ++i)
        cmp.max_value_gap = std::max(
            cmp.max_value_gap, std::abs(greedy.image_norms[i] - cmp.singular_values[i]));

    const double top = cmp.singular_values.empty() ? 0.0 : cmp.singular_values[0];
    cmp.rank = 0;
    for (double sv : cmp.singular_values)
        if (sv > 1e-10 * std::max(1.0, top)) ++cmp.rank;
    cmp.rank_deficient = cmp.rank < n;

    // Group equal singular values and compare spans through principal
    // angles: cosines are the singular values of W1^T W2.
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && cmp.singular_values[start] - cmp.singular_values[end] <=
                              1e-8 * std::max(1.0, top))
            ++end;
        Mat w1(n, end - start), w2(n, end - start);
        for (std::size_t j = start; j < end; ++j) {
            Vec g = domain_to_whitened(op.domain, greedy.vectors[j]);
            g = scaled(g, 1.0 / nrm2(g));
            w1.set_col(j - start, g);
            w2.set_col(j - start, s.v.col(j));
        }
        const SvdResult cos_svd = svd(matmul(transpose(w1), w2));
        double min_cos = 1.0;
        for (double c : cos_svd.sigma) min_cos = std::min(min_cos, c);
        min_cos = std::clamp(min_cos, -1.0, 1.0);
        cmp.subspace_angles.push_back(std::acos(min_cos));
        start = end;
    }
    return cmp;
}

}  // namespace opgeo

#include "mubx/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mubx {

namespace {

constexpr double kHermTol = 1e-12;       // input gate
constexpr double kOffNormTol = 1e-13;    // convergence: off-diagonal Frobenius norm
constexpr int kMaxSweeps = 100;

double offdiagonal_norm(const Matrix& a) {
    const int n = a.dim();
    double s = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c) s += std::norm(a(r, c));
    return std::sqrt(2.0 * s);
}

// One cyclic Jacobi pass: for every (p,q) apply the exact 2x2 unitary that
// diagonalizes the [[a_pp, a_pq],[a_qp, a_qq]] block, a <- J^dag a J.
void sweep(Matrix& a, Matrix* v) {
    const int n = a.dim();
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const cplx g = a(p, q);
            const double ag = std::abs(g);
            if (ag == 0.0) continue;
            const double alpha = a(p, p).real();
            const double beta = a(q, q).real();
            const double mid = 0.5 * (alpha + beta);
            const double rad = std::hypot(0.5 * (alpha - beta), ag);
            const double lam = mid + rad;  // larger eigenvalue of the block
            // eigenvector of the block for lam; pick the better-conditioned form
            cplx v1, v2;
            if (lam - alpha >= lam - beta) {
                v1 = g;
                v2 = cplx(lam - alpha, 0.0);
            } else {
                v1 = cplx(lam - beta, 0.0);
                v2 = std::conj(g);
            }
            const double nrm = std::sqrt(std::norm(v1) + std::norm(v2));
            v1 /= nrm;
            v2 /= nrm;
            // J = [[v1, -conj(v2)], [v2, conj(v1)]]
            const cplx jpp = v1, jpq = -std::conj(v2), jqp = v2, jqq = std::conj(v1);
            // column update  a <- a J
            for (int i = 0; i < n; ++i) {
                const cplx aip = a(i, p), aiq = a(i, q);
                a(i, p) = aip * jpp + aiq * jqp;
                a(i, q) = aip * jpq + aiq * jqq;
            }
            // row update  a <- J^dag a
            for (int j = 0; j < n; ++j) {
                const cplx apj = a(p, j), aqj = a(q, j);
                a(p, j) = std::conj(jpp) * apj + std::conj(jqp) * aqj;
                a(q, j) = std::conj(jpq) * apj + std::conj(jqq) * aqj;
            }
            a(p, q) = 0.0;
            a(q, p) = 0.0;
            a(p, p) = cplx(a(p, p).real(), 0.0);
            a(q, q) = cplx(a(q, q).real(), 0.0);
            if (v) {
                for (int i = 0; i < n; ++i) {
                    const cplx vip = (*v)(i, p), viq = (*v)(i, q);
                    (*v)(i, p) = vip * jpp + viq * jqp;
                    (*v)(i, q) = vip * jpq + viq * jqq;
                }
            }
        }
    }
}

Matrix hermitized_input(const Matrix& m) {
    if (!m.is_finite()) throw std::invalid_argument("eigensolver: non-finite entries");
    if (!m.is_hermitian(kHermTol))
        throw std::invalid_argument("eigensolver: input is not Hermitian within 1e-12");
    const int n = m.dim();
    Matrix a(n);
    for (int r = 0; r < n; ++r) {
        a(r, r) = cplx(m(r, r).real(), 0.0);
        for (int c = r + 1; c < n; ++c) {
            const cplx z = 0.5 * (m(r, c) + std::conj(m(c, r)));
            a(r, c) = z;
            a(c, r) = std::conj(z);
        }
    }
    return a;
}

void diagonalize(Matrix& a, Matrix* v) {
    for (int pass = 0; pass < kMaxSweeps; ++pass) {
        if (offdiagonal_norm(a) < kOffNormTol) return;
        sweep(a, v);
    }
    if (offdiagonal_norm(a) >= kOffNormTol)
        throw numerical_error("Jacobi eigensolver failed to converge");
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
    Matrix a = hermitized_input(m);
    diagonalize(a, nullptr);
    std::vector<double> vals(a.dim());
    for (int i = 0; i < a.dim(); ++i) vals[i] = a(i, i).real();
    std::sort(vals.begin(), vals.end());
    return vals;
}

EigenSystem hermitian_eigensystem(const Matrix& m) {
    Matrix a = hermitized_input(m);
    Matrix v = Matrix::identity(a.dim());
    diagonalize(a, &v);
    const int n = a.dim();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    EigenSystem es;
    es.values.resize(n);
    es.vectors = Matrix(n);
    for (int j = 0; j < n; ++j) {
        es.values[j] = a(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) es.vectors(i, j) = v(i, order[j]);
    }
    return es;
}

double min_eigenvalue(const Matrix& m) { return hermitian_eigenvalues(m).front(); }

bool is_psd(const Matrix& m, double tol) { return min_eigenvalue(m) >= -tol; }

}  // namespace mubx

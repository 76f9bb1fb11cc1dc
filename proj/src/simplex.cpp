#include "mubx/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mubx/eig.hpp"

namespace mubx {

namespace {

int mod(int a, int d) {
    int r = a % d;
    return r < 0 ? r + d : r;
}

cplx unit_phase(int num, int den) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(num) / den;
    return {std::cos(ang), std::sin(ang)};
}

void check_label(int d, WeylLabel label) {
    if (d <= 0) throw std::invalid_argument("weyl: dimension must be positive");
    if (label.k < 0 || label.k >= d || label.l < 0 || label.l >= d)
        throw std::invalid_argument("weyl: label out of range for d");
}

}  // namespace

Matrix weyl(int d, WeylLabel label) {
    check_label(d, label);
    Matrix w(d);
    for (int s = 0; s < d; ++s)
        w(mod(s - label.l, d), s) = unit_phase(mod(label.k * (s - label.l), d), d);
    return w;
}

std::vector<cplx> bell_state(int d) {
    std::vector<cplx> v(static_cast<size_t>(d) * d, 0.0);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) v[static_cast<size_t>(i) * d + i] = norm;
    return v;
}

Matrix bell_projector(int d, WeylLabel label) {
    check_label(d, label);
    // P_{k,l} = (1/d) sum_{s,t} w^{k(s-t)} |s, s-l><t, t-l|
    Matrix p(d * d);
    const double norm = 1.0 / d;
    for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t) {
            const int row = s * d + mod(s - label.l, d);
            const int col = t * d + mod(t - label.l, d);
            p(row, col) = norm * unit_phase(mod(label.k * (s - t), d), d);
        }
    return p;
}

double SimplexCoefficients::sum() const {
    double s = 0.0;
    for (double x : c) s += x;
    return s;
}

double SimplexCoefficients::min() const { return *std::min_element(c.begin(), c.end()); }

bool SimplexCoefficients::normalized(double tol) const {
    return static_cast<int>(c.size()) == d * d && std::abs(sum() - 1.0) <= tol;
}

Matrix simplex_state(const SimplexCoefficients& coeffs) {
    if (static_cast<int>(coeffs.c.size()) != coeffs.d * coeffs.d)
        throw std::invalid_argument("simplex_state: coefficient count must be d^2");
    if (!coeffs.normalized())
        throw std::invalid_argument("simplex_state: coefficients must sum to 1");
    const int d = coeffs.d;
    Matrix rho(d * d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
            const double ckl = coeffs.at(k, l);
            if (ckl == 0.0) continue;
            rho += ckl * bell_projector(d, {k, l});
        }
    return rho;
}

std::vector<double> simplex_pt_spectrum(const SimplexCoefficients& coeffs) {
    if (!coeffs.normalized())
        throw std::invalid_argument("simplex_pt_spectrum: coefficients must sum to 1");
    const int d = coeffs.d;
    std::vector<double> spectrum;
    spectrum.reserve(static_cast<size_t>(d) * d);
    for (int sigma = 0; sigma < d; ++sigma) {
        Matrix block(d);
        for (int a = 0; a < d; ++a)
            for (int c = 0; c < d; ++c) {
                const int l = mod(a + c - sigma, d);
                cplx e = 0.0;
                for (int k = 0; k < d; ++k)
                    e += coeffs.at(k, l) * unit_phase(mod(k * (a - c), d), d);
                block(a, c) = e / static_cast<double>(d);
            }
        for (double lam : hermitian_eigenvalues(block)) spectrum.push_back(lam);
    }
    std::sort(spectrum.begin(), spectrum.end());
    return spectrum;
}

SimplexCoefficients family_coefficients(const FamilyParams& p) {
    const int d = p.d;
    if (d < 2) throw std::invalid_argument("family_coefficients: d must be >= 2");
    // number of z-columns actually present in 2..d-2
    const int nz = std::max(0, d - 3);
    const double denom1 = static_cast<double>(d) * d - (d + 1);
    const double alpha =
        1.0 - p.q1 / denom1 - p.q2 / (d + 1) - p.q3 - static_cast<double>(nz) * p.q;

    SimplexCoefficients coeffs;
    coeffs.d = d;
    coeffs.c.assign(static_cast<size_t>(d) * d, alpha / (static_cast<double>(d) * d));
    coeffs.at(0, 0) += p.q1 / denom1;
    for (int i = 1; i < d; ++i) coeffs.at(i, 0) += p.q2 / (static_cast<double>(d + 1) * (d - 1));
    for (int i = 0; i < d; ++i) coeffs.at(i, 1) += p.q3 / d;
    for (int z = 2; z <= d - 2; ++z)
        for (int i = 0; i < d; ++i) coeffs.at(i, z) += p.q / d;
    return coeffs;
}

Matrix family_rho(const FamilyParams& p) { return simplex_state(family_coefficients(p)); }

TensorShape multipartite_shape(int d, int n) {
    return TensorShape(std::vector<int>(static_cast<size_t>(2) * n, d));
}

namespace {

void check_multipartite(int d, int n) {
    if (d < 2) throw std::invalid_argument("multipartite: d must be >= 2");
    if (n < 2)
        throw std::invalid_argument(
            "multipartite: n >= 2 pairs required (the vertex formula does not reduce to "
            "P_{k,l} at n=1)");
    double dim = 1.0;
    for (int i = 0; i < 2 * n; ++i) dim *= d;
    if (dim > 100.0)
        throw std::invalid_argument("multipartite: d^(2n) = " + std::to_string(dim) +
                                    " exceeds the size guard of 100");
}

}  // namespace

Matrix multipartite_vertex(int d, int n, WeylLabel label) {
    check_multipartite(d, n);
    check_label(d, label);
    int dim = 1;
    for (int i = 0; i < 2 * n; ++i) dim *= d;

    Matrix p00(dim);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
            const Matrix p = bell_projector(d, {k, l});
            Matrix m = p;
            for (int pair = 1; pair < n; ++pair) m = kron(m, p);
            p00 += m;
        }
    p00 *= 1.0 / (static_cast<double>(d) * d);
    if (label.k == 0 && label.l == 0) return p00;

    const Matrix u = kron(kron(Matrix::identity(d), weyl(d, label)), Matrix::identity(dim / (d * d)));
    return u * p00 * u.dagger();
}

MultipartiteVertices::MultipartiteVertices(int d, int n) : d_(d), n_(n) {
    check_multipartite(d, n);
    vertices_.reserve(static_cast<size_t>(d) * d);
    const Matrix p00 = multipartite_vertex(d, n, {0, 0});
    int dim = p00.dim();
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
            if (k == 0 && l == 0) {
                vertices_.push_back(p00);
                continue;
            }
            const Matrix u =
                kron(kron(Matrix::identity(d), weyl(d, {k, l})), Matrix::identity(dim / (d * d)));
            vertices_.push_back(u * p00 * u.dagger());
        }
}

const Matrix& MultipartiteVertices::at(WeylLabel label) const {
    check_label(d_, label);
    return vertices_[static_cast<size_t>(label.k) * d_ + label.l];
}

Matrix MultipartiteVertices::mix(const SimplexCoefficients& coeffs) const {
    if (coeffs.d != d_) throw std::invalid_argument("MultipartiteVertices: coefficient d mismatch");
    if (!coeffs.normalized())
        throw std::invalid_argument("MultipartiteVertices: coefficients must sum to 1");
    Matrix rho(vertices_.front().dim());
    for (int k = 0; k < d_; ++k)
        for (int l = 0; l < d_; ++l) {
            const double ckl = coeffs.at(k, l);
            if (ckl == 0.0) continue;
            rho += ckl * at({k, l});
        }
    return rho;
}

Matrix multipartite_family(const FamilyParams& p, int n) {
    return MultipartiteVertices(p.d, n).mix(family_coefficients(p));
}

void to_json(nlohmann::json& j, const FamilyParams& p) {
    j = nlohmann::json{{"d", p.d}, {"q1", p.q1}, {"q2", p.q2}, {"q3", p.q3}, {"q", p.q}};
}

void from_json(const nlohmann::json& j, FamilyParams& p) {
    p.d = j.at("d").get<int>();
    p.q1 = j.value("q1", 0.0);
    p.q2 = j.value("q2", 0.0);
    p.q3 = j.value("q3", 0.0);
    p.q = j.value("q", 0.0);
}

}  // namespace mubx

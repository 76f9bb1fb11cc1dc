// Weyl operators, Bell projectors, magic-simplex states, the four-parameter
// family rho[d], and the n-pair multipartite lift.
#pragma once

#include <vector>

#include <json.hpp>

#include "mubx/matrix.hpp"

namespace mubx {

struct WeylLabel {
    int k = 0;
    int l = 0;
};

// W_{k,l} |s> = w^{k(s-l)} |s-l mod d>, w = exp(2 pi i / d)
Matrix weyl(int d, WeylLabel label);

// (1/sqrt(d)) sum_i |ii>
std::vector<cplx> bell_state(int d);

// P_{k,l} = (1 x W_{k,l}) P_{0,0} (1 x W_{k,l})^dag
Matrix bell_projector(int d, WeylLabel label);

struct SimplexCoefficients {
    int d = 0;
    std::vector<double> c;  // row-major, c[k*d + l]

    double at(int k, int l) const { return c[static_cast<size_t>(k) * d + l]; }
    double& at(int k, int l) { return c[static_cast<size_t>(k) * d + l]; }
    double sum() const;
    double min() const;
    bool normalized(double tol = 1e-12) const;
};

// sum_{k,l} c_{k,l} P_{k,l}; rejects non-normalized coefficients
Matrix simplex_state(const SimplexCoefficients& coeffs);

// Eigenvalues of the partial transpose of simplex_state(coeffs), ascending.
// The PT of a Bell-diagonal state is block diagonal over the anti-diagonal
// index sigma = a+b mod d, with d x d blocks
//   M^sigma_{a,c} = (1/d) sum_k c_{k,(a+c-sigma) mod d} w^{k(a-c)},
// so the spectrum is the union of d small Hermitian problems.
std::vector<double> simplex_pt_spectrum(const SimplexCoefficients& coeffs);

struct FamilyParams {
    int d = 0;
    double q1 = 0.0, q2 = 0.0, q3 = 0.0, q = 0.0;
};

// Coefficients of the family state: a uniform background from the identity
// component plus weight q1 on P_{0,0}, q2 spread over P_{i,0} (i>=1), q3 over
// the l=1 column and q over columns l=2..d-2 (q has no effect for d <= 3).
SimplexCoefficients family_coefficients(const FamilyParams& p);

Matrix family_rho(const FamilyParams& p);

// P~_{k,l} for n >= 2 pairs: Weyl applied on the second factor of the first
// pair of P~_{0,0} = (1/d^2) sum P_{k,l}^(x n). Guarded to d^(2n) <= 100.
Matrix multipartite_vertex(int d, int n, WeylLabel label);

Matrix multipartite_family(const FamilyParams& p, int n);

// all d^2 vertices built once, for scans that mix many coefficient vectors
class MultipartiteVertices {
  public:
    MultipartiteVertices(int d, int n);
    int d() const { return d_; }
    int n() const { return n_; }
    const Matrix& at(WeylLabel label) const;
    Matrix mix(const SimplexCoefficients& coeffs) const;

  private:
    int d_, n_;
    std::vector<Matrix> vertices_;
};

TensorShape multipartite_shape(int d, int n);

void to_json(nlohmann::json& j, const FamilyParams& p);
void from_json(const nlohmann::json& j, FamilyParams& p);

}  // namespace mubx

// Dense complex square matrices plus the tensor-structure operations
// (Kronecker product, partial transpose, partial trace) used everywhere else.
#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace mubx {

using cplx = std::complex<double>;

class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {
        if (dim <= 0) throw std::invalid_argument("Matrix: dimension must be positive");
    }

    static Matrix identity(int dim) {
        Matrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }

    std::span<const cplx> data() const { return a_; }

    Matrix dagger() const;
    Matrix transpose() const;
    Matrix conjugate() const;
    cplx trace() const;

    // max entrywise |m - m^dagger|
    double hermiticity_deviation() const;
    bool is_hermitian(double tol = 1e-12) const { return hermiticity_deviation() <= tol; }
    bool is_finite() const;

    double max_abs() const;
    double max_abs_diff(const Matrix& other) const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cplx s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
    friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

    // m |v>
    std::vector<cplx> apply(std::span<const cplx> v) const;

  private:
    int dim_ = 0;
    std::vector<cplx> a_;
};

// <u|v> with the physics convention (u conjugated)
cplx inner(std::span<const cplx> u, std::span<const cplx> v);
// |u><v|
Matrix outer(std::span<const cplx> u, std::span<const cplx> v);
std::vector<cplx> kron_vec(std::span<const cplx> a, std::span<const cplx> b);

// Local dimensions of a tensor factorization, first factor slowest
// (row index r decomposes as r = ((i0*f1 + i1)*f2 + i2)...).
struct TensorShape {
    std::vector<int> factors;

    TensorShape() = default;
    TensorShape(std::initializer_list<int> f) : factors(f) {}
    explicit TensorShape(std::vector<int> f) : factors(std::move(f)) {}

    int dim() const;
    int count() const { return static_cast<int>(factors.size()); }
    // throws std::invalid_argument unless product of factors == matrix_dim
    void validate_for(int matrix_dim) const;
};

Matrix kron(const Matrix& a, const Matrix& b);

Matrix partial_transpose(const Matrix& rho, const TensorShape& shape, int subsystem);
Matrix partial_transpose(const Matrix& rho, const TensorShape& shape,
                         const std::vector<int>& subsystems);
Matrix partial_trace(const Matrix& rho, const TensorShape& shape, const std::vector<int>& keep);

}  // namespace mubx

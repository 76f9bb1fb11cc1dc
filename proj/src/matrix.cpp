#include "mubx/matrix.hpp"

#include <cmath>
#include <numeric>

namespace mubx {

Matrix Matrix::dagger() const {
    Matrix m(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) m(c, r) = (*this)(r, c);
    return m;
}

Matrix Matrix::conjugate() const {
    Matrix m(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) m(r, c) = std::conj((*this)(r, c));
    return m;
}

cplx Matrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double Matrix::hermiticity_deviation() const {
    double worst = 0.0;
    for (int r = 0; r < dim_; ++r)
        for (int c = r; c < dim_; ++c)
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return worst;
}

bool Matrix::is_finite() const {
    for (const cplx& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double Matrix::max_abs() const {
    double worst = 0.0;
    for (const cplx& z : a_) worst = std::max(worst, std::abs(z));
    return worst;
}

double Matrix::max_abs_diff(const Matrix& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double worst = 0.0;
    for (size_t i = 0; i < a_.size(); ++i) worst = std::max(worst, std::abs(a_[i] - other.a_[i]));
    return worst;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("Matrix +: dimension mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("Matrix -: dimension mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Matrix& Matrix::operator*=(cplx s) {
    for (cplx& z : a_) z *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("Matrix *: dimension mismatch");
    const int n = a.dim_;
    Matrix m(n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            const cplx ark = a(r, k);
            if (ark == cplx{}) continue;
            for (int c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
        }
    return m;
}

std::vector<cplx> Matrix::apply(std::span<const cplx> v) const {
    if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("apply: dimension mismatch");
    std::vector<cplx> out(dim_);
    for (int r = 0; r < dim_; ++r) {
        cplx s = 0.0;
        for (int c = 0; c < dim_; ++c) s += (*this)(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
    if (u.size() != v.size()) throw std::invalid_argument("inner: length mismatch");
    cplx s = 0.0;
    for (size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

Matrix outer(std::span<const cplx> u, std::span<const cplx> v) {
    if (u.size() != v.size()) throw std::invalid_argument("outer: length mismatch");
    Matrix m(static_cast<int>(u.size()));
    for (size_t r = 0; r < u.size(); ++r)
        for (size_t c = 0; c < v.size(); ++c)
            m(static_cast<int>(r), static_cast<int>(c)) = u[r] * std::conj(v[c]);
    return m;
}

std::vector<cplx> kron_vec(std::span<const cplx> a, std::span<const cplx> b) {
    std::vector<cplx> out(a.size() * b.size());
    size_t idx = 0;
    for (const cplx& x : a)
        for (const cplx& y : b) out[idx++] = x * y;
    return out;
}

int TensorShape::dim() const {
    int p = 1;
    for (int f : factors) {
        if (f <= 0) throw std::invalid_argument("TensorShape: factors must be positive");
        p *= f;
    }
    return p;
}

void TensorShape::validate_for(int matrix_dim) const {
    if (factors.empty() || dim() != matrix_dim)
        throw std::invalid_argument("TensorShape: factor product does not match matrix dimension");
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const int da = a.dim(), db = b.dim();
    Matrix m(da * db);
    for (int ra = 0; ra < da; ++ra)
        for (int ca = 0; ca < da; ++ca) {
            const cplx v = a(ra, ca);
            if (v == cplx{}) continue;
            for (int rb = 0; rb < db; ++rb)
                for (int cb = 0; cb < db; ++cb)
                    m(ra * db + rb, ca * db + cb) = v * b(rb, cb);
        }
    return m;
}

namespace {

// row/column index <-> per-factor digit decomposition, first factor slowest
void to_digits(int index, const std::vector<int>& factors, std::vector<int>& digits) {
    for (int f = static_cast<int>(factors.size()) - 1; f >= 0; --f) {
        digits[f] = index % factors[f];
        index /= factors[f];
    }
}

int from_digits(const std::vector<int>& digits, const std::vector<int>& factors) {
    int index = 0;
    for (size_t f = 0; f < factors.size(); ++f) index = index * factors[f] + digits[f];
    return index;
}

}  // namespace

Matrix partial_transpose(const Matrix& rho, const TensorShape& shape, int subsystem) {
    return partial_transpose(rho, shape, std::vector<int>{subsystem});
}

Matrix partial_transpose(const Matrix& rho, const TensorShape& shape,
                         const std::vector<int>& subsystems) {
    shape.validate_for(rho.dim());
    for (int s : subsystems)
        if (s < 0 || s >= shape.count())
            throw std::invalid_argument("partial_transpose: subsystem index out of range");
    const int n = rho.dim();
    const int k = shape.count();
    Matrix out(n);
    std::vector<int> rd(k), cd(k);
    for (int r = 0; r < n; ++r) {
        to_digits(r, shape.factors, rd);
        for (int c = 0; c < n; ++c) {
            to_digits(c, shape.factors, cd);
            std::vector<int> rd2 = rd, cd2 = cd;
            for (int s : subsystems) std::swap(rd2[s], cd2[s]);
            out(from_digits(rd2, shape.factors), from_digits(cd2, shape.factors)) = rho(r, c);
        }
    }
    return out;
}

Matrix partial_trace(const Matrix& rho, const TensorShape& shape, const std::vector<int>& keep) {
    shape.validate_for(rho.dim());
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
    std::vector<bool> kept(shape.count(), false);
    for (int s : keep) {
        if (s < 0 || s >= shape.count())
            throw std::invalid_argument("partial_trace: subsystem index out of range");
        kept[s] = true;
    }
    std::vector<int> keep_sorted;
    for (int f = 0; f < shape.count(); ++f)
        if (kept[f]) keep_sorted.push_back(f);

    std::vector<int> kept_factors;
    for (int f : keep_sorted) kept_factors.push_back(shape.factors[f]);
    TensorShape out_shape(kept_factors);
    Matrix out(out_shape.dim());

    const int n = rho.dim();
    const int k = shape.count();
    std::vector<int> rd(k), cd(k), ro(keep_sorted.size()), co(keep_sorted.size());
    for (int r = 0; r < n; ++r) {
        to_digits(r, shape.factors, rd);
        for (int c = 0; c < n; ++c) {
            to_digits(c, shape.factors, cd);
            bool diagonal_on_traced = true;
            for (int f = 0; f < k; ++f)
                if (!kept[f] && rd[f] != cd[f]) { diagonal_on_traced = false; break; }
            if (!diagonal_on_traced) continue;
            for (size_t i = 0; i < keep_sorted.size(); ++i) {
                ro[i] = rd[keep_sorted[i]];
                co[i] = cd[keep_sorted[i]];
            }
            out(from_digits(ro, out_shape.factors), from_digits(co, out_shape.factors)) += rho(r, c);
        }
    }
    return out;
}

}  // namespace mubx

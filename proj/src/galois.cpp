#include "mubx/galois.hpp"

#include <algorithm>

namespace mubx {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

int mod(int a, int p) {
    int r = a % p;
    return r < 0 ? r + p : r;
}

// evaluate polynomial (coeffs low->high) at x over GF(p)
int eval_poly(const std::vector<int>& poly, int x, int p) {
    int acc = 0;
    for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i) acc = mod(acc * x + poly[i], p);
    return acc;
}

}  // namespace

GaloisField GaloisField::make(int p, int m) {
    FieldSpec spec;
    spec.p = p;
    spec.m = m;
    if (m == 1) {
        spec.modulus = {0, 1};  // x
    } else if (p == 2 && m == 2) {
        spec.modulus = {1, 1, 1};  // x^2 + x + 1
    } else if (p == 2 && m == 3) {
        spec.modulus = {1, 1, 0, 1};  // x^3 + x + 1
    } else if (p == 3 && m == 2) {
        spec.modulus = {1, 0, 1};  // x^2 + 1
    } else {
        throw std::invalid_argument("GaloisField::make: no canonical modulus for GF(" +
                                    std::to_string(p) + "^" + std::to_string(m) + ")");
    }
    return GaloisField(spec);
}

GaloisField::GaloisField(FieldSpec spec) : spec_(std::move(spec)) {
    if (!is_prime(spec_.p)) throw std::invalid_argument("GaloisField: p must be prime");
    if (spec_.m < 1 || spec_.m > 3)
        throw std::invalid_argument("GaloisField: only degrees 1..3 are supported");
    if (static_cast<int>(spec_.modulus.size()) != spec_.m + 1)
        throw std::invalid_argument("GaloisField: modulus must have degree m");
    for (int& c : spec_.modulus) c = mod(c, spec_.p);
    if (spec_.modulus.back() != 1) throw std::invalid_argument("GaloisField: modulus must be monic");
    // degree 2 or 3 polynomials are irreducible iff they have no root
    if (spec_.m >= 2) {
        for (int x = 0; x < spec_.p; ++x)
            if (eval_poly(spec_.modulus, x, spec_.p) == 0)
                throw std::invalid_argument("GaloisField: modulus is reducible (has root " +
                                            std::to_string(x) + ")");
    }
    order_ = 1;
    for (int i = 0; i < spec_.m; ++i) order_ *= spec_.p;
}

void GaloisField::check_element(const FieldElement& a) const {
    if (static_cast<int>(a.coeffs.size()) != spec_.m)
        throw std::invalid_argument("FieldElement: wrong coefficient count for this field");
    for (int c : a.coeffs)
        if (c < 0 || c >= spec_.p) throw std::invalid_argument("FieldElement: coefficient not reduced");
}

FieldElement GaloisField::zero() const { return FieldElement{std::vector<int>(spec_.m, 0)}; }

FieldElement GaloisField::one() const {
    FieldElement e = zero();
    e.coeffs[0] = 1;
    return e;
}

FieldElement GaloisField::element(int index) const {
    if (index < 0 || index >= order_) throw std::invalid_argument("GaloisField: index out of range");
    FieldElement e = zero();
    for (int i = 0; i < spec_.m; ++i) {
        e.coeffs[i] = index % spec_.p;
        index /= spec_.p;
    }
    return e;
}

int GaloisField::index_of(const FieldElement& a) const {
    check_element(a);
    int idx = 0;
    for (int i = spec_.m - 1; i >= 0; --i) idx = idx * spec_.p + a.coeffs[i];
    return idx;
}

std::vector<FieldElement> GaloisField::elements() const {
    std::vector<FieldElement> out;
    out.reserve(order_);
    for (int i = 0; i < order_; ++i) out.push_back(element(i));
    return out;
}

bool GaloisField::is_zero(const FieldElement& a) const {
    check_element(a);
    return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](int c) { return c == 0; });
}

FieldElement GaloisField::add(const FieldElement& a, const FieldElement& b) const {
    check_element(a);
    check_element(b);
    FieldElement r = zero();
    for (int i = 0; i < spec_.m; ++i) r.coeffs[i] = mod(a.coeffs[i] + b.coeffs[i], spec_.p);
    return r;
}

FieldElement GaloisField::neg(const FieldElement& a) const {
    check_element(a);
    FieldElement r = zero();
    for (int i = 0; i < spec_.m; ++i) r.coeffs[i] = mod(-a.coeffs[i], spec_.p);
    return r;
}

FieldElement GaloisField::sub(const FieldElement& a, const FieldElement& b) const {
    return add(a, neg(b));
}

FieldElement GaloisField::mul(const FieldElement& a, const FieldElement& b) const {
    check_element(a);
    check_element(b);
    // schoolbook product then reduction by the monic modulus
    std::vector<int> prod(2 * spec_.m - 1, 0);
    for (int i = 0; i < spec_.m; ++i)
        for (int j = 0; j < spec_.m; ++j)
            prod[i + j] = mod(prod[i + j] + a.coeffs[i] * b.coeffs[j], spec_.p);
    for (int deg = static_cast<int>(prod.size()) - 1; deg >= spec_.m; --deg) {
        const int lead = prod[deg];
        if (lead == 0) continue;
        prod[deg] = 0;
        for (int i = 0; i < spec_.m; ++i)
            prod[deg - spec_.m + i] = mod(prod[deg - spec_.m + i] - lead * spec_.modulus[i], spec_.p);
    }
    FieldElement r = zero();
    for (int i = 0; i < spec_.m; ++i) r.coeffs[i] = prod[i];
    return r;
}

FieldElement GaloisField::pow(const FieldElement& a, std::uint64_t e) const {
    check_element(a);
    FieldElement base = a;
    FieldElement acc = one();
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

FieldElement GaloisField::inv(const FieldElement& a) const {
    if (is_zero(a)) throw std::invalid_argument("GaloisField: zero has no inverse");
    return pow(a, static_cast<std::uint64_t>(order_) - 2);
}

int GaloisField::trace(const FieldElement& a) const {
    check_element(a);
    FieldElement acc = zero();
    std::uint64_t pe = 1;
    for (int j = 0; j < spec_.m; ++j) {
        acc = add(acc, pow(a, pe));
        pe *= static_cast<std::uint64_t>(spec_.p);
    }
    for (int i = 1; i < spec_.m; ++i)
        if (acc.coeffs[i] != 0)
            throw std::logic_error("GaloisField::trace: value left the prime subfield");
    return acc.coeffs[0];
}

}  // namespace mubx

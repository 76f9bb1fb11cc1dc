// Exact arithmetic in small Galois fields GF(p^m), the index substrate for
// the Wootters-Fields bases. Elements are reduced coefficient vectors
// (coeffs[i] multiplies x^i), enumerated lexicographically with the highest
// degree most significant, so enumeration order equals sum coeffs[i]*p^i.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mubx {

struct FieldSpec {
    int p = 0;                 // prime characteristic
    int m = 0;                 // extension degree
    std::vector<int> modulus;  // monic degree-m polynomial, coeffs low->high, size m+1
};

struct FieldElement {
    std::vector<int> coeffs;  // length m, entries in [0, p)
    bool operator==(const FieldElement&) const = default;
};

class GaloisField {
  public:
    // canonical moduli: GF(4) x^2+x+1, GF(8) x^3+x+1, GF(9) x^2+1, m=1 -> x
    static GaloisField make(int p, int m);

    explicit GaloisField(FieldSpec spec);  // validates primality and irreducibility

    const FieldSpec& spec() const { return spec_; }
    int characteristic() const { return spec_.p; }
    int degree() const { return spec_.m; }
    int order() const { return order_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement element(int index) const;  // enumeration order, element(0) == zero
    int index_of(const FieldElement& a) const;
    std::vector<FieldElement> elements() const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement inv(const FieldElement& a) const;  // throws on zero
    FieldElement pow(const FieldElement& a, std::uint64_t e) const;

    bool is_zero(const FieldElement& a) const;

    // field trace tr(a) = sum_{j<m} a^(p^j), always in the prime subfield;
    // returned as its integer value in {0,...,p-1}
    int trace(const FieldElement& a) const;

  private:
    void check_element(const FieldElement& a) const;

    FieldSpec spec_;
    int order_ = 0;
};

}  // namespace mubx

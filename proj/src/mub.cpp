#include "mubx/mub.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>

#include "mubx/eig.hpp"
#include "mubx/galois.hpp"

namespace mubx {

namespace {

cplx root_of_unity(int num, int den) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(num) / den;
    return {std::cos(ang), std::sin(ang)};
}

void canonicalize_phase(std::vector<cplx>& v) {
    size_t best = 0;
    double mag = 0.0;
    for (size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > mag + 1e-12) { mag = std::abs(v[i]); best = i; }
    const cplx z = v[best];
    if (std::abs(z) == 0.0) return;
    const cplx phase = std::conj(z) / std::abs(z);
    for (cplx& c : v) c *= phase;
}

// ---------------------------------------------------------------------------
// odd prime powers: Wootters-Fields over GF(d)
// ---------------------------------------------------------------------------

MubSet wootters_fields(int p, int m) {
    const GaloisField gf = GaloisField::make(p, m);
    const int d = gf.order();
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));

    MubSet set;
    set.d = d;
    set.bases.push_back(computational_basis(d));
    for (int ia = 0; ia < d; ++ia) {
        const FieldElement a = gf.element(ia);
        Basis basis;
        basis.d = d;
        basis.vectors.resize(d, std::vector<cplx>(d));
        for (int ib = 0; ib < d; ++ib) {
            const FieldElement b = gf.element(ib);
            for (int is = 0; is < d; ++is) {
                const FieldElement s = gf.element(is);
                const FieldElement expo = gf.add(gf.mul(a, gf.mul(s, s)), gf.mul(b, s));
                basis.vectors[ib][is] = norm * root_of_unity(gf.trace(expo), p);
            }
        }
        set.bases.push_back(std::move(basis));
    }
    return set;
}

// ---------------------------------------------------------------------------
// even prime powers: symplectic spread of n-qubit Pauli labels
// ---------------------------------------------------------------------------

// label bits: bit i (i < n) = X on qubit i, bit n+i = Z on qubit i
using PauliLabel = unsigned;

int symplectic(PauliLabel u, PauliLabel v, int n) {
    const PauliLabel xu = u & ((1u << n) - 1), zu = u >> n;
    const PauliLabel xv = v & ((1u << n) - 1), zv = v >> n;
    return std::popcount((xu & zv) ^ (zu & xv)) & 1;
}

std::vector<PauliLabel> span_of(const std::vector<PauliLabel>& gens) {
    std::set<PauliLabel> pts;
    const size_t combos = size_t{1} << gens.size();
    for (size_t mask = 1; mask < combos; ++mask) {
        PauliLabel v = 0;
        for (size_t i = 0; i < gens.size(); ++i)
            if (mask & (size_t{1} << i)) v ^= gens[i];
        pts.insert(v);
    }
    return {pts.begin(), pts.end()};
}

// maximal isotropic subspaces through p drawn only from avail, deduplicated,
// in deterministic order
std::vector<std::vector<PauliLabel>> lagrangians_through(PauliLabel p,
                                                         const std::set<PauliLabel>& avail, int n) {
    std::vector<std::vector<PauliLabel>> out;
    std::set<std::vector<PauliLabel>> seen;
    std::vector<PauliLabel> gens{p};

    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(gens.size()) == n) {
            std::vector<PauliLabel> members = span_of(gens);
            for (PauliLabel v : members)
                if (!avail.count(v)) return;
            if (seen.insert(members).second) out.push_back(std::move(members));
            return;
        }
        const std::vector<PauliLabel> current = span_of(gens);
        for (PauliLabel q : avail) {
            if (q <= gens.back()) continue;
            if (std::find(current.begin(), current.end(), q) != current.end()) continue;
            bool ok = true;
            for (PauliLabel g : gens)
                if (symplectic(q, g, n)) { ok = false; break; }
            if (!ok) continue;
            gens.push_back(q);
            self(self);
            gens.pop_back();
        }
    };
    rec(rec);
    return out;
}

bool spread_backtrack(std::set<PauliLabel> avail, int n, std::vector<std::vector<PauliLabel>>& out) {
    if (avail.empty()) return true;
    const PauliLabel p = *avail.begin();
    for (const std::vector<PauliLabel>& cls : lagrangians_through(p, avail, n)) {
        std::set<PauliLabel> rest = avail;
        for (PauliLabel v : cls) rest.erase(v);
        out.push_back(cls);
        if (spread_backtrack(std::move(rest), n, out)) return true;
        out.pop_back();
    }
    return false;
}

Matrix pauli_matrix(PauliLabel v, int n) {
    Matrix op = Matrix::identity(1);
    for (int i = 0; i < n; ++i) {
        const bool x = v & (1u << i);
        const bool z = v & (1u << (n + i));
        Matrix p(2);
        if (x && z) {  // Y
            p(0, 1) = {0.0, -1.0};
            p(1, 0) = {0.0, 1.0};
        } else if (x) {
            p(0, 1) = 1.0;
            p(1, 0) = 1.0;
        } else if (z) {
            p(0, 0) = 1.0;
            p(1, 1) = -1.0;
        } else {
            p = Matrix::identity(2);
        }
        op = kron(op, p);
    }
    return op;
}

// joint eigenbasis of a commuting Hermitian family by successive
// eigenspace refinement; throws if the family fails to fully resolve
Basis joint_eigenbasis(const std::vector<Matrix>& ops, int d) {
    std::vector<std::vector<std::vector<cplx>>> spaces;  // each: list of column vectors
    {
        std::vector<std::vector<cplx>> full;
        for (int j = 0; j < d; ++j) {
            std::vector<cplx> e(d, 0.0);
            e[j] = 1.0;
            full.push_back(std::move(e));
        }
        spaces.push_back(std::move(full));
    }
    for (const Matrix& op : ops) {
        std::vector<std::vector<std::vector<cplx>>> next;
        for (const auto& cols : spaces) {
            const int k = static_cast<int>(cols.size());
            if (k == 1) { next.push_back(cols); continue; }
            Matrix b(k);
            std::vector<std::vector<cplx>> op_cols;
            for (const auto& v : cols) op_cols.push_back(op.apply(v));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) b(i, j) = inner(cols[i], op_cols[j]);
            const EigenSystem es = hermitian_eigensystem(b);
            int lo = 0;
            while (lo < k) {
                int hi = lo;
                while (hi < k && es.values[hi] - es.values[lo] < 1e-6) ++hi;
                std::vector<std::vector<cplx>> group;
                for (int j = lo; j < hi; ++j) {
                    std::vector<cplx> v(d, 0.0);
                    for (int i = 0; i < k; ++i)
                        for (int r = 0; r < d; ++r) v[r] += cols[i][r] * es.vectors(i, j);
                    group.push_back(std::move(v));
                }
                next.push_back(std::move(group));
                lo = hi;
            }
        }
        spaces = std::move(next);
    }
    Basis basis;
    basis.d = d;
    for (auto& space : spaces) {
        if (space.size() != 1)
            throw std::logic_error("joint_eigenbasis: family does not resolve to a unique basis");
        canonicalize_phase(space[0]);
        basis.vectors.push_back(std::move(space[0]));
    }
    return basis;
}

MubSet pauli_spread_mubs(int d) {
    int n = 0;
    while ((1 << n) < d) ++n;
    const PauliLabel all_mask = (1u << (2 * n)) - 1;

    // seed with the all-Z class so the first basis is computational
    std::vector<std::vector<PauliLabel>> classes;
    std::vector<PauliLabel> zclass;
    std::set<PauliLabel> avail;
    for (PauliLabel v = 1; v <= all_mask; ++v) {
        if ((v & ((1u << n) - 1)) == 0)
            zclass.push_back(v);
        else
            avail.insert(v);
    }
    classes.push_back(zclass);
    if (!spread_backtrack(std::move(avail), n, classes))
        throw std::logic_error("pauli_spread_mubs: no spread found");

    MubSet set;
    set.d = d;
    set.bases.push_back(computational_basis(d));
    for (size_t c = 1; c < classes.size(); ++c) {
        std::vector<Matrix> ops;
        for (PauliLabel v : classes[c]) ops.push_back(pauli_matrix(v, n));
        set.bases.push_back(joint_eigenbasis(ops, d));
    }
    return set;
}

}  // namespace

Basis computational_basis(int d) {
    Basis b;
    b.d = d;
    b.vectors.resize(d, std::vector<cplx>(d, 0.0));
    for (int i = 0; i < d; ++i) b.vectors[i][i] = 1.0;
    return b;
}

Basis fourier_basis(int d) {
    Basis b;
    b.d = d;
    b.vectors.resize(d, std::vector<cplx>(d));
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) b.vectors[j][k] = norm * root_of_unity(j * k % d, d);
    return b;
}

Basis conjugate_basis(const Basis& b) {
    Basis out;
    out.d = b.d;
    out.vectors = b.vectors;
    for (auto& v : out.vectors)
        for (cplx& z : v) z = std::conj(z);
    return out;
}

MubSet build_complete_mub(int d) {
    switch (d) {
        case 2: case 4: case 8:
            return pauli_spread_mubs(d);
        case 3: return wootters_fields(3, 1);
        case 5: return wootters_fields(5, 1);
        case 7: return wootters_fields(7, 1);
        case 9: return wootters_fields(3, 2);
        default:
            throw std::invalid_argument(
                "build_complete_mub: d=" + std::to_string(d) +
                " unsupported; complete sets are built for d in {2,3,4,5,7,8,9}");
    }
}

MubSet build_partial_mub_6() {
    const int d = 6;
    // shift |s> -> |s+1 mod 6> and clock diag(w^s)
    Matrix shift(d), clock(d);
    for (int s = 0; s < d; ++s) {
        shift((s + 1) % d, s) = 1.0;
        clock(s, s) = root_of_unity(s, d);
    }
    const Matrix sc = shift * clock;
    const Matrix scd = sc.dagger();
    Matrix h1 = sc;
    h1 += scd;
    Matrix h2 = sc;
    h2 -= scd;
    h2 *= cplx{0.0, 1.0};

    MubSet set;
    set.d = d;
    set.bases.push_back(computational_basis(d));
    set.bases.push_back(fourier_basis(d));
    set.bases.push_back(joint_eigenbasis({h1, h2}, d));
    return set;
}

MubReport verify_mub(const MubSet& set, double tol) {
    MubReport rep;
    rep.d = set.d;
    rep.basis_count = static_cast<int>(set.bases.size());
    for (const Basis& b : set.bases) {
        if (b.d != set.d || static_cast<int>(b.vectors.size()) != set.d)
            throw std::invalid_argument("verify_mub: basis dimension mismatch");
        for (const auto& v : b.vectors)
            if (static_cast<int>(v.size()) != set.d)
                throw std::invalid_argument("verify_mub: vector length mismatch");
    }
    const int d = set.d;
    for (const Basis& b : set.bases)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                const double target = (i == j) ? 1.0 : 0.0;
                const double dev = std::abs(std::abs(inner(b.vectors[i], b.vectors[j])) - target);
                rep.max_orthonormality_dev = std::max(rep.max_orthonormality_dev, dev);
            }
    for (size_t a = 0; a < set.bases.size(); ++a)
        for (size_t b = a + 1; b < set.bases.size(); ++b)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    const double ov = std::norm(inner(set.bases[a].vectors[i], set.bases[b].vectors[j]));
                    rep.max_unbiasedness_dev =
                        std::max(rep.max_unbiasedness_dev, std::abs(ov - 1.0 / d));
                }
    rep.pass = rep.max_orthonormality_dev <= tol && rep.max_unbiasedness_dev <= tol;
    return rep;
}

void to_json(nlohmann::json& j, const MubSet& set) {
    nlohmann::json bases = nlohmann::json::array();
    for (const Basis& b : set.bases) {
        nlohmann::json basis = nlohmann::json::array();
        for (const auto& v : b.vectors) {
            nlohmann::json vec = nlohmann::json::array();
            for (const cplx& z : v) vec.push_back({z.real(), z.imag()});
            basis.push_back(std::move(vec));
        }
        bases.push_back(std::move(basis));
    }
    j = nlohmann::json{{"d", set.d}, {"bases", std::move(bases)}};
}

void from_json(const nlohmann::json& j, MubSet& set) {
    set.d = j.at("d").get<int>();
    if (set.d <= 0) throw std::invalid_argument("MubSet: d must be positive");
    set.bases.clear();
    for (const auto& jb : j.at("bases")) {
        Basis b;
        b.d = set.d;
        for (const auto& jv : jb) {
            if (static_cast<int>(jv.size()) != set.d)
                throw std::invalid_argument("MubSet: vector length does not match d");
            std::vector<cplx> v;
            for (const auto& jz : jv) {
                const double re = jz.at(0).get<double>();
                const double im = jz.at(1).get<double>();
                if (!std::isfinite(re) || !std::isfinite(im))
                    throw std::invalid_argument("MubSet: non-finite component");
                v.emplace_back(re, im);
            }
            b.vectors.push_back(std::move(v));
        }
        if (static_cast<int>(b.vectors.size()) != set.d)
            throw std::invalid_argument("MubSet: basis vector count does not match d");
        set.bases.push_back(std::move(b));
    }
}

}  // namespace mubx

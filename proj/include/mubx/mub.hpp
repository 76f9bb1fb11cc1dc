// Construction and verification of mutually unbiased bases.
//
// Complete sets of d+1 bases for d in {2,3,4,5,7,8,9}:
//   - odd prime powers: Wootters-Fields, component s of vector (a,b) is
//     w_p^{tr(a s^2 + b s)} / sqrt(d) over GF(d), plus the computational basis
//   - even prime powers: the d^2-1 nonidentity n-qubit Pauli operators are
//     partitioned into d+1 maximal commuting classes (a symplectic spread
//     seeded with the all-Z class); each basis is a joint eigenbasis
// For d = 6 only a triple is known: computational, Fourier, and the
// eigenbasis of the shift*clock product.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mubx/matrix.hpp"

namespace mubx {

struct Basis {
    int d = 0;
    std::vector<std::vector<cplx>> vectors;  // vectors[i] is the i-th unit vector
};

struct MubSet {
    int d = 0;
    std::vector<Basis> bases;
};

struct MubReport {
    int d = 0;
    int basis_count = 0;
    double max_orthonormality_dev = 0.0;  // max ||<v_i|v_j>| - delta_ij|
    double max_unbiasedness_dev = 0.0;    // max ||<i_a|j_b>|^2 - 1/d| over distinct bases
    bool pass = false;
};

Basis computational_basis(int d);
Basis fourier_basis(int d);
Basis conjugate_basis(const Basis& b);

// d+1 bases for d in {2,3,4,5,7,8,9}; throws std::invalid_argument otherwise
MubSet build_complete_mub(int d);

// the known 3-element set for d=6
MubSet build_partial_mub_6();

MubReport verify_mub(const MubSet& set, double tol = 1e-10);

void to_json(nlohmann::json& j, const MubSet& set);
void from_json(const nlohmann::json& j, MubSet& set);

}  // namespace mubx

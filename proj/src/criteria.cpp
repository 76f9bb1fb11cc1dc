#include "mubx/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mubx/assignment.hpp"
#include "mubx/eig.hpp"

namespace mubx {

Labeling identity_labeling(int d) {
    Labeling pi(d);
    std::iota(pi.begin(), pi.end(), 0);
    return pi;
}

JointDistribution joint_distribution(const Matrix& rho, const Basis& alice, const Basis& bob) {
    const int d = alice.d;
    if (bob.d != d) throw std::invalid_argument("joint_distribution: basis dimension mismatch");
    if (rho.dim() != d * d)
        throw std::invalid_argument("joint_distribution: rho must act on C^d x C^d");
    JointDistribution jd;
    jd.d = d;
    jd.p.resize(static_cast<size_t>(d) * d);
    double total = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const std::vector<cplx> v = kron_vec(alice.vectors[i], bob.vectors[j]);
            const std::vector<cplx> rv = rho.apply(v);
            const double pij = inner(v, rv).real();
            if (pij < -1e-12)
                throw std::invalid_argument("joint_distribution: negative probability; "
                                            "input is not a state in these bases");
            jd.p[static_cast<size_t>(i) * d + j] = pij;
            total += pij;
        }
    if (std::abs(total - 1.0) > 1e-10)
        throw std::invalid_argument("joint_distribution: probabilities do not sum to 1");
    return jd;
}

double mutual_predictability(const JointDistribution& jd, const Labeling& pi) {
    if (static_cast<int>(pi.size()) != jd.d)
        throw std::invalid_argument("mutual_predictability: labeling size mismatch");
    double c = 0.0;
    for (int i = 0; i < jd.d; ++i) c += jd.at(i, pi[i]);
    return c;
}

std::pair<Labeling, double> optimal_labeling(const JointDistribution& jd) {
    Labeling pi;
    const double best = assignment_max(jd.p, jd.d, pi);
    return {std::move(pi), best};
}

WitnessReport mub_witness(const Matrix& rho, const MubSet& mubs, WitnessOptions opts) {
    const int d = mubs.d;
    if (rho.dim() != d * d)
        throw std::invalid_argument("mub_witness: rho dimension must be d^2 with d = mubs.d");
    WitnessReport rep;
    rep.m = static_cast<int>(mubs.bases.size());
    rep.bound = 1.0 + static_cast<double>(rep.m - 1) / d;
    for (const Basis& alice : mubs.bases) {
        const Basis bob = opts.conjugate_bob ? conjugate_basis(alice) : alice;
        const JointDistribution jd = joint_distribution(rho, alice, bob);
        Labeling pi;
        double c;
        if (opts.maximize_labels) {
            std::tie(pi, c) = optimal_labeling(jd);
        } else {
            pi = identity_labeling(d);
            c = mutual_predictability(jd, pi);
        }
        rep.per_basis.push_back(c);
        rep.labelings.push_back(std::move(pi));
        rep.i_value += c;
    }
    rep.detected = rep.i_value > rep.bound;
    return rep;
}

PptReport ppt_check(const Matrix& rho, const TensorShape& shape, int cut_subsystem, double tol) {
    return ppt_check(rho, shape, std::vector<int>{cut_subsystem}, tol);
}

PptReport ppt_check(const Matrix& rho, const TensorShape& shape, const std::vector<int>& cut,
                    double tol) {
    if (!rho.is_hermitian(1e-12)) throw std::invalid_argument("ppt_check: rho must be Hermitian");
    const Matrix pt = partial_transpose(rho, shape, cut);
    PptReport rep;
    rep.min_eigenvalue = min_eigenvalue(pt);
    rep.is_ppt = rep.min_eigenvalue >= -tol;
    return rep;
}

WitnessEvaluator::WitnessEvaluator(MubSet mubs, WitnessOptions opts)
    : mubs_(std::move(mubs)), opts_(opts) {
    const int d = mubs_.d;
    const size_t dd = static_cast<size_t>(d) * d;
    // Bell vectors |Phi_{k,l}> = (1 x W_{k,l}) |Phi+>
    std::vector<std::vector<cplx>> phis(dd);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
            const Matrix w = weyl(d, {k, l});
            std::vector<cplx> phi(dd, 0.0);
            const double norm = 1.0 / std::sqrt(static_cast<double>(d));
            for (int s = 0; s < d; ++s) {
                // (1 x W)|ss> picks column s of W into the second slot
                for (int r = 0; r < d; ++r) {
                    const cplx wrs = w(r, s);
                    if (wrs != cplx{}) phi[static_cast<size_t>(s) * d + r] += norm * wrs;
                }
            }
            phis[static_cast<size_t>(k) * d + l] = std::move(phi);
        }
    overlaps_.reserve(mubs_.bases.size());
    for (const Basis& alice : mubs_.bases) {
        const Basis bob = opts_.conjugate_bob ? conjugate_basis(alice) : alice;
        std::vector<double> table(dd * dd);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const std::vector<cplx> v = kron_vec(alice.vectors[i], bob.vectors[j]);
                for (size_t kl = 0; kl < dd; ++kl)
                    table[(static_cast<size_t>(i) * d + j) * dd + kl] =
                        std::norm(inner(v, phis[kl]));
            }
        overlaps_.push_back(std::move(table));
    }
}

WitnessReport WitnessEvaluator::evaluate(const SimplexCoefficients& coeffs) const {
    if (coeffs.d != mubs_.d) throw std::invalid_argument("WitnessEvaluator: d mismatch");
    if (!coeffs.normalized())
        throw std::invalid_argument("WitnessEvaluator: coefficients must sum to 1");
    const int d = mubs_.d;
    const size_t dd = static_cast<size_t>(d) * d;
    WitnessReport rep;
    rep.m = m();
    rep.bound = bound();
    std::vector<double> jd(dd);
    for (const std::vector<double>& table : overlaps_) {
        for (size_t ij = 0; ij < dd; ++ij) {
            double s = 0.0;
            const double* row = table.data() + ij * dd;
            for (size_t kl = 0; kl < dd; ++kl) s += row[kl] * coeffs.c[kl];
            jd[ij] = s;
        }
        Labeling pi;
        double c;
        if (opts_.maximize_labels) {
            c = assignment_max(jd, d, pi);
        } else {
            pi = identity_labeling(d);
            c = 0.0;
            for (int i = 0; i < d; ++i) c += jd[static_cast<size_t>(i) * d + i];
        }
        rep.per_basis.push_back(c);
        rep.labelings.push_back(std::move(pi));
        rep.i_value += c;
    }
    rep.detected = rep.i_value > rep.bound;
    return rep;
}

double WitnessEvaluator::i_value(const SimplexCoefficients& coeffs) const {
    return evaluate(coeffs).i_value;
}

double WitnessEvaluator::i_value_with_labelings(const SimplexCoefficients& coeffs,
                                                const std::vector<Labeling>& labelings) const {
    if (coeffs.d != mubs_.d) throw std::invalid_argument("WitnessEvaluator: d mismatch");
    if (labelings.size() != overlaps_.size())
        throw std::invalid_argument("WitnessEvaluator: one labeling per basis required");
    const int d = mubs_.d;
    const size_t dd = static_cast<size_t>(d) * d;
    double total = 0.0;
    for (size_t s = 0; s < overlaps_.size(); ++s) {
        const std::vector<double>& table = overlaps_[s];
        const Labeling& pi = labelings[s];
        for (int i = 0; i < d; ++i) {
            const size_t ij = static_cast<size_t>(i) * d + pi[i];
            const double* row = table.data() + ij * dd;
            for (size_t kl = 0; kl < dd; ++kl) total += row[kl] * coeffs.c[kl];
        }
    }
    return total;
}

Classification classify_family(const FamilyParams& params, const WitnessEvaluator& witness,
                               double tol) {
    if (params.d != witness.d())
        throw std::invalid_argument("classify_family: witness built for a different d");
    const SimplexCoefficients coeffs = family_coefficients(params);
    Classification out;
    out.min_coefficient = coeffs.min();
    out.positive = out.min_coefficient >= -tol;
    const std::vector<double> pt = simplex_pt_spectrum(coeffs);
    out.min_pt_eigenvalue = pt.front();
    out.ppt = out.min_pt_eigenvalue >= -tol;
    const WitnessReport rep = witness.evaluate(coeffs);
    out.i_value = rep.i_value;
    out.bound = rep.bound;
    out.detected = rep.detected;
    out.bound_entangled = out.positive && out.ppt && out.detected;
    return out;
}

Classification classify_state(const Matrix& rho, const MubSet& mubs, WitnessOptions opts,
                              double tol) {
    const int d = mubs.d;
    Classification out;
    const std::vector<double> spec = hermitian_eigenvalues(rho);
    out.min_coefficient = spec.front();
    out.positive = spec.front() >= -tol;
    const PptReport ppt = ppt_check(rho, TensorShape{d, d}, 1, tol);
    out.min_pt_eigenvalue = ppt.min_eigenvalue;
    out.ppt = ppt.is_ppt;
    const WitnessReport rep = mub_witness(rho, mubs, opts);
    out.i_value = rep.i_value;
    out.bound = rep.bound;
    out.detected = rep.detected;
    out.bound_entangled = out.positive && out.ppt && out.detected;
    return out;
}

void to_json(nlohmann::json& j, const WitnessReport& r) {
    j = nlohmann::json{{"m", r.m},
                       {"per_basis", r.per_basis},
                       {"labelings", r.labelings},
                       {"i_value", r.i_value},
                       {"bound", r.bound},
                       {"detected", r.detected}};
}

void to_json(nlohmann::json& j, const Classification& c) {
    j = nlohmann::json{{"positive", c.positive},
                       {"ppt", c.ppt},
                       {"i_value", c.i_value},
                       {"bound", c.bound},
                       {"detected", c.detected},
                       {"bound_entangled", c.bound_entangled},
                       {"min_coefficient", c.min_coefficient},
                       {"min_pt_eigenvalue", c.min_pt_eigenvalue}};
}

}  // namespace mubx

// Entanglement verdicts: positivity, PPT, and the MUB correlation witness
// I_m = sum_s C_{A_s,B_s}, bounded by 1 + (m-1)/d for separable states.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mubx/matrix.hpp"
#include "mubx/mub.hpp"
#include "mubx/simplex.hpp"

namespace mubx {

struct JointDistribution {
    int d = 0;
    std::vector<double> p;  // row-major, p[i*d + j] = P(Alice i, Bob j)

    double at(int i, int j) const { return p[static_cast<size_t>(i) * d + j]; }
};

using Labeling = std::vector<int>;  // permutation, Bob outcome = pi[Alice outcome]

Labeling identity_labeling(int d);

// P(i,j) = <a_i x b_j| rho |a_i x b_j>; validates the result is a distribution
JointDistribution joint_distribution(const Matrix& rho, const Basis& alice, const Basis& bob);

// C = sum_i P(i, pi(i))
double mutual_predictability(const JointDistribution& jd, const Labeling& pi);

// exact maximum of C over all relabelings (assignment problem)
std::pair<Labeling, double> optimal_labeling(const JointDistribution& jd);

struct WitnessOptions {
    bool conjugate_bob = true;    // Bob measures in the conjugated partner basis
    bool maximize_labels = true;  // per-basis optimal relabeling, else identity
};

struct WitnessReport {
    int m = 0;
    std::vector<double> per_basis;
    std::vector<Labeling> labelings;
    double i_value = 0.0;
    double bound = 0.0;  // 1 + (m-1)/d
    bool detected = false;  // strictly i_value > bound
};

WitnessReport mub_witness(const Matrix& rho, const MubSet& mubs, WitnessOptions opts = {});

struct PptReport {
    double min_eigenvalue = 0.0;
    bool is_ppt = false;
};

PptReport ppt_check(const Matrix& rho, const TensorShape& shape, int cut_subsystem,
                    double tol = 1e-10);
PptReport ppt_check(const Matrix& rho, const TensorShape& shape, const std::vector<int>& cut,
                    double tol = 1e-10);

// Precomputes, per basis pair, the overlap table |<a_i x b_j|Phi_{k,l}>|^2 so
// simplex states can be evaluated directly from their Bell coefficients.
class WitnessEvaluator {
  public:
    WitnessEvaluator(MubSet mubs, WitnessOptions opts = {});

    int d() const { return mubs_.d; }
    int m() const { return static_cast<int>(mubs_.bases.size()); }
    double bound() const { return 1.0 + static_cast<double>(m() - 1) / d(); }
    const MubSet& mubs() const { return mubs_; }
    const WitnessOptions& options() const { return opts_; }

    WitnessReport evaluate(const SimplexCoefficients& coeffs) const;
    double i_value(const SimplexCoefficients& coeffs) const;
    // I with one fixed relabeling per basis (affine in the coefficients)
    double i_value_with_labelings(const SimplexCoefficients& coeffs,
                                  const std::vector<Labeling>& labelings) const;

  private:
    MubSet mubs_;
    WitnessOptions opts_;
    // overlaps_[s][(i*d+j)*d*d + (k*d+l)]
    std::vector<std::vector<double>> overlaps_;
};

struct Classification {
    bool positive = false;
    bool ppt = false;
    double i_value = 0.0;
    double bound = 0.0;
    bool detected = false;
    bool bound_entangled = false;  // positive && ppt && detected
    double min_coefficient = 0.0;
    double min_pt_eigenvalue = 0.0;
};

// Family states: coefficient-level positivity (min c >= -tol) is the primary
// verdict, PPT from the block spectrum of the partial transpose.
Classification classify_family(const FamilyParams& params, const WitnessEvaluator& witness,
                               double tol = 1e-10);

// Generic states: spectral positivity and full partial transpose over the cut.
Classification classify_state(const Matrix& rho, const MubSet& mubs, WitnessOptions opts = {},
                              double tol = 1e-10);

void to_json(nlohmann::json& j, const WitnessReport& r);
void to_json(nlohmann::json& j, const Classification& c);

}  // namespace mubx

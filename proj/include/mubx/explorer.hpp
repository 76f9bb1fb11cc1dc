// Drivers for the region scans, the witness extremization, incomplete-set
// scans and the bipartite/multipartite geometry comparison.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mubx/criteria.hpp"

namespace mubx {

// complete set for d in {2,3,4,5,7,8,9}, the known triple for d=6
MubSet mub_set_for(int d);

struct ScanRecord {
    double q1 = 0.0, q2 = 0.0;
    bool positive = false, ppt = false, detected = false, bound_entangled = false;
    double i_value = 0.0;
};

struct SliceBox {
    double q1_lo = 0.0, q1_hi = 0.0, q2_lo = 0.0, q2_hi = 0.0;
};

// Bounding box of the positivity polygon {(q1,q2): all c >= 0} in the slice,
// padded by 10%; empty optional if the slice contains no positive states.
std::optional<SliceBox> positivity_bounding_box(int d, double q3, double q);

struct ScanConfig {
    int grid = 200;  // points per axis, >= 2
    std::optional<SliceBox> box;  // default: padded positivity bounding box
    double tol = 1e-10;
    WitnessOptions witness{};
};

// Classifies a (q1,q2) grid at fixed (q3,q); rows ordered q1 outer, q2 inner.
std::vector<ScanRecord> scan_slice(int d, double q3, double q, const ScanConfig& config = {});

enum class LabelingMode { identity, maximized };

struct ParamBox {
    double q1_lo = -1.0, q1_hi = 1.0;
    double q2_lo = -1.5, q2_hi = 1.5;
    double q3_lo = -0.5, q3_hi = 1.0;
    double q_lo = -0.5, q_hi = 1.0;

    static ParamBox for_dimension(int d);  // q1_hi scales with d
};

struct OptimizeConfig {
    int coarse_points = 21;
    LabelingMode mode = LabelingMode::maximized;
    double step_tol = 1e-6;
    double tol = 1e-10;
    std::optional<ParamBox> box;
};

struct OptimizeResult {
    int d = 0;
    FamilyParams argmin;
    double value = 0.0;    // min 2 - I_{d+1}
    double i_value = 0.0;  // I at argmin under the optimization labeling mode
    double i_value_identity = 0.0;  // I at argmin with identity labelings
    double min_coefficient = 0.0;
    double min_pt_eigenvalue = 0.0;
    LabelingMode mode = LabelingMode::maximized;
};

// min over (q_i) of 2 - I_{d+1}[rho[d]] subject to all c >= 0 and PT >= 0.
// Coarse feasible grid then Nelder-Mead descent with bisection projection
// onto the (convex) feasible set. d in {2,3,4,5,7,8,9}.
OptimizeResult optimize_extreme(int d, const OptimizeConfig& config = {});

struct IncompleteScanReport {
    int d = 0, m = 0, grid = 0;
    double bound = 0.0;
    double max_excess = 0.0;  // max over settings/points of I_m - bound
    long feasible_points = 0;
    std::vector<std::array<double, 2>> settings;  // the (q3,q) slices scanned
};

// Max of I_m - (1 + (m-1)/d) over positive & PPT grid points of (q1,q2)
// slices. Default settings: optimizer argmin (q3*,q*), (0,0), (q3*/2,0).
IncompleteScanReport incomplete_mub_scan(
    int d, int m, int grid = 200,
    std::optional<std::vector<std::array<double, 2>>> settings = std::nullopt);

struct MultiCompareRecord {
    FamilyParams params;
    bool positive_bi = false, ppt_bi = false;
    bool positive_multi = false, ppt_multi = false;
};

struct MultiCompareReport {
    int d = 0, n = 0;
    long samples = 0;
    long positivity_agreements = 0;
    long ppt_agreements = 0;
    bool all_cuts = false;
    std::vector<int> default_cut;
    std::vector<MultiCompareRecord> disagreements;
};

// Compares (positive, ppt) verdicts of rho[d] and the n-pair lift on sampled
// parameter tuples. Default cut: the Weyl-carrying factor of the first pair;
// all_cuts additionally requires PPT across every bipartition.
MultiCompareReport multi_compare(int d, int n, int samples, bool all_cuts = false,
                                 std::uint64_t seed = 20240901ull);

// uniform tuples from the box, kept when all c >= 0 (rejection sampling)
std::vector<FamilyParams> sample_positive_params(int d, int count, std::uint64_t seed,
                                                 std::optional<ParamBox> box = std::nullopt);

// CSV contract: header q1,q2,positive,ppt,I,detected,bound_entangled,
// 12 significant digits, booleans 0/1, LF line endings
void write_csv(const std::vector<ScanRecord>& records, std::ostream& os);
void write_csv(const std::vector<ScanRecord>& records, const std::string& path);
nlohmann::json records_to_json(const std::vector<ScanRecord>& records);

void to_json(nlohmann::json& j, const OptimizeResult& r);
void to_json(nlohmann::json& j, const IncompleteScanReport& r);
void to_json(nlohmann::json& j, const MultiCompareReport& r);

}  // namespace mubx

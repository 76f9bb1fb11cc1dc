// mubx: MUB construction, magic-simplex scans, witness extremization and
// multipartite comparison from the command line.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mubx/eig.hpp"
#include "mubx/explorer.hpp"

namespace {

using nlohmann::json;

struct Defaults {
    double psd_tol = 1e-10;
    double mub_tol = 1e-10;
    int grid = 200;
    int coarse_points = 21;
    double step_tol = 1e-6;
    std::uint64_t seed = 20240901ull;
    std::optional<mubx::ParamBox> box;
};

Defaults load_config(int argc, char** argv) {
    Defaults def;
    std::string path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") path = argv[i + 1];
    if (path.empty()) return def;
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("config: cannot open " + path);
    json j = json::parse(is);
    def.psd_tol = j.value("psd_tol", def.psd_tol);
    def.mub_tol = j.value("mub_tol", def.mub_tol);
    def.grid = j.value("grid", def.grid);
    def.coarse_points = j.value("coarse_points", def.coarse_points);
    def.step_tol = j.value("step_tol", def.step_tol);
    def.seed = j.value("seed", def.seed);
    if (j.contains("box")) {
        mubx::ParamBox box;
        const json& b = j["box"];
        auto range = [&](const char* key, double& lo, double& hi) {
            if (!b.contains(key)) return;
            lo = b[key].at(0).get<double>();
            hi = b[key].at(1).get<double>();
        };
        range("q1", box.q1_lo, box.q1_hi);
        range("q2", box.q2_lo, box.q2_hi);
        range("q3", box.q3_lo, box.q3_hi);
        range("q", box.q_lo, box.q_hi);
        def.box = box;
    }
    return def;
}

void write_or_print(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot open output file " + out);
    os << j.dump(2) << "\n";
}

// scan/incomplete default (q3, q): the extremizer's argmin; for d=6 (no
// complete MUB set) the 1/sqrt(d) pattern of the other dimensions
std::array<double, 2> default_slice_setting(int d, const Defaults& def) {
    if (d == 6) return {1.0 / std::sqrt(6.0), 0.0};
    mubx::OptimizeConfig cfg;
    cfg.coarse_points = def.coarse_points;
    cfg.step_tol = def.step_tol;
    cfg.tol = def.psd_tol;
    cfg.box = def.box;
    const mubx::OptimizeResult opt = mubx::optimize_extreme(d, cfg);
    return {opt.argmin.q3, opt.argmin.q};
}

int run(int argc, char** argv) {
    const Defaults def = load_config(argc, argv);

    CLI::App app{"mutually unbiased bases and magic-simplex bound entanglement explorer"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config with tolerances, grids, box, seed");

    // mub gen
    auto* mub_cmd = app.add_subcommand("mub", "MUB construction and verification");
    mub_cmd->require_subcommand(1);
    auto* gen = mub_cmd->add_subcommand("gen", "generate the MUB set for a dimension");
    int gen_d = 3;
    bool gen_verify = false;
    double gen_tol = def.mub_tol;
    std::string gen_out;
    gen->add_option("--d", gen_d, "dimension (2..9)")->required();
    gen->add_flag("--verify", gen_verify, "print a verification report");
    gen->add_option("--tol", gen_tol, "verification tolerance");
    gen->add_option("--out", gen_out, "write the set as JSON");

    // scan
    auto* scan = app.add_subcommand("scan", "classify a (q1,q2) slice of the family");
    int scan_d = 3, scan_grid = def.grid;
    double scan_q3 = 0.0, scan_q = 0.0;
    bool scan_has_q3 = false, scan_has_q = false;
    std::string scan_out, scan_format = "csv";
    std::vector<double> scan_box;
    scan->add_option("--d", scan_d, "dimension (2..9)")->required();
    scan->add_option("--q3", scan_q3, "fixed q3 (default: extremizer argmin)");
    scan->add_option("--q", scan_q, "fixed q (default: extremizer argmin)");
    scan->add_option("--grid", scan_grid, "grid points per axis");
    scan->add_option("--box", scan_box, "q1lo q1hi q2lo q2hi (default: positivity box)")
        ->expected(4);
    scan->add_option("--format", scan_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    scan->add_option("--out", scan_out, "output path (default: stdout)");

    // optimize
    auto* opt_cmd = app.add_subcommand("optimize", "extremize 2 - I_{d+1} over the family");
    int opt_d = 3;
    std::string opt_labels = "max", opt_out;
    opt_cmd->add_option("--d", opt_d, "dimension in {3,4,5,7,8,9} (2 also accepted)")->required();
    opt_cmd->add_option("--labels", opt_labels, "labeling mode")
        ->check(CLI::IsMember({"identity", "max"}));
    opt_cmd->add_option("--out", opt_out, "write the result as JSON");

    // classify
    auto* cls = app.add_subcommand("classify", "verdicts for one family state");
    int cls_d = 3;
    double cls_q1 = 0, cls_q2 = 0, cls_q3 = 0, cls_q = 0;
    cls->add_option("--d", cls_d, "dimension (2..9)")->required();
    cls->add_option("--q1", cls_q1, "family parameter q1");
    cls->add_option("--q2", cls_q2, "family parameter q2");
    cls->add_option("--q3", cls_q3, "family parameter q3");
    cls->add_option("--q", cls_q, "family parameter q");

    // incomplete
    auto* inc = app.add_subcommand("incomplete", "witness scan with m < d+1 bases");
    int inc_d = 3, inc_m = 3, inc_grid = def.grid;
    inc->add_option("--d", inc_d, "dimension (2..9)")->required();
    inc->add_option("--m", inc_m, "number of bases used")->required();
    inc->add_option("--grid", inc_grid, "grid points per axis");

    // multi
    auto* multi = app.add_subcommand("multi", "bipartite vs n-pair geometry comparison");
    int multi_d = 2, multi_pairs = 2, multi_samples = 1000;
    bool multi_all_cuts = false;
    std::uint64_t multi_seed = def.seed;
    multi->add_option("--d", multi_d, "local dimension")->required();
    multi->add_option("--pairs", multi_pairs, "number of pairs n (d^(2n) <= 100)");
    multi->add_option("--samples", multi_samples, "sampled parameter tuples");
    multi->add_flag("--all-cuts", multi_all_cuts, "require PPT across every bipartition");
    multi->add_option("--seed", multi_seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    }
    scan_has_q3 = scan->count("--q3") > 0;
    scan_has_q = scan->count("--q") > 0;

    if (gen->parsed()) {
        const mubx::MubSet set = mubx::mub_set_for(gen_d);
        json j = set;
        if (gen_verify) {
            const mubx::MubReport rep = mubx::verify_mub(set, gen_tol);
            json jr{{"d", rep.d},
                    {"basis_count", rep.basis_count},
                    {"max_orthonormality_dev", rep.max_orthonormality_dev},
                    {"max_unbiasedness_dev", rep.max_unbiasedness_dev},
                    {"tol", gen_tol},
                    {"pass", rep.pass}};
            std::cout << jr.dump(2) << "\n";
            if (!gen_out.empty()) write_or_print(j, gen_out);
            return rep.pass ? 0 : 2;
        }
        write_or_print(j, gen_out);
        return 0;
    }

    if (scan->parsed()) {
        if (!scan_has_q3 || !scan_has_q) {
            const auto setting = default_slice_setting(scan_d, def);
            if (!scan_has_q3) scan_q3 = setting[0];
            if (!scan_has_q) scan_q = setting[1];
        }
        mubx::ScanConfig cfg;
        cfg.grid = scan_grid;
        cfg.tol = def.psd_tol;
        if (!scan_box.empty())
            cfg.box = mubx::SliceBox{scan_box[0], scan_box[1], scan_box[2], scan_box[3]};
        const std::vector<mubx::ScanRecord> records =
            mubx::scan_slice(scan_d, scan_q3, scan_q, cfg);
        if (scan_format == "json") {
            write_or_print(mubx::records_to_json(records), scan_out);
        } else if (scan_out.empty()) {
            mubx::write_csv(records, std::cout);
        } else {
            mubx::write_csv(records, scan_out);
        }
        return 0;
    }

    if (opt_cmd->parsed()) {
        mubx::OptimizeConfig cfg;
        cfg.coarse_points = def.coarse_points;
        cfg.step_tol = def.step_tol;
        cfg.tol = def.psd_tol;
        cfg.box = def.box;
        cfg.mode = opt_labels == "identity" ? mubx::LabelingMode::identity
                                            : mubx::LabelingMode::maximized;
        const mubx::OptimizeResult res = mubx::optimize_extreme(opt_d, cfg);
        write_or_print(json(res), opt_out);
        return 0;
    }

    if (cls->parsed()) {
        const mubx::WitnessEvaluator witness(mubx::mub_set_for(cls_d));
        const mubx::Classification c =
            mubx::classify_family({cls_d, cls_q1, cls_q2, cls_q3, cls_q}, witness, def.psd_tol);
        std::cout << json(c).dump(2) << "\n";
        return 0;
    }

    if (inc->parsed()) {
        const mubx::IncompleteScanReport rep = mubx::incomplete_mub_scan(inc_d, inc_m, inc_grid);
        std::cout << json(rep).dump(2) << "\n";
        return 0;
    }

    if (multi->parsed()) {
        const mubx::MultiCompareReport rep =
            mubx::multi_compare(multi_d, multi_pairs, multi_samples, multi_all_cuts, multi_seed);
        std::cout << json(rep).dump(2) << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const mubx::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

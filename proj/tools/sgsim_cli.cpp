// sgsim command line: single simulations, configuration sweeps, Pareto
// extraction, B-operand preprocessing and cost-model calibration.
// Exit codes: 0 success, 1 usage, 2 validation, 3 runtime.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "sgsim/engine.hpp"
#include "sgsim/metrics.hpp"
#include "sgsim/oracle.hpp"
#include "sgsim/preprocess.hpp"
#include "sgsim/sweep.hpp"

using namespace sgsim;

namespace {

json load_json(const std::string& path) {
    std::ifstream f(path);
    require(f.good(), Err::BadFile, "cannot open " + path);
    try {
        return json::parse(f);
    } catch (const std::exception& e) {
        fail(Err::BadFile, path + ": " + e.what());
    }
}

ArchConfig resolve_config(const std::string& preset_name, const std::string& config_path) {
    require(preset_name.empty() != config_path.empty(), Err::BadValue,
            "give exactly one of --preset or --config");
    if (!preset_name.empty()) return preset(preset_name);
    return config_from_json(load_json(config_path));
}

UnitCostTable resolve_units(const std::string& table_path) {
    std::vector<CalRow> rows =
        table_path.empty() ? builtin_calibration() : calibration_from_json(load_json(table_path));
    return calibrate(rows).units;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        require(f.good(), Err::BadFile, "cannot open " + out_path);
        f << j.dump(2) << "\n";
    }
}

bool is_validation_error(Err k) {
    switch (k) {
        case Err::ModeWindowMismatch:
        case Err::DegenerateCore:
        case Err::UnknownPreset:
        case Err::MorphExceedsHardware:
        case Err::K0NotDivisibleBy4:
        case Err::ConfigTensorMismatch:
        case Err::MissingCompressedB:
        case Err::EmptySpaceAfterConstraints:
        case Err::BadValue:
            return true;
        default:
            return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sgsim - sparse GEMM accelerator simulator and cost model"};
    app.require_subcommand(1);

    // shared options
    std::string preset_name, config_path, workload_path, out_path, units_path;
    std::uint64_t seed = 1;
    bool no_bw = false, no_banks = false;
    std::string category = "ab";

    auto* sim = app.add_subcommand("simulate", "run one configuration on one workload");
    sim->add_option("--preset", preset_name, "named design point");
    sim->add_option("--config", config_path, "configuration JSON file");
    sim->add_option("--workload", workload_path, "workload JSON file")->required();
    sim->add_option("--seed", seed, "sparsity seed");
    sim->add_option("--out", out_path, "write the report here instead of stdout");
    sim->add_option("--units", units_path, "calibration table JSON (default: built-in)");
    sim->add_option("--category", category, "model category for hybrid configs (dense|a|b|ab)");
    sim->add_flag("--no-bw-stall", no_bw, "do not stall on SRAM byte budgets");
    sim->add_flag("--no-bank-stall", no_banks, "do not stall on ASRAM bank fills");

    std::string space_path, workloads_path, sweep_out = "sweep.csv";
    int jobs = 1;
    auto* sw = app.add_subcommand("sweep", "run a configuration space over workloads");
    sw->add_option("--space", space_path, "sweep space JSON")->required();
    sw->add_option("--workloads", workloads_path, "JSON array of workloads")->required();
    sw->add_option("--out", sweep_out, "output CSV path");
    sw->add_option("--seed", seed, "sparsity seed");
    sw->add_option("--jobs", jobs, "worker threads");
    sw->add_option("--units", units_path, "calibration table JSON");
    sw->add_flag("--no-bw-stall", no_bw, "do not stall on SRAM byte budgets");
    sw->add_flag("--no-bank-stall", no_banks, "do not stall on ASRAM bank fills");

    std::string csv_in, xcol = "eff_tops_per_w", ycol = "eff_tops_per_mm2",
                front_out = "pareto.csv";
    auto* pf = app.add_subcommand("pareto", "extract the frontier from a sweep CSV");
    pf->add_option("--in", csv_in, "sweep CSV")->required();
    pf->add_option("--x", xcol, "x metric column");
    pf->add_option("--y", ycol, "y metric column");
    pf->add_option("--out", front_out, "frontier CSV path");

    std::string tensor_path, stream_out = "stream.sgc";
    int d1 = 0, d2 = 0, d3 = 0, k0 = 16, group = 16;
    auto* pp = app.add_subcommand("preprocess", "compress a B tensor file");
    pp->add_option("--tensor", tensor_path, "SGT1 tensor file (k x n)")->required();
    pp->add_option("--d1", d1, "time window");
    pp->add_option("--d2", d2, "lane window");
    pp->add_option("--d3", d3, "column window");
    pp->add_option("--k0", k0, "lane count");
    pp->add_option("--group", group, "column group width (N0)");
    pp->add_option("--out", stream_out, "output SGC1 stream");

    std::string table_path;
    auto* cal = app.add_subcommand("calibrate", "fit unit costs to a breakdown table");
    cal->add_option("--table", table_path, "calibration rows JSON (default: built-in)");
    cal->add_option("--out", out_path, "write fitted units here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        SimOptions opts;
        opts.enforce_sram_bw = !no_bw;
        opts.enforce_banks = !no_banks;

        if (sim->parsed()) {
            ArchConfig cfg = resolve_config(preset_name, config_path);
            WorkloadSpec w = workload_from_json(load_json(workload_path));
            if (w.kind != WorkloadSpec::Kind::Benchmark)
                w.category = category_from_name(category);
            UnitCostTable units = resolve_units(units_path);
            RunRow row = run_workload(cfg, w, seed, opts, units);
            json j{{"config", config_to_json(cfg)},
                   {"workload", w.name},
                   {"seed", seed},
                   {"cycles", row.cycles},
                   {"dense_cycles", row.dense},
                   {"speedup", row.speedup},
                   {"stall_output_sync", row.stalls.output_sync},
                   {"stall_bank_conflict", row.stalls.bank_conflict},
                   {"stall_buf_full", row.stalls.buf_full},
                   {"stall_bandwidth", row.stalls.bandwidth},
                   {"functional_ok", row.functional_ok},
                   {"cost", cost_to_json(row.cost)}};
            emit(j, out_path);
        } else if (sw->parsed()) {
            SweepSpace space = space_from_json(load_json(space_path));
            json jw = load_json(workloads_path);
            require(jw.is_array(), Err::BadFile, "--workloads must be a JSON array");
            std::vector<WorkloadSpec> workloads;
            for (const auto& e : jw) workloads.push_back(workload_from_json(e));
            require(!workloads.empty(), Err::BadValue, "no workloads given");
            UnitCostTable units = resolve_units(units_path);
            std::vector<ArchConfig> cfgs = enumerate_space(space);
            std::vector<RunRow> rows = sweep(cfgs, workloads, seed, opts, units, jobs);
            write_csv(sweep_out, rows);
            std::cout << "wrote " << rows.size() << " rows (" << cfgs.size() << " configs x "
                      << workloads.size() << " workloads) to " << sweep_out << "\n";
        } else if (pf->parsed()) {
            CsvTable t = read_csv(csv_in);
            int xi = t.col(xcol), yi = t.col(ycol);
            std::vector<ParetoPoint> pts;
            for (std::size_t i = 0; i < t.rows.size(); ++i)
                pts.push_back(
                    {std::stod(t.rows[i][xi]), std::stod(t.rows[i][yi]), std::to_string(i)});
            auto front = pareto(pts);
            std::ofstream f(front_out);
            require(f.good(), Err::BadFile, "cannot open " + front_out);
            std::string hdr;
            for (std::size_t i = 0; i < t.header.size(); ++i)
                hdr += (i ? "," : "") + t.header[i];
            f << hdr << '\n';
            for (const auto& pt : front) {
                const auto& row = t.rows[std::stoul(pt.label)];
                std::string line;
                for (std::size_t i = 0; i < row.size(); ++i) line += (i ? "," : "") + row[i];
                f << line << '\n';
            }
            std::cout << "frontier: " << front.size() << " of " << t.rows.size() << " points -> "
                      << front_out << "\n";
        } else if (pp->parsed()) {
            int rows = 0, cols = 0;
            auto vals = read_tensor(tensor_path, rows, cols);
            GemmProblem p = make_problem(1, rows, cols);
            p.b = vals;
            CoreDims core;
            core.k0 = k0;
            BlockedTensor b = block(p, core, Operand::B);
            BorrowWindow w{d1, d2, d3};
            CompressedOperandStream s = compress_b(b, w, group);
            BlockedTensor back = decode_b(s);
            require(back.vals == b.vals, Err::CorruptMetadata, "round-trip verification failed");
            write_stream(stream_out, s);
            std::size_t total = 0;
            for (const auto& col : s.streams) total += col.chunks.size();
            std::cout << "compressed " << rows << "x" << cols << " into " << total
                      << " chunks (dense " << std::uint64_t(b.t_chunks) * cols
                      << "), metadata " << meta_widths(w).total() << "b/element, verified -> "
                      << stream_out << "\n";
        } else if (cal->parsed()) {
            std::vector<CalRow> rows = table_path.empty()
                                           ? builtin_calibration()
                                           : calibration_from_json(load_json(table_path));
            Calibration c = calibrate(rows);
            json resid = json::array();
            for (const auto& r : c.residuals)
                if (r.component == "total")
                    resid.push_back(json{{"row", r.row},
                                         {"metric", r.is_power ? "power" : "area"},
                                         {"actual", r.actual},
                                         {"predicted", r.predicted},
                                         {"rel_err", r.rel_err}});
            emit(json{{"units", units_to_json(c.units)},
                      {"total_residuals", resid},
                      {"max_total_rel_err", c.max_total_rel_err}},
                 out_path);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_validation_error(e.kind()) ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

#pragma once

// Workload specs, configuration-space sweeps with fan-in constraints, CSV
// emission and the worker pool behind the CLI. Sweep output is a pure
// function of (space, constraints, workloads, seed): rows are merged in
// enumeration order regardless of worker count.

#include <atomic>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sgsim/engine.hpp"
#include "sgsim/metrics.hpp"
#include "sgsim/oracle.hpp"

namespace sgsim {

/* WORKLOADS */

struct WorkloadSpec {
    enum class Kind { Gemm, Benchmark, Tensors } kind = Kind::Gemm;
    std::string name = "gemm";
    // Gemm
    int m = 64, k = 256, n = 64;
    double density_a = 1.0, density_b = 1.0;
    PatternSpec pattern;
    // Benchmark
    std::string bench;
    ModelCategory category = ModelCategory::AB;
    std::int64_t truncate_macs = 0;  // 0 = full layers
    // Tensors
    std::string a_path, b_path;
};

struct RealizedLayer {
    std::string name;
    GemmProblem problem;
    int repeat = 1;
};

inline PatternSpec pattern_from_json(const json& j) {
    PatternSpec ps;
    if (!j.contains("pattern")) return ps;
    std::string s = j["pattern"].get<std::string>();
    if (s == "bernoulli")
        ps.kind = PatternSpec::Kind::Bernoulli;
    else if (s == "per_group_one_hot")
        ps.kind = PatternSpec::Kind::PerGroupOneHot;
    else if (s == "row_skewed")
        ps.kind = PatternSpec::Kind::RowSkewed;
    else
        fail(Err::BadValue, "unknown pattern '" + s + "'");
    if (j.contains("g")) ps.g = j["g"].get<int>();
    if (j.contains("k0_group")) ps.k0_group = j["k0_group"].get<int>();
    if (j.contains("row_fraction")) ps.row_fraction = j["row_fraction"].get<double>();
    return ps;
}

inline WorkloadSpec workload_from_json(const json& j) {
    jcheck_keys(j,
                {"kind", "name", "m", "k", "n", "density_a", "density_b", "pattern", "g",
                 "k0_group", "row_fraction", "benchmark", "category", "truncate_macs", "a", "b"},
                "workload");
    WorkloadSpec w;
    std::string kind = jreq(j, "kind", "workload").get<std::string>();
    if (kind == "gemm") {
        w.kind = WorkloadSpec::Kind::Gemm;
        w.m = jreq(j, "m", "workload").get<int>();
        w.k = jreq(j, "k", "workload").get<int>();
        w.n = jreq(j, "n", "workload").get<int>();
        if (j.contains("density_a")) w.density_a = j["density_a"].get<double>();
        if (j.contains("density_b")) w.density_b = j["density_b"].get<double>();
        w.pattern = pattern_from_json(j);
        w.name = j.contains("name") ? j["name"].get<std::string>() : "gemm";
    } else if (kind == "benchmark") {
        w.kind = WorkloadSpec::Kind::Benchmark;
        w.bench = jreq(j, "benchmark", "workload").get<std::string>();
        benchmark(w.bench);  // existence check
        if (j.contains("category"))
            w.category = category_from_name(j["category"].get<std::string>());
        if (j.contains("truncate_macs")) w.truncate_macs = j["truncate_macs"].get<std::int64_t>();
        w.name = w.bench + "." + category_name(w.category);
    } else if (kind == "tensors") {
        w.kind = WorkloadSpec::Kind::Tensors;
        w.a_path = jreq(j, "a", "workload").get<std::string>();
        w.b_path = jreq(j, "b", "workload").get<std::string>();
        w.name = j.contains("name") ? j["name"].get<std::string>() : "tensors";
    } else {
        fail(Err::BadValue, "unknown workload kind '" + kind + "'");
    }
    return w;
}

// Category picks which operand keeps its benchmark sparsity; the other
// side is dense.
inline std::pair<double, double> category_densities(const Benchmark& b, ModelCategory cat) {
    switch (cat) {
        case ModelCategory::Dense: return {1.0, 1.0};
        case ModelCategory::A:     return {b.density_a, 1.0};
        case ModelCategory::B:     return {1.0, b.density_b};
        case ModelCategory::AB:    return {b.density_a, b.density_b};
    }
    return {1.0, 1.0};
}

inline std::vector<RealizedLayer> realize(const WorkloadSpec& w, std::uint64_t seed) {
    std::vector<RealizedLayer> out;
    switch (w.kind) {
        case WorkloadSpec::Kind::Gemm: {
            out.push_back(
                {w.name, random_problem(w.m, w.k, w.n, w.density_a, w.density_b, seed, w.pattern),
                 1});
            break;
        }
        case WorkloadSpec::Kind::Benchmark: {
            const Benchmark& b = benchmark(w.bench);
            auto [da, db] = category_densities(b, w.category);
            for (std::size_t i = 0; i < b.layers.size(); ++i) {
                const BenchLayer& l = b.layers[i];
                GemmDims d{l.m, l.k, l.n};
                if (w.truncate_macs > 0) d = truncate_layer(d, w.truncate_macs);
                out.push_back({b.name + "/" + l.name,
                               random_problem(d.m, d.k, d.n, da, db,
                                              Rng::mix(seed, 1000 + i), w.pattern),
                               l.repeat});
            }
            break;
        }
        case WorkloadSpec::Kind::Tensors: {
            int ar, ac, br, bc;
            auto av = read_tensor(w.a_path, ar, ac);
            auto bv = read_tensor(w.b_path, br, bc);
            require(ac == br, Err::ConfigTensorMismatch, "A columns must equal B rows");
            GemmProblem p = make_problem(ar, ac, bc);
            p.a = std::move(av);
            p.b = std::move(bv);
            out.push_back({w.name, std::move(p), 1});
            break;
        }
    }
    return out;
}

/* SINGLE RUNS */

struct RunRow {
    ArchConfig cfg;
    std::string workload;
    std::uint64_t seed = 0;
    std::uint64_t cycles = 0;
    std::uint64_t dense = 0;
    double speedup = 0;
    StallBreakdown stalls;
    bool functional_ok = true;
    CostReport cost;
};

inline SimReport simulate_any(const GemmProblem& p, const ArchConfig& cfg, ModelCategory cat,
                              const SimOptions& opts) {
    if (cfg.mode == Mode::Griffin) return simulate_griffin(p, cfg, cat, opts);
    return simulate(p, cfg, opts);
}

inline RunRow run_workload(const ArchConfig& cfg, const WorkloadSpec& w, std::uint64_t seed,
                           const SimOptions& opts, const UnitCostTable& units) {
    RunRow row;
    row.cfg = cfg;
    row.workload = w.name;
    row.seed = seed;
    ModelCategory cat = w.kind == WorkloadSpec::Kind::Benchmark ? w.category : ModelCategory::AB;
    for (const RealizedLayer& l : realize(w, seed)) {
        SimReport r = simulate_any(l.problem, cfg, cat, opts);
        row.cycles += std::uint64_t(l.repeat) * r.cycles;
        row.dense += std::uint64_t(l.repeat) * r.dense_cycles;
        row.stalls.output_sync += std::uint64_t(l.repeat) * r.stalls.output_sync;
        row.stalls.bank_conflict += std::uint64_t(l.repeat) * r.stalls.bank_conflict;
        row.stalls.buf_full += std::uint64_t(l.repeat) * r.stalls.buf_full;
        row.stalls.bandwidth += std::uint64_t(l.repeat) * r.stalls.bandwidth;
        row.functional_ok = row.functional_ok && r.functional_ok;
    }
    row.speedup = row.cycles ? double(row.dense) / double(row.cycles) : 0.0;
    row.cost = effective_efficiency(cost(cfg, units), row.speedup);
    return row;
}

/* SWEEP */

struct SweepSpace {
    std::vector<Mode> modes = {Mode::SparseB};
    std::vector<int> da1 = {0}, da2 = {0}, da3 = {0};
    std::vector<int> db1 = {0}, db2 = {0}, db3 = {0};
    std::vector<bool> shuffle = {true};
    int max_amux = 0;  // 0 = unconstrained
    int max_bmux = 0;
    ArchConfig base;  // core/memory template
};

inline SweepSpace space_from_json(const json& j) {
    jcheck_keys(j,
                {"modes", "da1", "da2", "da3", "db1", "db2", "db3", "shuffle", "max_amux",
                 "max_bmux", "base"},
                "sweep space");
    SweepSpace s;
    auto ints = [&](const char* key, std::vector<int>& out) {
        if (!j.contains(key)) return;
        out.clear();
        for (const auto& v : j[key]) out.push_back(v.get<int>());
        require(!out.empty(), Err::BadValue, std::string("empty range for ") + key);
    };
    if (j.contains("modes")) {
        s.modes.clear();
        for (const auto& v : j["modes"]) s.modes.push_back(mode_from_name(v.get<std::string>()));
    }
    ints("da1", s.da1);
    ints("da2", s.da2);
    ints("da3", s.da3);
    ints("db1", s.db1);
    ints("db2", s.db2);
    ints("db3", s.db3);
    if (j.contains("shuffle")) {
        s.shuffle.clear();
        for (const auto& v : j["shuffle"]) s.shuffle.push_back(v.get<bool>());
    }
    if (j.contains("max_amux")) s.max_amux = j["max_amux"].get<int>();
    if (j.contains("max_bmux")) s.max_bmux = j["max_bmux"].get<int>();
    if (j.contains("base")) s.base = config_from_json(j["base"]);
    return s;
}

inline std::vector<ArchConfig> enumerate_space(const SweepSpace& s) {
    std::vector<ArchConfig> out;
    const std::vector<int> zero = {0};
    for (Mode mode : s.modes) {
        require(mode != Mode::Griffin, Err::BadValue,
                "sweep griffin morph targets directly (dense/sparse_a/sparse_b/sparse_ab)");
        const bool use_a = mode == Mode::SparseA || mode == Mode::SparseAB;
        const bool use_b = mode == Mode::SparseB || mode == Mode::SparseAB;
        const auto& a1 = use_a ? s.da1 : zero;
        const auto& a2 = use_a ? s.da2 : zero;
        const auto& a3 = use_a ? s.da3 : zero;
        const auto& b1 = use_b ? s.db1 : zero;
        const auto& b2 = use_b ? s.db2 : zero;
        const auto& b3 = use_b ? s.db3 : zero;
        for (int da1 : a1)
            for (int da2 : a2)
                for (int da3 : a3)
                    for (int db1 : b1)
                        for (int db2 : b2)
                            for (int db3 : b3)
                                for (bool shuf : s.shuffle) {
                                    ArchConfig c = s.base;
                                    c.mode = mode;
                                    c.a_window = {da1, da2, da3};
                                    c.b_window = {db1, db2, db3};
                                    c.shuffle = shuf;
                                    c.griffin_conf_a.reset();
                                    c.griffin_conf_b.reset();
                                    try {
                                        c = validate(c);
                                    } catch (const Error&) {
                                        continue;  // invalid window combination
                                    }
                                    OverheadReport oh = compute_overheads(c);
                                    if (s.max_amux > 0 && oh.amux_fanin > s.max_amux) continue;
                                    if (s.max_bmux > 0 && oh.bmux_fanin > s.max_bmux) continue;
                                    out.push_back(c);
                                }
    }
    require(!out.empty(), Err::EmptySpaceAfterConstraints,
            "no configuration satisfies the sweep constraints");
    return out;
}

inline std::vector<RunRow> sweep(const std::vector<ArchConfig>& cfgs,
                                 const std::vector<WorkloadSpec>& workloads, std::uint64_t seed,
                                 const SimOptions& opts, const UnitCostTable& units, int jobs) {
    std::vector<RunRow> rows(cfgs.size() * workloads.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= rows.size()) return;
            const ArchConfig& c = cfgs[i / workloads.size()];
            const WorkloadSpec& w = workloads[i % workloads.size()];
            rows[i] = run_workload(c, w, seed, opts, units);
        }
    };
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

/* CSV */

inline std::string csv_header() {
    return "mode,da1,da2,da3,db1,db2,db3,shuffle,workload,seed,cycles,dense_cycles,speedup,"
           "stall_output_sync,stall_bank_conflict,stall_buf_full,stall_bandwidth,functional_ok,"
           "power_mw,area_kum2,tops,tops_per_w,tops_per_mm2,eff_tops_per_w,eff_tops_per_mm2";
}

inline std::string csv_row(const RunRow& r) {
    std::ostringstream os;
    os << mode_name(r.cfg.mode) << ',' << r.cfg.a_window.d1 << ',' << r.cfg.a_window.d2 << ','
       << r.cfg.a_window.d3 << ',' << r.cfg.b_window.d1 << ',' << r.cfg.b_window.d2 << ','
       << r.cfg.b_window.d3 << ',' << (r.cfg.shuffle ? 1 : 0) << ',' << r.workload << ','
       << r.seed << ',' << r.cycles << ',' << r.dense << ',' << r.speedup << ','
       << r.stalls.output_sync << ',' << r.stalls.bank_conflict << ',' << r.stalls.buf_full << ','
       << r.stalls.bandwidth << ',' << (r.functional_ok ? 1 : 0) << ',' << r.cost.power_mw << ','
       << r.cost.area_kum2 << ',' << r.cost.tops << ',' << r.cost.tops_per_w << ','
       << r.cost.tops_per_mm2 << ',' << r.cost.effective_tops_per_w << ','
       << r.cost.effective_tops_per_mm2;
    return os.str();
}

inline void write_csv(const std::string& path, const std::vector<RunRow>& rows) {
    std::ofstream f(path);
    require(f.good(), Err::BadFile, "cannot open " + path);
    f << csv_header() << '\n';
    for (const auto& r : rows) f << csv_row(r) << '\n';
    require(f.good(), Err::BadFile, "write failed: " + path);
}

// Minimal CSV reading for the pareto subcommand (no quoting in our schema).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return int(i);
        fail(Err::BadValue, "no CSV column named '" + name + "'");
    }
};

inline CsvTable read_csv(const std::string& path) {
    std::ifstream f(path);
    require(f.good(), Err::BadFile, "cannot open " + path);
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            t.header = cells;
            first = false;
        } else {
            t.rows.push_back(cells);
        }
    }
    require(!t.header.empty(), Err::BadFile, "empty CSV: " + path);
    return t;
}

}  // namespace sgsim

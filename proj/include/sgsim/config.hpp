#pragma once

// Architecture configuration space: borrowing windows, core dimensions,
// memory parameters, structural overhead accounting, hybrid-mode morphing
// and the named design-point presets.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgsim/common.hpp"

namespace sgsim {

// Maximum distances a zero slot may pull a nonzero replacement from:
// d1 chunks forward in time, d2 lanes within a chunk, d3 neighboring
// PEs along the third tensor dimension (rows for A, columns for B).
struct BorrowWindow {
    int d1 = 0;
    int d2 = 0;
    int d3 = 0;

    bool operator==(const BorrowWindow&) const = default;
    bool zero() const { return d1 == 0 && d2 == 0 && d3 == 0; }
};

struct CoreDims {
    int k0 = 16;  // dot-product width per PE
    int n0 = 16;  // PE columns
    int m0 = 4;   // PE rows

    bool operator==(const CoreDims&) const = default;
    std::int64_t macs() const { return std::int64_t(k0) * n0 * m0; }
};

// Bandwidths are stored in bytes/cycle so the engine stays frequency-free;
// the CLI converts from GB/s at the 800 MHz target.
struct MemoryParams {
    std::int64_t asram_bytes = 512 * 1024;
    std::int64_t bsram_bytes = 32 * 1024;
    double asram_bw = 64.0;    // 51.2 GB/s @ 800 MHz
    double bsram_bw = 256.0;   // 204.8 GB/s @ 800 MHz
    double dram_bw = 62.5;     // 50 GB/s @ 800 MHz
    int banks_a = 4;

    bool operator==(const MemoryParams&) const = default;
};

enum class Mode { Dense, SparseA, SparseB, SparseAB, Griffin };

inline const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Dense:    return "dense";
        case Mode::SparseA:  return "sparse_a";
        case Mode::SparseB:  return "sparse_b";
        case Mode::SparseAB: return "sparse_ab";
        case Mode::Griffin:  return "griffin";
    }
    return "?";
}

inline Mode mode_from_name(const std::string& s) {
    if (s == "dense") return Mode::Dense;
    if (s == "sparse_a") return Mode::SparseA;
    if (s == "sparse_b") return Mode::SparseB;
    if (s == "sparse_ab") return Mode::SparseAB;
    if (s == "griffin") return Mode::Griffin;
    fail(Err::BadValue, "unknown mode '" + s + "'");
}

// Workload category a hybrid core is asked to run as.
enum class ModelCategory { Dense, A, B, AB };

inline const char* category_name(ModelCategory c) {
    switch (c) {
        case ModelCategory::Dense: return "dense";
        case ModelCategory::A:     return "a";
        case ModelCategory::B:     return "b";
        case ModelCategory::AB:    return "ab";
    }
    return "?";
}

inline ModelCategory category_from_name(const std::string& s) {
    if (s == "dense") return ModelCategory::Dense;
    if (s == "a") return ModelCategory::A;
    if (s == "b") return ModelCategory::B;
    if (s == "ab") return ModelCategory::AB;
    fail(Err::BadValue, "unknown model category '" + s + "'");
}

struct ArchConfig {
    Mode mode = Mode::Dense;
    BorrowWindow a_window;
    BorrowWindow b_window;
    bool shuffle = false;
    CoreDims core;
    MemoryParams memory;
    std::optional<BorrowWindow> griffin_conf_a;
    std::optional<BorrowWindow> griffin_conf_b;

    bool operator==(const ArchConfig&) const = default;
};

// Structural cost counts of one core under a given configuration.
struct OverheadReport {
    int abuf_depth = 1;            // words of A staged per row buffer
    int bbuf_depth = 1;            // words of B staged per column buffer
    int amux_fanin = 1;
    int bmux_fanin = 1;
    int adder_trees_per_pe = 1;
    int metadata_bits_per_b_element = 0;
    int arbiters = 0;              // row-level selection logic
    int crossbars_4x4 = 0;         // lane shuffle network

    bool operator==(const OverheadReport&) const = default;

    bool dominates(const OverheadReport& o) const {
        return abuf_depth >= o.abuf_depth && bbuf_depth >= o.bbuf_depth &&
               amux_fanin >= o.amux_fanin && bmux_fanin >= o.bmux_fanin &&
               adder_trees_per_pe >= o.adder_trees_per_pe &&
               metadata_bits_per_b_element >= o.metadata_bits_per_b_element &&
               arbiters >= o.arbiters && crossbars_4x4 >= o.crossbars_4x4;
    }

    static OverheadReport max_of(const OverheadReport& a, const OverheadReport& b) {
        OverheadReport r;
        r.abuf_depth = std::max(a.abuf_depth, b.abuf_depth);
        r.bbuf_depth = std::max(a.bbuf_depth, b.bbuf_depth);
        r.amux_fanin = std::max(a.amux_fanin, b.amux_fanin);
        r.bmux_fanin = std::max(a.bmux_fanin, b.bmux_fanin);
        r.adder_trees_per_pe = std::max(a.adder_trees_per_pe, b.adder_trees_per_pe);
        r.metadata_bits_per_b_element =
            std::max(a.metadata_bits_per_b_element, b.metadata_bits_per_b_element);
        r.arbiters = std::max(a.arbiters, b.arbiters);
        r.crossbars_4x4 = std::max(a.crossbars_4x4, b.crossbars_4x4);
        return r;
    }
};

// Per-field widths of the packed B-side metadata record.
struct MetaWidths {
    int t_bits = 0;
    int lane_bits = 0;
    int col_bits = 0;
    int total() const { return t_bits + lane_bits + col_bits; }
};

inline MetaWidths meta_widths(const BorrowWindow& w) {
    return {clog2(std::uint64_t(w.d1) + 1), clog2(std::uint64_t(w.d2) + 1),
            clog2(std::uint64_t(w.d3) + 1)};
}

/* VALIDATION */

inline void check_window(const BorrowWindow& w, const char* which) {
    require(w.d1 >= 0 && w.d2 >= 0 && w.d3 >= 0, Err::ModeWindowMismatch,
            std::string(which) + " window has a negative distance");
    // Lane and cross-PE borrowing ride on a time step; a window that allows
    // d2/d3 movement with d1 == 0 is not realizable.
    require(!(w.d1 == 0 && (w.d2 > 0 || w.d3 > 0)), Err::ModeWindowMismatch,
            std::string(which) + " window borrows diagonally with d1 == 0");
}

inline OverheadReport compute_overheads(const ArchConfig& cfg);

inline ArchConfig morph(const ArchConfig& cfg, ModelCategory category);

// Hybrid feasibility: a morph target must live entirely inside the buffers,
// adder trees and AMUX network of the dual base. The BMUX and the metadata
// width are allowed to grow; they are the cheap additions the hybrid core
// pays for up front (and they show up in its overhead report).
inline void morph_check(const ArchConfig& cfg) {
    ArchConfig base = cfg;
    base.mode = Mode::SparseAB;
    base.griffin_conf_a.reset();
    base.griffin_conf_b.reset();
    OverheadReport bo = compute_overheads(base);
    auto check_target = [&](const ArchConfig& t, const char* name) {
        OverheadReport to = compute_overheads(t);
        bool fits = to.abuf_depth <= bo.abuf_depth && to.bbuf_depth <= bo.bbuf_depth &&
                    to.adder_trees_per_pe <= bo.adder_trees_per_pe &&
                    to.amux_fanin <= bo.amux_fanin;
        require(fits, Err::MorphExceedsHardware,
                std::string(name) + " does not fit the dual-base buffers/adders/AMUX");
    };
    ArchConfig ta = cfg;
    ta.mode = Mode::SparseA;
    ta.a_window = *cfg.griffin_conf_a;
    ta.b_window = {};
    ta.griffin_conf_a.reset();
    ta.griffin_conf_b.reset();
    check_target(ta, "conf.A");
    ArchConfig tb = cfg;
    tb.mode = Mode::SparseB;
    tb.a_window = {};
    tb.b_window = *cfg.griffin_conf_b;
    tb.griffin_conf_a.reset();
    tb.griffin_conf_b.reset();
    check_target(tb, "conf.B");
}

inline ArchConfig validate(const ArchConfig& cfg) {
    require(cfg.core.k0 > 0 && cfg.core.n0 > 0 && cfg.core.m0 > 0, Err::DegenerateCore,
            "core dimensions must be positive");
    require(cfg.memory.asram_bytes > 0 && cfg.memory.bsram_bytes > 0 &&
                cfg.memory.asram_bw > 0 && cfg.memory.bsram_bw > 0 && cfg.memory.dram_bw > 0 &&
                cfg.memory.banks_a > 0,
            Err::BadValue, "memory parameters must be positive");
    check_window(cfg.a_window, "A");
    check_window(cfg.b_window, "B");
    if (cfg.shuffle)
        require(cfg.core.k0 % 4 == 0, Err::K0NotDivisibleBy4,
                "shuffle needs K0 divisible by 4");
    switch (cfg.mode) {
        case Mode::Dense:
            require(cfg.a_window.zero() && cfg.b_window.zero(), Err::ModeWindowMismatch,
                    "dense mode forbids borrowing windows");
            break;
        case Mode::SparseA:
            require(cfg.b_window.zero(), Err::ModeWindowMismatch,
                    "sparse_a mode forbids a B window");
            break;
        case Mode::SparseB:
            require(cfg.a_window.zero(), Err::ModeWindowMismatch,
                    "sparse_b mode forbids an A window");
            break;
        case Mode::SparseAB:
            break;
        case Mode::Griffin:
            require(cfg.griffin_conf_a.has_value() && cfg.griffin_conf_b.has_value(),
                    Err::ModeWindowMismatch, "griffin mode needs conf.A and conf.B windows");
            check_window(*cfg.griffin_conf_a, "conf.A");
            check_window(*cfg.griffin_conf_b, "conf.B");
            morph_check(cfg);
            break;
    }
    return cfg;
}

/* STRUCTURAL OVERHEADS */

inline OverheadReport compute_overheads(const ArchConfig& cfg) {
    OverheadReport r;
    const BorrowWindow& a = cfg.a_window;
    const BorrowWindow& b = cfg.b_window;
    switch (cfg.mode) {
        case Mode::Dense:
            break;
        case Mode::SparseB:
            r.abuf_depth = 1 + b.d1;
            r.bbuf_depth = 1;
            r.amux_fanin = 1 + b.d1 * (1 + b.d2);
            r.bmux_fanin = 1;
            r.adder_trees_per_pe = 1 + b.d3;
            r.metadata_bits_per_b_element = meta_widths(b).total();
            break;
        case Mode::SparseA:
            r.abuf_depth = 1 + a.d1;
            r.bbuf_depth = 1 + a.d1;
            r.amux_fanin = 1 + a.d1 * (1 + a.d2) * (1 + a.d3);
            r.bmux_fanin = 1 + a.d1 * (1 + a.d2);
            r.adder_trees_per_pe = 1 + a.d3;
            r.arbiters = cfg.core.m0;  // one selection arbiter per PE row
            break;
        case Mode::SparseAB: {
            int L = (1 + a.d1) * (1 + b.d1);
            r.abuf_depth = L;
            r.bbuf_depth = 1 + b.d1;
            r.amux_fanin = 1 + (L - 1) * (1 + a.d2 + b.d2) * (1 + a.d3);
            r.bmux_fanin = 1 + a.d1 * (1 + a.d2);
            r.adder_trees_per_pe = (1 + a.d3) * (1 + b.d3);
            r.metadata_bits_per_b_element = meta_widths(b).total();
            break;
        }
        case Mode::Griffin: {
            ArchConfig base = cfg;
            base.mode = Mode::SparseAB;
            base.griffin_conf_a.reset();
            base.griffin_conf_b.reset();
            ArchConfig ca = base;
            ca.mode = Mode::SparseA;
            ca.a_window = *cfg.griffin_conf_a;
            ca.b_window = {};
            ArchConfig cb = base;
            cb.mode = Mode::SparseB;
            cb.a_window = {};
            cb.b_window = *cfg.griffin_conf_b;
            r = OverheadReport::max_of(compute_overheads(base),
                                       OverheadReport::max_of(compute_overheads(ca),
                                                              compute_overheads(cb)));
            break;
        }
    }
    if (cfg.shuffle) r.crossbars_4x4 = int(ceil_div(cfg.core.k0, 4));
    return r;
}

/* MORPHING */

inline ArchConfig morph(const ArchConfig& cfg, ModelCategory category) {
    require(cfg.mode == Mode::Griffin, Err::BadValue, "morph applies to griffin configs only");
    morph_check(cfg);
    ArchConfig out = cfg;
    out.griffin_conf_a.reset();
    out.griffin_conf_b.reset();
    switch (category) {
        case ModelCategory::Dense:
            out.mode = Mode::Dense;
            out.a_window = {};
            out.b_window = {};
            break;
        case ModelCategory::A:
            out.mode = Mode::SparseA;
            out.a_window = *cfg.griffin_conf_a;
            out.b_window = {};
            break;
        case ModelCategory::B:
            out.mode = Mode::SparseB;
            out.a_window = {};
            out.b_window = *cfg.griffin_conf_b;
            break;
        case ModelCategory::AB:
            out.mode = Mode::SparseAB;
            break;
    }
    return validate(out);
}

/* PRESETS */

inline std::vector<std::string> preset_names() {
    return {"dense", "sparse_b_star", "sparse_a_star", "sparse_ab_star", "griffin"};
}

inline ArchConfig preset(const std::string& name) {
    ArchConfig cfg;  // core (16,16,4) and default memory parameters
    if (name == "dense") {
        cfg.mode = Mode::Dense;
    } else if (name == "sparse_b_star") {
        cfg.mode = Mode::SparseB;
        cfg.b_window = {4, 0, 1};
        cfg.shuffle = true;
    } else if (name == "sparse_a_star") {
        cfg.mode = Mode::SparseA;
        cfg.a_window = {2, 1, 0};
        cfg.shuffle = true;
    } else if (name == "sparse_ab_star") {
        cfg.mode = Mode::SparseAB;
        cfg.a_window = {2, 0, 0};
        cfg.b_window = {2, 0, 1};
        cfg.shuffle = true;
    } else if (name == "griffin") {
        cfg.mode = Mode::Griffin;
        cfg.a_window = {2, 0, 0};
        cfg.b_window = {2, 0, 1};
        cfg.griffin_conf_a = BorrowWindow{2, 1, 1};
        cfg.griffin_conf_b = BorrowWindow{8, 0, 1};
        cfg.shuffle = true;
    } else {
        fail(Err::UnknownPreset, "no preset named '" + name + "'");
    }
    return validate(cfg);
}

/* JSON I/O (strict: unknown keys are an error) */

using json = nlohmann::json;

inline void jcheck_keys(const json& j, std::initializer_list<const char*> allowed,
                        const char* ctx) {
    require(j.is_object(), Err::BadFile, std::string(ctx) + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        require(ok, Err::BadFile, std::string("unknown key '") + it.key() + "' in " + ctx);
    }
}

inline const json& jreq(const json& j, const char* key, const char* ctx) {
    auto it = j.find(key);
    require(it != j.end(), Err::BadFile, std::string("missing key '") + key + "' in " + ctx);
    return *it;
}

inline json window_to_json(const BorrowWindow& w) {
    return json{{"d1", w.d1}, {"d2", w.d2}, {"d3", w.d3}};
}

inline BorrowWindow window_from_json(const json& j, const char* ctx) {
    jcheck_keys(j, {"d1", "d2", "d3"}, ctx);
    BorrowWindow w;
    w.d1 = jreq(j, "d1", ctx).get<int>();
    w.d2 = jreq(j, "d2", ctx).get<int>();
    w.d3 = jreq(j, "d3", ctx).get<int>();
    return w;
}

inline json config_to_json(const ArchConfig& c) {
    json j{{"mode", mode_name(c.mode)},
           {"a_window", window_to_json(c.a_window)},
           {"b_window", window_to_json(c.b_window)},
           {"shuffle", c.shuffle},
           {"core", {{"k0", c.core.k0}, {"n0", c.core.n0}, {"m0", c.core.m0}}},
           {"memory",
            {{"asram_bytes", c.memory.asram_bytes},
             {"bsram_bytes", c.memory.bsram_bytes},
             {"asram_bw", c.memory.asram_bw},
             {"bsram_bw", c.memory.bsram_bw},
             {"dram_bw", c.memory.dram_bw},
             {"banks_a", c.memory.banks_a}}}};
    if (c.griffin_conf_a) j["griffin_conf_a"] = window_to_json(*c.griffin_conf_a);
    if (c.griffin_conf_b) j["griffin_conf_b"] = window_to_json(*c.griffin_conf_b);
    return j;
}

inline ArchConfig config_from_json(const json& j) {
    jcheck_keys(j,
                {"mode", "a_window", "b_window", "shuffle", "core", "memory", "griffin_conf_a",
                 "griffin_conf_b"},
                "config");
    ArchConfig c;
    c.mode = mode_from_name(jreq(j, "mode", "config").get<std::string>());
    if (j.contains("a_window")) c.a_window = window_from_json(j["a_window"], "a_window");
    if (j.contains("b_window")) c.b_window = window_from_json(j["b_window"], "b_window");
    if (j.contains("shuffle")) c.shuffle = j["shuffle"].get<bool>();
    if (j.contains("core")) {
        const json& jc = j["core"];
        jcheck_keys(jc, {"k0", "n0", "m0"}, "core");
        c.core.k0 = jreq(jc, "k0", "core").get<int>();
        c.core.n0 = jreq(jc, "n0", "core").get<int>();
        c.core.m0 = jreq(jc, "m0", "core").get<int>();
    }
    if (j.contains("memory")) {
        const json& jm = j["memory"];
        jcheck_keys(jm, {"asram_bytes", "bsram_bytes", "asram_bw", "bsram_bw", "dram_bw", "banks_a"},
                    "memory");
        if (jm.contains("asram_bytes")) c.memory.asram_bytes = jm["asram_bytes"].get<std::int64_t>();
        if (jm.contains("bsram_bytes")) c.memory.bsram_bytes = jm["bsram_bytes"].get<std::int64_t>();
        if (jm.contains("asram_bw")) c.memory.asram_bw = jm["asram_bw"].get<double>();
        if (jm.contains("bsram_bw")) c.memory.bsram_bw = jm["bsram_bw"].get<double>();
        if (jm.contains("dram_bw")) c.memory.dram_bw = jm["dram_bw"].get<double>();
        if (jm.contains("banks_a")) c.memory.banks_a = jm["banks_a"].get<int>();
    }
    if (j.contains("griffin_conf_a"))
        c.griffin_conf_a = window_from_json(j["griffin_conf_a"], "griffin_conf_a");
    if (j.contains("griffin_conf_b"))
        c.griffin_conf_b = window_from_json(j["griffin_conf_b"], "griffin_conf_b");
    return validate(c);
}

}  // namespace sgsim

#pragma once

// Power/area model: least-squares calibration of per-resource unit costs
// against published synthesis breakdowns, static cost prediction for a
// configuration, effective efficiency figures, and Pareto extraction.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgsim/common.hpp"
#include "sgsim/config.hpp"

namespace sgsim {

constexpr double kTargetGhz = 0.8;

// Breakdown columns, in report order.
enum class Comp { CTRL, SHF, ABUF, BBUF, REG_WR, ACC, MUL, ADT, MUX, SRAM };
constexpr int kNumComp = 10;
inline const char* comp_name(int i) {
    static const char* names[kNumComp] = {"CTRL", "SHF",  "ABUF", "BBUF", "REG_WR",
                                          "ACC",  "MUL", "ADT",  "MUX",  "SRAM"};
    return names[i];
}

constexpr int kMaxReg = 3;  // regressors per component

/* RESOURCE COUNTS */

// Physical quantities each breakdown column scales with. One row of the
// calibration design matrix.
inline std::array<std::array<double, kMaxReg>, kNumComp> resource_counts(const ArchConfig& cfg) {
    const OverheadReport oh = compute_overheads(cfg);
    const double k0 = cfg.core.k0, n0 = cfg.core.n0, m0 = cfg.core.m0;
    const double pes = m0 * n0;

    // A-side selectors are shared across a row only when selection is
    // identical along the row (B dense); metadata-driven and dual modes
    // need one per PE.
    double amux_units = 0;
    switch (cfg.mode) {
        case Mode::Dense:    amux_units = 0; break;
        case Mode::SparseA:  amux_units = k0 * m0; break;
        default:             amux_units = k0 * pes; break;
    }
    double mux_inputs = (oh.amux_fanin - 1) * amux_units + (oh.bmux_fanin - 1) * k0 * pes;

    double control_units = (cfg.mode == Mode::SparseAB || cfg.mode == Mode::Griffin) ? pes : 0;

    // SRAM service rate implied by the borrowing windows (bytes/cycle),
    // relative to the dense core's demand.
    auto demand = [&](const ArchConfig& c) -> std::pair<double, double> {
        int da1 = c.a_window.d1, db1 = c.b_window.d1;
        switch (c.mode) {
            case Mode::Dense:    return {m0 * k0, k0 * n0};
            case Mode::SparseB:  return {m0 * k0 * (1 + db1), k0 * n0};
            case Mode::SparseA:  return {m0 * k0 * (1 + da1), k0 * n0 * (1 + da1)};
            default:             return {m0 * k0 * (1 + da1) * (1 + db1), k0 * n0 * (1 + da1)};
        }
    };
    std::pair<double, double> dm;
    if (cfg.mode == Mode::Griffin) {
        ArchConfig base = cfg;
        base.mode = Mode::SparseAB;
        ArchConfig ca = base;
        ca.mode = Mode::SparseA;
        ca.a_window = *cfg.griffin_conf_a;
        ca.b_window = {};
        ArchConfig cb = base;
        cb.mode = Mode::SparseB;
        cb.a_window = {};
        cb.b_window = *cfg.griffin_conf_b;
        auto d0 = demand(base), d1 = demand(ca), d2 = demand(cb);
        dm = {std::max({d0.first, d1.first, d2.first}), std::max({d0.second, d1.second, d2.second})};
    } else {
        dm = demand(cfg);
    }
    double demand_delta = (dm.first + dm.second) - (m0 * k0 + k0 * n0);

    std::array<std::array<double, kMaxReg>, kNumComp> x{};
    x[int(Comp::CTRL)] = {double(oh.arbiters), control_units, 0};
    x[int(Comp::SHF)] = {double(oh.crossbars_4x4), 0, 0};
    x[int(Comp::ABUF)] = {(oh.abuf_depth - 1) * k0 * m0, 0, 0};
    x[int(Comp::BBUF)] = {(oh.bbuf_depth - 1) * k0 * n0, 0, 0};
    x[int(Comp::REG_WR)] = {8 * k0 * pes, oh.metadata_bits_per_b_element * k0 * n0, control_units};
    x[int(Comp::ACC)] = {pes, 0, 0};
    x[int(Comp::MUL)] = {k0 * pes, 0, 0};
    x[int(Comp::ADT)] = {(k0 - 1) * pes, (oh.adder_trees_per_pe - 1) * (k0 - 1) * pes, 0};
    x[int(Comp::MUX)] = {mux_inputs, 0, 0};
    x[int(Comp::SRAM)] = {double(cfg.memory.asram_bytes + cfg.memory.bsram_bytes), demand_delta, 0};
    return x;
}

/* CALIBRATION */

struct CalRow {
    std::string name;
    std::string preset_name;
    std::array<double, kNumComp> power{};
    std::array<double, kNumComp> area{};
    double power_total = 0;
    double area_total = 0;
};

// Published breakdown this model calibrates against (power mW / area kum2).
inline std::vector<CalRow> builtin_calibration() {
    auto row = [](const char* nm, const char* ps, std::array<double, kNumComp> pw,
                  std::array<double, kNumComp> ar, double pt, double at) {
        CalRow r;
        r.name = nm;
        r.preset_name = ps;
        r.power = pw;
        r.area = ar;
        r.power_total = pt;
        r.area_total = at;
        return r;
    };
    return {
        row("baseline", "dense", {0, 0, 0, 0, 22.8, 10.9, 62.6, 21.8, 0, 33.3},
            {0, 0, 0, 0, 3.2, 2.6, 29, 6.7, 0, 176}, 151, 217),
        row("sparse_b_star", "sparse_b_star", {0, 0.7, 7.5, 0, 41.0, 10.9, 55.4, 20.4, 3.5, 66.7},
            {0, 0.9, 2.0, 0, 4.0, 2.6, 33, 12.8, 6.5, 196}, 206, 258),
        row("sparse_a_star", "sparse_a_star",
            {1.2, 0.4, 4.5, 17.8, 23.2, 10.9, 67.2, 17.8, 1.5, 78.2},
            {0.7, 0.5, 0.9, 3.8, 3.8, 2.6, 34, 6.6, 3.5, 196}, 223, 253),
        row("sparse_ab_star", "sparse_ab_star",
            {18.2, 1.4, 15.3, 22.9, 64.5, 10.9, 31.7, 17.8, 7.0, 92.3},
            {8.1, 1.6, 11.5, 5.2, 6.0, 2.6, 29, 12.3, 17.5, 188}, 282, 282),
        row("griffin", "griffin", {18.2, 1.4, 15.3, 22.9, 64.5, 10.9, 31.7, 17.8, 8.8, 92.3},
            {9.4, 1.6, 11.5, 5.2, 6.0, 2.6, 29, 12.3, 20.7, 188}, 284, 286),
    };
}

namespace fit_detail {

// Nonnegative least squares for up to kMaxReg unknowns: try every subset of
// active coefficients (the rest clamped at zero), keep the best feasible.
inline std::array<double, kMaxReg> nnls(const std::vector<std::array<double, kMaxReg>>& X,
                                        const std::vector<double>& y) {
    const int n = kMaxReg;
    auto solve_subset = [&](int mask, std::array<double, kMaxReg>& out) -> bool {
        int idx[kMaxReg], m = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) idx[m++] = i;
        if (m == 0) {
            out = {0, 0, 0};
            return true;
        }
        double ata[kMaxReg][kMaxReg] = {};
        double atb[kMaxReg] = {};
        for (std::size_t r = 0; r < X.size(); ++r)
            for (int i = 0; i < m; ++i) {
                atb[i] += X[r][idx[i]] * y[r];
                for (int j = 0; j < m; ++j) ata[i][j] += X[r][idx[i]] * X[r][idx[j]];
            }
        // Gaussian elimination with partial pivoting
        for (int col = 0; col < m; ++col) {
            int piv = col;
            for (int r2 = col + 1; r2 < m; ++r2)
                if (std::fabs(ata[r2][col]) > std::fabs(ata[piv][col])) piv = r2;
            if (std::fabs(ata[piv][col]) < 1e-12) return false;
            if (piv != col) {
                for (int j = 0; j < m; ++j) std::swap(ata[piv][j], ata[col][j]);
                std::swap(atb[piv], atb[col]);
            }
            for (int r2 = 0; r2 < m; ++r2) {
                if (r2 == col) continue;
                double f = ata[r2][col] / ata[col][col];
                for (int j = 0; j < m; ++j) ata[r2][j] -= f * ata[col][j];
                atb[r2] -= f * atb[col];
            }
        }
        out = {0, 0, 0};
        for (int i = 0; i < m; ++i) {
            double v = atb[i] / ata[i][i];
            if (v < 0) return false;
            out[idx[i]] = v;
        }
        return true;
    };
    auto sse = [&](const std::array<double, kMaxReg>& c) {
        double s = 0;
        for (std::size_t r = 0; r < X.size(); ++r) {
            double pred = 0;
            for (int i = 0; i < n; ++i) pred += X[r][i] * c[i];
            s += (pred - y[r]) * (pred - y[r]);
        }
        return s;
    };
    std::array<double, kMaxReg> best{0, 0, 0};
    double best_sse = sse(best);
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::array<double, kMaxReg> c{};
        if (!solve_subset(mask, c)) continue;
        double s = sse(c);
        if (s < best_sse - 1e-12) {
            best_sse = s;
            best = c;
        }
    }
    return best;
}

}  // namespace fit_detail

// Fitted model: per component, up to kMaxReg coefficients for power and
// area, against the counts from resource_counts().
struct UnitCostTable {
    std::array<std::array<double, kMaxReg>, kNumComp> power{};
    std::array<std::array<double, kMaxReg>, kNumComp> area{};

    struct PA {
        double power = 0, area = 0;
    };
    // Named per-resource views of the fit (informational; prediction uses
    // the component model above).
    PA register_bit, buffer_word, mux_input, adder, multiplier, arbiter, control_unit,
        crossbar_4x4, sram_byte;
};

struct CalResidual {
    std::string row;
    std::string component;  // "total" for row totals
    bool is_power = false;
    double actual = 0;
    double predicted = 0;
    double rel_err = 0;  // (pred-actual)/max(|actual|,eps)
};

struct Calibration {
    UnitCostTable units;
    std::vector<CalResidual> residuals;
    double max_total_rel_err = 0;
};

inline Calibration calibrate(const std::vector<CalRow>& rows) {
    require(rows.size() >= 2, Err::UnderdeterminedFit, "need at least two calibration rows");
    std::vector<std::array<std::array<double, kMaxReg>, kNumComp>> counts;
    counts.reserve(rows.size());
    for (const auto& r : rows) counts.push_back(resource_counts(preset(r.preset_name)));

    Calibration cal;
    for (int comp = 0; comp < kNumComp; ++comp) {
        std::vector<std::array<double, kMaxReg>> X;
        std::vector<double> yp, ya;
        bool any_count = false;
        bool any_value = false;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            X.push_back(counts[r][comp]);
            yp.push_back(rows[r].power[comp]);
            ya.push_back(rows[r].area[comp]);
            for (double v : counts[r][comp]) any_count |= v != 0;
            any_value |= rows[r].power[comp] != 0 || rows[r].area[comp] != 0;
        }
        require(any_count || !any_value, Err::UnderdeterminedFit,
                std::string("no resource counts drive component ") + comp_name(comp));
        cal.units.power[comp] = fit_detail::nnls(X, yp);
        cal.units.area[comp] = fit_detail::nnls(X, ya);
    }

    auto& u = cal.units;
    auto pa = [&](Comp c, int slot) {
        return UnitCostTable::PA{u.power[int(c)][slot], u.area[int(c)][slot]};
    };
    u.register_bit = pa(Comp::REG_WR, 1);
    u.buffer_word = {(u.power[int(Comp::ABUF)][0] + u.power[int(Comp::BBUF)][0]) / 2,
                     (u.area[int(Comp::ABUF)][0] + u.area[int(Comp::BBUF)][0]) / 2};
    u.mux_input = pa(Comp::MUX, 0);
    u.adder = pa(Comp::ADT, 1);
    u.multiplier = pa(Comp::MUL, 0);
    u.arbiter = pa(Comp::CTRL, 0);
    u.control_unit = {u.power[int(Comp::CTRL)][1] + u.power[int(Comp::REG_WR)][2],
                      u.area[int(Comp::CTRL)][1] + u.area[int(Comp::REG_WR)][2]};
    u.crossbar_4x4 = pa(Comp::SHF, 0);
    u.sram_byte = pa(Comp::SRAM, 0);

    for (std::size_t r = 0; r < rows.size(); ++r) {
        double tp = 0, ta = 0;
        for (int comp = 0; comp < kNumComp; ++comp) {
            double pp = 0, aa = 0;
            for (int i = 0; i < kMaxReg; ++i) {
                pp += counts[r][comp][i] * cal.units.power[comp][i];
                aa += counts[r][comp][i] * cal.units.area[comp][i];
            }
            tp += pp;
            ta += aa;
            auto rel = [](double pred, double act) {
                return (pred - act) / std::max(std::fabs(act), 1e-9);
            };
            cal.residuals.push_back({rows[r].name, comp_name(comp), true, rows[r].power[comp], pp,
                                     rel(pp, rows[r].power[comp])});
            cal.residuals.push_back({rows[r].name, comp_name(comp), false, rows[r].area[comp], aa,
                                     rel(aa, rows[r].area[comp])});
        }
        double ep = (tp - rows[r].power_total) / rows[r].power_total;
        double ea = (ta - rows[r].area_total) / rows[r].area_total;
        cal.residuals.push_back({rows[r].name, "total", true, rows[r].power_total, tp, ep});
        cal.residuals.push_back({rows[r].name, "total", false, rows[r].area_total, ta, ea});
        cal.max_total_rel_err =
            std::max({cal.max_total_rel_err, std::fabs(ep), std::fabs(ea)});
    }
    return cal;
}

/* COST REPORTS */

struct CostReport {
    double power_mw = 0;
    double area_kum2 = 0;
    std::array<double, kNumComp> power_breakdown{};
    std::array<double, kNumComp> area_breakdown{};
    double tops = 0;
    double tops_per_w = 0;
    double tops_per_mm2 = 0;
    double effective_tops_per_w = 0;
    double effective_tops_per_mm2 = 0;
};

inline CostReport cost(const ArchConfig& cfg, const UnitCostTable& units) {
    CostReport r;
    auto x = resource_counts(cfg);
    for (int comp = 0; comp < kNumComp; ++comp) {
        for (int i = 0; i < kMaxReg; ++i) {
            r.power_breakdown[comp] += x[comp][i] * units.power[comp][i];
            r.area_breakdown[comp] += x[comp][i] * units.area[comp][i];
        }
        r.power_mw += r.power_breakdown[comp];
        r.area_kum2 += r.area_breakdown[comp];
    }
    r.tops = 2.0 * double(cfg.core.macs()) * kTargetGhz * 1e9 / 1e12;
    r.tops_per_w = r.power_mw > 0 ? r.tops / (r.power_mw / 1000.0) : 0;
    r.tops_per_mm2 = r.area_kum2 > 0 ? r.tops / (r.area_kum2 / 1000.0) : 0;
    r.effective_tops_per_w = r.tops_per_w;
    r.effective_tops_per_mm2 = r.tops_per_mm2;
    return r;
}

inline CostReport effective_efficiency(CostReport base, double speedup) {
    require(speedup >= 0, Err::BadValue, "speedup must be non-negative");
    base.effective_tops_per_w = base.tops_per_w * speedup;
    base.effective_tops_per_mm2 = base.tops_per_mm2 * speedup;
    return base;
}

/* PARETO */

struct ParetoPoint {
    double x = 0;
    double y = 0;
    std::string label;
};

// Maximal points under component-wise >= dominance; input order preserved.
inline std::vector<ParetoPoint> pareto(const std::vector<ParetoPoint>& pts) {
    require(!pts.empty(), Err::BadValue, "pareto needs at least one point");
    std::vector<ParetoPoint> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
            if (i == j) continue;
            bool ge = pts[j].x >= pts[i].x && pts[j].y >= pts[i].y;
            bool gt = pts[j].x > pts[i].x || pts[j].y > pts[i].y;
            dominated = ge && gt;
        }
        if (!dominated) out.push_back(pts[i]);
    }
    return out;
}

/* SERIALIZATION */

inline json cost_to_json(const CostReport& r) {
    json bp, ba;
    for (int i = 0; i < kNumComp; ++i) {
        bp[comp_name(i)] = r.power_breakdown[i];
        ba[comp_name(i)] = r.area_breakdown[i];
    }
    return json{{"power_mw", r.power_mw},
                {"area_kum2", r.area_kum2},
                {"power_breakdown", bp},
                {"area_breakdown", ba},
                {"tops", r.tops},
                {"tops_per_w", r.tops_per_w},
                {"tops_per_mm2", r.tops_per_mm2},
                {"effective_tops_per_w", r.effective_tops_per_w},
                {"effective_tops_per_mm2", r.effective_tops_per_mm2}};
}

inline std::vector<CalRow> calibration_from_json(const json& j) {
    require(j.is_array(), Err::BadFile, "calibration file must be an array of rows");
    std::vector<CalRow> rows;
    for (const auto& e : j) {
        jcheck_keys(e, {"name", "preset", "power", "area", "power_total", "area_total"},
                    "calibration row");
        CalRow r;
        r.name = jreq(e, "name", "calibration row").get<std::string>();
        r.preset_name = jreq(e, "preset", "calibration row").get<std::string>();
        const json& jp = jreq(e, "power", "calibration row");
        const json& ja = jreq(e, "area", "calibration row");
        for (int i = 0; i < kNumComp; ++i) {
            r.power[i] = jp.contains(comp_name(i)) ? jp[comp_name(i)].get<double>() : 0.0;
            r.area[i] = ja.contains(comp_name(i)) ? ja[comp_name(i)].get<double>() : 0.0;
        }
        r.power_total = jreq(e, "power_total", "calibration row").get<double>();
        r.area_total = jreq(e, "area_total", "calibration row").get<double>();
        rows.push_back(std::move(r));
    }
    return rows;
}

inline json calibration_to_json(const std::vector<CalRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json jp, ja;
        for (int i = 0; i < kNumComp; ++i) {
            jp[comp_name(i)] = r.power[i];
            ja[comp_name(i)] = r.area[i];
        }
        out.push_back(json{{"name", r.name},
                           {"preset", r.preset_name},
                           {"power", jp},
                           {"area", ja},
                           {"power_total", r.power_total},
                           {"area_total", r.area_total}});
    }
    return out;
}

inline json units_to_json(const UnitCostTable& u) {
    auto pa = [](const UnitCostTable::PA& v) {
        return json{{"power_mw", v.power}, {"area_kum2", v.area}};
    };
    json model;
    for (int i = 0; i < kNumComp; ++i) {
        model[comp_name(i)] = json{{"power", u.power[i]}, {"area", u.area[i]}};
    }
    return json{{"register_bit", pa(u.register_bit)},
                {"buffer_word", pa(u.buffer_word)},
                {"mux_input", pa(u.mux_input)},
                {"adder", pa(u.adder)},
                {"multiplier", pa(u.multiplier)},
                {"arbiter", pa(u.arbiter)},
                {"control_unit", pa(u.control_unit)},
                {"crossbar_4x4", pa(u.crossbar_4x4)},
                {"sram_byte", pa(u.sram_byte)},
                {"component_model", model}};
}

}  // namespace sgsim

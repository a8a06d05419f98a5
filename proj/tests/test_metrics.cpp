#include <catch2/catch_amalgamated.hpp>

#include "sgsim/metrics.hpp"

#include <fstream>

using namespace sgsim;

TEST_CASE("calibration reproduces the published totals within 15%") {
    Calibration cal = calibrate(builtin_calibration());
    CHECK(cal.max_total_rel_err < 0.15);
    for (const auto& r : cal.residuals)
        if (r.component == "total")
            INFO(r.row << (r.is_power ? " power " : " area ") << r.actual << " -> "
                       << r.predicted);
}

TEST_CASE("units are non-negative") {
    Calibration cal = calibrate(builtin_calibration());
    for (int c = 0; c < kNumComp; ++c)
        for (int i = 0; i < kMaxReg; ++i) {
            CHECK(cal.units.power[c][i] >= 0.0);
            CHECK(cal.units.area[c][i] >= 0.0);
        }
}

TEST_CASE("calibrate needs enough rows") {
    auto rows = builtin_calibration();
    rows.resize(1);
    CHECK_THROWS_AS(calibrate(rows), Error);
}

TEST_CASE("dense cost: no sparse components, published TOPS") {
    Calibration cal = calibrate(builtin_calibration());
    CostReport r = cost(preset("dense"), cal.units);
    CHECK(r.tops == Catch::Approx(1.6384));
    CHECK(r.power_breakdown[int(Comp::CTRL)] == 0.0);
    CHECK(r.power_breakdown[int(Comp::SHF)] == 0.0);
    CHECK(r.power_breakdown[int(Comp::ABUF)] == 0.0);
    CHECK(r.power_breakdown[int(Comp::BBUF)] == 0.0);
    CHECK(std::abs(r.power_mw - 151.0) / 151.0 < 0.15);
    CHECK(std::abs(r.area_kum2 - 217.0) / 217.0 < 0.15);
}

TEST_CASE("griffin pays only a MUX premium over the dual-sparse base") {
    Calibration cal = calibrate(builtin_calibration());
    CostReport ab = cost(preset("sparse_ab_star"), cal.units);
    CostReport g = cost(preset("griffin"), cal.units);
    for (int c = 0; c < kNumComp; ++c) {
        if (c == int(Comp::MUX) || c == int(Comp::CTRL) || c == int(Comp::REG_WR)) continue;
        CHECK(g.power_breakdown[c] == Catch::Approx(ab.power_breakdown[c]));
    }
    double mux_delta = g.power_breakdown[int(Comp::MUX)] - ab.power_breakdown[int(Comp::MUX)];
    CHECK(mux_delta > 0.5);
    CHECK(mux_delta < 3.0);
}

TEST_CASE("effective efficiency scales linearly with speedup") {
    Calibration cal = calibrate(builtin_calibration());
    CostReport base = cost(preset("sparse_ab_star"), cal.units);
    CostReport e1 = effective_efficiency(base, 1.0);
    CHECK(e1.effective_tops_per_w == Catch::Approx(base.tops_per_w));
    CostReport e39 = effective_efficiency(base, 3.9);
    CHECK(e39.effective_tops_per_w == Catch::Approx(3.9 * base.tops_per_w));
    CostReport e0 = effective_efficiency(base, 0.0);
    CHECK(e0.effective_tops_per_w == 0.0);
    // argmax under uniform power rescaling is invariant
    Calibration scaled = cal;
    for (int c = 0; c < kNumComp; ++c)
        for (int i = 0; i < kMaxReg; ++i) scaled.units.power[c][i] *= 3.0;
    CostReport s = cost(preset("sparse_ab_star"), scaled.units);
    CHECK(s.tops_per_w == Catch::Approx(base.tops_per_w / 3.0));
}

TEST_CASE("pareto: basics and brute-force agreement") {
    auto f1 = pareto({{1, 1, "p"}});
    REQUIRE(f1.size() == 1);
    auto f2 = pareto({{1, 1, "lo"}, {2, 2, "hi"}});
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].label == "hi");

    Rng rng(31337);
    std::vector<ParetoPoint> pts;
    for (int i = 0; i < 300; ++i)
        pts.push_back({rng.unit(), rng.unit(), std::to_string(i)});
    auto front = pareto(pts);
    std::vector<std::string> brute;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dom = false;
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (i != j && pts[j].x >= pts[i].x && pts[j].y >= pts[i].y &&
                (pts[j].x > pts[i].x || pts[j].y > pts[i].y))
                dom = true;
        if (!dom) brute.push_back(pts[i].label);
    }
    REQUIRE(front.size() == brute.size());
    for (std::size_t i = 0; i < front.size(); ++i) CHECK(front[i].label == brute[i]);
}

TEST_CASE("shipped calibration file matches the builtin table") {
    std::ifstream f(std::string(SGSIM_SOURCE_DIR) + "/data/table6.json");
    REQUIRE(f.good());
    json j = json::parse(f);
    auto rows = calibration_from_json(j);
    auto ref = builtin_calibration();
    REQUIRE(rows.size() == ref.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].name == ref[i].name);
        CHECK(rows[i].power == ref[i].power);
        CHECK(rows[i].area == ref[i].area);
        CHECK(rows[i].power_total == ref[i].power_total);
        CHECK(rows[i].area_total == ref[i].area_total);
    }
}

#pragma once

// Independent brute-force reference: exact integer GEMM plus a naive
// event-driven scheduler that re-implements the rules in docs/semantics.md
// element by element. It shares data types (and the offline B compressor)
// with the engine but none of its scheduling code; everything below is
// recomputed by plain scans each cycle. Desk-scale inputs only.

#include <cstdint>
#include <vector>

#include "sgsim/common.hpp"
#include "sgsim/config.hpp"
#include "sgsim/preprocess.hpp"
#include "sgsim/workload.hpp"

namespace sgsim {

struct OracleResult {
    std::vector<std::int32_t> c_matrix;
    std::uint64_t naive_cycles = 0;
    std::uint64_t effectual_ops = 0;
};

inline std::vector<std::int32_t> reference_gemm(const GemmProblem& p) {
    std::vector<std::int32_t> c(std::size_t(p.m) * p.n, 0);
    for (int i = 0; i < p.m; ++i)
        for (int kk = 0; kk < p.k; ++kk) {
            std::int32_t av = p.a_at(i, kk);
            if (av == 0) continue;
            for (int j = 0; j < p.n; ++j)
                c[std::size_t(i) * p.n + j] += av * std::int32_t(p.b_at(kk, j));
        }
    return c;
}

// SimOptions lives in engine.hpp; the oracle keeps its own mirror so the two
// headers stay independent.
struct OracleOptions {
    bool enforce_sram_bw = true;
    bool enforce_banks = true;
};

inline OracleResult naive_schedule(const GemmProblem& p, const ArchConfig& cfg_in,
                                   const OracleOptions& opts = {},
                                   const CompressedOperandStream* ext_stream = nullptr) {
    require(p.m <= 64 && p.k <= 64 && p.n <= 64, Err::TooLargeForOracle,
            "oracle accepts m,k,n <= 64");
    ArchConfig cfg = validate(cfg_in);
    require(cfg.mode != Mode::Griffin, Err::BadValue, "morph griffin configs before the oracle");
    const CoreDims core = cfg.core;
    const int K0 = core.k0, M0 = core.m0, N0 = core.n0;
    const int T = int(ceil_div(p.k, K0));

    BlockedTensor A = shuffle(block(p, core, Operand::A), cfg.shuffle);
    BlockedTensor B = shuffle(block(p, core, Operand::B), cfg.shuffle);
    CompressedOperandStream local;
    const CompressedOperandStream* S = nullptr;
    if (cfg.mode == Mode::SparseB || cfg.mode == Mode::SparseAB) {
        if (ext_stream) {
            S = ext_stream;
        } else {
            local = compress_b(B, cfg.b_window, N0);
            S = &local;
        }
    }

    OracleResult out;
    out.c_matrix.assign(std::size_t(p.m) * p.n, 0);

    auto a_cost = [&](int t, int grow) -> std::int64_t {
        if (cfg.mode == Mode::Dense || cfg.mode == Mode::SparseB) return K0;
        std::int64_t nnz = 0;
        for (int l = 0; l < K0; ++l)
            if (A.nz(t, l, grow)) ++nnz;
        return std::min<std::int64_t>(K0, nnz + std::int64_t(ceil_div(K0, 8)));
    };

    // one refill phase over one side; returns true if it ran out of budget
    auto run_refill = [&](std::vector<std::vector<char>>& got, const std::vector<int>& lo,
                          const std::vector<int>& hi, double byte_budget, int fill_budget,
                          bool use_bytes, bool use_fills, auto cost) {
        int fills = 0;
        std::int64_t bytes = 0;
        for (;;) {
            bool any = false;
            for (std::size_t who = 0; who < got.size(); ++who) {
                if (lo[who] > hi[who]) continue;
                int e = -1;
                for (int t = std::max(lo[who], 0); t <= hi[who] && t < int(got[who].size()); ++t)
                    if (!got[who][t]) { e = t; break; }
                if (e < 0) continue;
                if (use_fills && fills >= fill_budget) return true;
                std::int64_t c = cost(int(who), e);
                if (use_bytes && double(bytes + c) > byte_budget) return true;
                got[who][e] = 1;
                ++fills;
                bytes += c;
                any = true;
            }
            if (!any) return false;
        }
    };

    const int tiles_m = int(ceil_div(p.m, M0));
    const int tiles_n = int(ceil_div(p.n, N0));
    for (int tm = 0; tm < tiles_m; ++tm)
        for (int tn = 0; tn < tiles_n; ++tn) {
            const int r0 = tm * M0, c0 = tn * N0;
            const int R = std::min(M0, p.m - r0), C = std::min(N0, p.n - c0);
            std::uint64_t cyc = 0;

            if (cfg.mode == Mode::Dense) {
                std::vector<std::vector<char>> ga(R, std::vector<char>(T, 0));
                std::vector<std::vector<char>> gb(C, std::vector<char>(T, 0));
                int t = 0;
                while (t < T) {
                    ++cyc;
                    run_refill(ga, std::vector<int>(R, t), std::vector<int>(R, t),
                               cfg.memory.asram_bw, cfg.memory.banks_a, opts.enforce_sram_bw,
                               opts.enforce_banks,
                               [&](int r, int e) { return a_cost(e, r0 + r); });
                    run_refill(gb, std::vector<int>(C, t), std::vector<int>(C, t),
                               cfg.memory.bsram_bw, 0, opts.enforce_sram_bw, false,
                               [&](int, int) { return std::int64_t(K0); });
                    bool ready = true;
                    for (int r = 0; r < R; ++r) ready = ready && ga[r][t];
                    for (int c = 0; c < C; ++c) ready = ready && gb[c][t];
                    if (!ready) continue;
                    for (int r = 0; r < R; ++r)
                        for (int l = 0; l < K0; ++l)
                            for (int c = 0; c < C; ++c) {
                                std::int8_t av = A.at(t, l, r0 + r), bv = B.at(t, l, c0 + c);
                                out.c_matrix[std::size_t(r0 + r) * p.n + c0 + c] +=
                                    std::int32_t(av) * bv;
                                if (av && bv) ++out.effectual_ops;
                            }
                    ++t;
                }
                out.naive_cycles += std::max<std::uint64_t>(cyc, std::uint64_t(T));
                continue;
            }

            if (cfg.mode == Mode::SparseB) {
                const int db1 = cfg.b_window.d1;
                std::vector<std::vector<char>> ga(R, std::vector<char>(T, 0));
                std::vector<std::vector<char>> gb(C);
                std::vector<int> cur(C, 0);
                for (int c = 0; c < C; ++c)
                    gb[c].assign(S->streams[c0 + c].chunks.size(), 0);
                auto done = [&](int c) {
                    return cur[c] >= int(S->streams[c0 + c].chunks.size());
                };
                auto all_done = [&] {
                    for (int c = 0; c < C; ++c)
                        if (!done(c)) return false;
                    return true;
                };
                while (!all_done()) {
                    ++cyc;
                    int W = 1 << 30, Wmax = 0;
                    for (int c = 0; c < C; ++c)
                        if (!done(c)) {
                            W = std::min(W, S->streams[c0 + c].chunks[cur[c]].base);
                            Wmax = std::max(Wmax, S->streams[c0 + c].chunks[cur[c]].base);
                        }
                    run_refill(ga, std::vector<int>(R, W),
                               std::vector<int>(R, std::min(Wmax + db1, T - 1)),
                               cfg.memory.asram_bw, cfg.memory.banks_a, opts.enforce_sram_bw,
                               opts.enforce_banks,
                               [&](int r, int e) { return a_cost(e, r0 + r); });
                    std::vector<int> lo(C), hi(C);
                    for (int c = 0; c < C; ++c) {
                        lo[c] = cur[c];
                        hi[c] = done(c) ? -1 : cur[c];
                    }
                    run_refill(gb, lo, hi, cfg.memory.bsram_bw, 0, opts.enforce_sram_bw, false,
                               [&](int, int) { return std::int64_t(K0); });
                    for (int c = 0; c < C; ++c) {
                        if (done(c)) continue;
                        const StreamChunk& ch = S->streams[c0 + c].chunks[cur[c]];
                        bool ok = gb[c][cur[c]];
                        for (int r = 0; r < R && ok; ++r)
                            for (int l = 0; l < K0 && ok; ++l)
                                if (ch.vals[l]) ok = ga[r][ch.base + ch.meta[l].t_off] != 0;
                        if (!ok) continue;
                        for (int l = 0; l < K0; ++l) {
                            if (!ch.vals[l]) continue;
                            int t = ch.base + ch.meta[l].t_off;
                            int lane = l - ch.meta[l].lane_off;
                            int gcol = c0 + c - ch.meta[l].col_off;
                            for (int r = 0; r < R; ++r) {
                                std::int8_t av = A.at(t, lane, r0 + r);
                                out.c_matrix[std::size_t(r0 + r) * p.n + gcol] +=
                                    std::int32_t(av) * ch.vals[l];
                                if (av) ++out.effectual_ops;
                            }
                        }
                        ++cur[c];
                    }
                }
                out.naive_cycles += std::max<std::uint64_t>(cyc, ceil_div(T, 1 + db1));
                continue;
            }

            if (cfg.mode == Mode::SparseA) {
                const BorrowWindow aw = cfg.a_window;
                std::vector<std::vector<char>> ga(R, std::vector<char>(T, 0));
                std::vector<std::vector<char>> gb(C, std::vector<char>(T, 0));
                std::vector<std::vector<char>> taken(
                    R, std::vector<char>(std::size_t(T) * K0, 0));
                std::vector<int> w(R, 0);
                auto chunk_clear = [&](int t, int r) {
                    for (int l = 0; l < K0; ++l)
                        if (A.nz(t, l, r0 + r) && !taken[r][std::size_t(t) * K0 + l]) return false;
                    return true;
                };
                auto all_done = [&] {
                    for (int r = 0; r < R; ++r)
                        if (w[r] < T) return false;
                    return true;
                };
                while (!all_done()) {
                    ++cyc;
                    int v = 1 << 30, vmax = 0;
                    for (int r = 0; r < R; ++r)
                        if (w[r] < T) {
                            v = std::min(v, w[r]);
                            vmax = std::max(vmax, w[r]);
                        }
                    std::vector<int> lo(R), hi(R);
                    for (int r = 0; r < R; ++r) {
                        lo[r] = w[r];
                        hi[r] = w[r] >= T ? -1 : std::min(w[r] + aw.d1, T - 1);
                    }
                    run_refill(ga, lo, hi, cfg.memory.asram_bw, cfg.memory.banks_a,
                               opts.enforce_sram_bw, opts.enforce_banks,
                               [&](int r, int e) { return a_cost(e, r0 + r); });
                    run_refill(gb, std::vector<int>(C, v),
                               std::vector<int>(C, std::min(vmax + aw.d1, T - 1)),
                               cfg.memory.bsram_bw, 0, opts.enforce_sram_bw, false,
                               [&](int, int) { return std::int64_t(K0); });
                    const std::vector<int> w0 = w;
                    for (int r = 0; r < R; ++r) {
                        if (w[r] >= T) continue;
                        for (int lane = 0; lane < K0; ++lane) {
                            int pt = -1, pl = 0, pr = 0;
                            for (int d1 = 0; d1 <= aw.d1 && pt < 0; ++d1)
                                for (int d3 = 0; d3 <= (d1 ? aw.d3 : 0) && pt < 0; ++d3)
                                    for (int d2 = 0; d2 <= (d1 ? aw.d2 : 0) && pt < 0; ++d2) {
                                        int t = w0[r] + d1, l = lane - d2, rr = r - d3;
                                        if (t >= T || l < 0 || rr < 0) continue;
                                        if (!A.nz(t, l, r0 + rr)) continue;
                                        if (taken[rr][std::size_t(t) * K0 + l]) continue;
                                        if (t < w0[rr] || t > w0[rr] + aw.d1) continue;
                                        if (!ga[rr][t]) continue;
                                        bool bok = true;
                                        for (int c = 0; c < C; ++c) bok = bok && gb[c][t];
                                        if (!bok) continue;
                                        pt = t;
                                        pl = l;
                                        pr = rr;
                                    }
                            if (pt < 0) continue;
                            taken[pr][std::size_t(pt) * K0 + pl] = 1;
                            std::int8_t av = A.at(pt, pl, r0 + pr);
                            for (int c = 0; c < C; ++c) {
                                std::int8_t bv = B.at(pt, pl, c0 + c);
                                out.c_matrix[std::size_t(r0 + pr) * p.n + c0 + c] +=
                                    std::int32_t(av) * bv;
                                if (bv) ++out.effectual_ops;
                            }
                        }
                        for (int step = 0; step < 1 + aw.d1 && w[r] < T && chunk_clear(w[r], r);
                             ++step)
                            ++w[r];
                    }
                }
                out.naive_cycles += std::max<std::uint64_t>(cyc, ceil_div(T, 1 + aw.d1));
                continue;
            }

            // sparse_ab
            {
                const BorrowWindow aw = cfg.a_window;
                const BorrowWindow bw = cfg.b_window;
                const int L = (1 + aw.d1) * (1 + bw.d1);
                std::vector<std::vector<char>> ga(R, std::vector<char>(T, 0));
                std::vector<std::vector<char>> gb(C);
                for (int c = 0; c < C; ++c)
                    gb[c].assign(S->streams[c0 + c].chunks.size(), 0);
                std::vector<std::vector<char>> used(std::size_t(R) * C);
                std::vector<int> cur(std::size_t(R) * C, 0);
                auto pe = [&](int r, int c) { return std::size_t(r) * C + c; };
                for (int r = 0; r < R; ++r)
                    for (int c = 0; c < C; ++c)
                        used[pe(r, c)].assign(S->streams[c0 + c].chunks.size() * K0, 0);
                auto lenc = [&](int c) { return int(S->streams[c0 + c].chunks.size()); };
                auto pair_live = [&](int r, int c, int s, int l) {
                    const StreamChunk& ch = S->streams[c0 + c].chunks[s];
                    if (!ch.vals[l]) return false;
                    if (used[pe(r, c)][std::size_t(s) * K0 + l]) return false;
                    int t = ch.base + ch.meta[l].t_off;
                    int lane = l - ch.meta[l].lane_off;
                    return A.nz(t, lane, r0 + r);
                };
                auto chunk_clear = [&](int r, int c, int s) {
                    for (int l = 0; l < K0; ++l)
                        if (pair_live(r, c, s, l)) return false;
                    return true;
                };
                auto all_done = [&] {
                    for (int r = 0; r < R; ++r)
                        for (int c = 0; c < C; ++c)
                            if (cur[pe(r, c)] < lenc(c)) return false;
                    return true;
                };
                while (!all_done()) {
                    ++cyc;
                    std::vector<int> Wlo(R, 1 << 30), Whi(R, -1), vlo(C, 1 << 30), vhi(C, -1);
                    for (int r = 0; r < R; ++r)
                        for (int c = 0; c < C; ++c)
                            if (cur[pe(r, c)] < lenc(c)) {
                                int b = S->streams[c0 + c].chunks[cur[pe(r, c)]].base;
                                Wlo[r] = std::min(Wlo[r], b);
                                Whi[r] = std::max(Whi[r], b);
                                vlo[c] = std::min(vlo[c], cur[pe(r, c)]);
                                vhi[c] = std::max(vhi[c], cur[pe(r, c)]);
                            }
                    const bool a_throttled = opts.enforce_sram_bw || opts.enforce_banks;
                    std::vector<int> lo(R), hi(R);
                    for (int r = 0; r < R; ++r) {
                        lo[r] = Wlo[r] == (1 << 30) ? 1 : Wlo[r];
                        hi[r] = Wlo[r] == (1 << 30)
                                    ? 0
                                    : (a_throttled ? std::min(Whi[r] + L - 1, T - 1) : T - 1);
                    }
                    run_refill(ga, lo, hi, cfg.memory.asram_bw, cfg.memory.banks_a,
                               opts.enforce_sram_bw, opts.enforce_banks,
                               [&](int r, int e) { return a_cost(e, r0 + r); });
                    std::vector<int> blo(C), bhi(C);
                    for (int c = 0; c < C; ++c) {
                        blo[c] = vlo[c] == (1 << 30) ? 1 : vlo[c];
                        bhi[c] = vlo[c] == (1 << 30) ? 0 : std::min(vhi[c] + aw.d1, lenc(c) - 1);
                    }
                    run_refill(gb, blo, bhi, cfg.memory.bsram_bw, 0, opts.enforce_sram_bw, false,
                               [&](int, int) { return std::int64_t(K0); });
                    const std::vector<int> cur0 = cur;
                    for (int r = 0; r < R; ++r)
                        for (int c = 0; c < C; ++c) {
                            if (cur[pe(r, c)] >= lenc(c)) continue;
                            for (int lane = 0; lane < K0; ++lane) {
                                int ps = -1, pl = 0, prow = 0;
                                for (int s = 0; s <= aw.d1 && ps < 0; ++s)
                                    for (int d3 = 0; d3 <= (s ? aw.d3 : 0) && ps < 0; ++d3)
                                        for (int d2 = 0; d2 <= (s ? aw.d2 : 0) && ps < 0; ++d2) {
                                            int rr = r - d3, l = lane - d2;
                                            if (rr < 0 || l < 0) continue;
                                            if (cur0[pe(rr, c)] >= lenc(c)) continue;
                                            int sa = cur0[pe(rr, c)] + s;
                                            if (sa >= lenc(c)) continue;
                                            if (!gb[c][sa]) continue;
                                            if (!pair_live(rr, c, sa, l)) continue;
                                            const StreamChunk& ch = S->streams[c0 + c].chunks[sa];
                                            int t = ch.base + ch.meta[l].t_off;
                                            if (!ga[rr][t]) continue;
                                            ps = sa;
                                            pl = l;
                                            prow = rr;
                                        }
                                if (ps < 0) continue;
                                used[pe(prow, c)][std::size_t(ps) * K0 + pl] = 1;
                                const StreamChunk& ch = S->streams[c0 + c].chunks[ps];
                                int t = ch.base + ch.meta[pl].t_off;
                                int lane2 = pl - ch.meta[pl].lane_off;
                                int gcol = c0 + c - ch.meta[pl].col_off;
                                std::int8_t av = A.at(t, lane2, r0 + prow);
                                out.c_matrix[std::size_t(r0 + prow) * p.n + gcol] +=
                                    std::int32_t(av) * ch.vals[pl];
                                ++out.effectual_ops;
                            }
                            for (int step = 0; step < 1 + aw.d1 && cur[pe(r, c)] < lenc(c) &&
                                               chunk_clear(r, c, cur[pe(r, c)]);
                                 ++step)
                                ++cur[pe(r, c)];
                        }
                }
                out.naive_cycles += std::max<std::uint64_t>(cyc, ceil_div(T, std::uint64_t(L)));
            }
        }
    return out;
}

}  // namespace sgsim

#pragma once

// Cycle-accurate simulation of one core executing a blocked GEMM under an
// ArchConfig: dense baseline, on-the-fly A skipping, compressed-B
// consumption, the dual pipeline, and stall modeling. The functional result
// is computed alongside and checked bit-exactly against a plain integer
// GEMM. The cycle-level rules live in docs/semantics.md and are mirrored by
// the independent scheduler in oracle.hpp.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "sgsim/common.hpp"
#include "sgsim/config.hpp"
#include "sgsim/preprocess.hpp"
#include "sgsim/workload.hpp"

namespace sgsim {

struct SimOptions {
    bool enforce_sram_bw = true;  // per-cycle byte budgets on SRAM refill
    bool enforce_banks = true;    // per-cycle chunk-fill cap on the A side
    bool check_functional = true;
};

struct StallBreakdown {
    std::uint64_t output_sync = 0;
    std::uint64_t bank_conflict = 0;
    std::uint64_t buf_full = 0;
    std::uint64_t bandwidth = 0;

    std::uint64_t total() const { return output_sync + bank_conflict + buf_full + bandwidth; }
};

struct SimReport {
    int m = 0, k = 0, n = 0;
    std::uint64_t cycles = 0;
    std::uint64_t dense_cycles = 0;
    double speedup = 0.0;
    StallBreakdown stalls;
    std::uint64_t effectual_ops = 0;
    std::uint64_t total_mac_slots = 0;
    std::uint64_t c_checksum = 0;
    bool functional_ok = false;
    std::uint64_t a_bytes = 0, b_bytes = 0, c_bytes = 0;
};

inline std::uint64_t dense_cycles(int m, int k, int n, const CoreDims& core) {
    return ceil_div(m, core.m0) * ceil_div(n, core.n0) * ceil_div(k, core.k0);
}

namespace engine_detail {

enum class Limiter { None, Banks, Bytes };

// Fetch bookkeeping for one side of the memory system. `chunks` indexes
// original chunks (A side, and B side in dense/sparse_a modes) or stream
// chunks (B side in compressed modes).
struct FetchState {
    std::vector<std::vector<std::uint8_t>> got;  // [consumer][chunk]
    std::vector<int> scan;                       // first possibly-unfetched

    void init(int consumers, int chunks) {
        got.assign(consumers, std::vector<std::uint8_t>(std::size_t(std::max(chunks, 0)), 0));
        scan.assign(consumers, 0);
    }
    bool has(int who, int chunk) const {
        return chunk < int(got[who].size()) && got[who][chunk] != 0;
    }
    // earliest unfetched chunk in [lo, hi], or -1
    int next_needed(int who, int lo, int hi) {
        int from = std::max(scan[who], lo);
        int cap = std::min(hi, int(got[who].size()) - 1);
        for (int e = from; e <= cap; ++e)
            if (!got[who][e]) return e;
        return -1;
    }
    void mark(int who, int chunk) {
        got[who][chunk] = 1;
        if (chunk == scan[who])
            while (scan[who] < int(got[who].size()) && got[who][scan[who]]) ++scan[who];
    }
};

struct TileStats {
    std::uint64_t cycles = 0;
    StallBreakdown stalls;
    std::uint64_t effectual = 0;
};

// Round-robin budgeted refill over one side. Targets are [lo[i], hi[i]] per
// consumer. Stops the whole phase at the first blocked fetch and records
// the limiting resource.
template <typename CostFn>
inline Limiter refill(FetchState& fs, int consumers, const std::vector<int>& lo,
                      const std::vector<int>& hi, double byte_budget, int fill_budget,
                      bool enforce_bytes, bool enforce_fills, CostFn cost) {
    int fills = 0;
    std::int64_t bytes = 0;
    for (;;) {
        bool any = false;
        for (int who = 0; who < consumers; ++who) {
            if (lo[who] > hi[who]) continue;
            int e = fs.next_needed(who, lo[who], hi[who]);
            if (e < 0) continue;
            if (enforce_fills && fills >= fill_budget) return Limiter::Banks;
            std::int64_t c = cost(who, e);
            if (enforce_bytes && double(bytes + c) > byte_budget) return Limiter::Bytes;
            fs.mark(who, e);
            ++fills;
            bytes += c;
            any = true;
        }
        if (!any) return Limiter::None;
    }
}

}  // namespace engine_detail

/* ENGINE */

class Engine {
  public:
    Engine(const GemmProblem& p, const ArchConfig& cfg, const SimOptions& opts,
           const CompressedOperandStream* stream)
        : p_(p), cfg_(cfg), opts_(opts) {
        core_ = cfg.core;
        T_ = int(ceil_div(p.k, core_.k0));
        a_ = sgsim::shuffle(block(p, core_, Operand::A), cfg.shuffle);
        b_ = sgsim::shuffle(block(p, core_, Operand::B), cfg.shuffle);
        const bool needs_stream = cfg.mode == Mode::SparseB || cfg.mode == Mode::SparseAB;
        if (needs_stream) {
            if (stream) {
                require(stream->window == cfg.b_window && stream->k0 == core_.k0 &&
                            stream->t_chunks == T_ && stream->columns == p.n &&
                            stream->group == core_.n0,
                        Err::ConfigTensorMismatch,
                        "compressed stream does not match config/tensor");
                bs_ = stream;
            } else {
                owned_stream_ = compress_b(b_, cfg.b_window, core_.n0);
                bs_ = &owned_stream_;
            }
        } else {
            require(stream == nullptr, Err::ConfigTensorMismatch,
                    "compressed stream given but mode has no B preprocessing");
        }
        // per-(chunk,row) nonzero counts drive the A-side transfer size
        a_nnz_.assign(std::size_t(T_) * p.m, 0);
        for (int t = 0; t < T_; ++t)
            for (int l = 0; l < core_.k0; ++l)
                for (int r = 0; r < p.m; ++r)
                    if (a_.nz(t, l, r)) ++a_nnz_[std::size_t(t) * p.m + r];
        acc_.assign(std::size_t(p.m) * p.n, 0);
    }

    SimReport run() {
        SimReport rep;
        rep.m = p_.m;
        rep.k = p_.k;
        rep.n = p_.n;
        const int tiles_m = int(ceil_div(p_.m, core_.m0));
        const int tiles_n = int(ceil_div(p_.n, core_.n0));
        for (int tm = 0; tm < tiles_m; ++tm)
            for (int tn = 0; tn < tiles_n; ++tn) {
                engine_detail::TileStats ts = sim_tile(tm, tn);
                rep.cycles += ts.cycles;
                rep.effectual_ops += ts.effectual;
                rep.stalls.output_sync += ts.stalls.output_sync;
                rep.stalls.bank_conflict += ts.stalls.bank_conflict;
                rep.stalls.buf_full += ts.stalls.buf_full;
                rep.stalls.bandwidth += ts.stalls.bandwidth;
            }
        rep.dense_cycles = dense_cycles(p_.m, p_.k, p_.n, core_);
        rep.speedup = rep.cycles ? double(rep.dense_cycles) / double(rep.cycles) : 0.0;
        rep.total_mac_slots = rep.cycles * std::uint64_t(core_.macs());
        rep.a_bytes = std::uint64_t(p_.m) * p_.k;
        rep.b_bytes = std::uint64_t(p_.k) * p_.n;
        rep.c_bytes = 4ull * p_.m * p_.n;
        if (opts_.check_functional) {
            rep.functional_ok = true;
            std::size_t i = 0;
            for (int r = 0; r < p_.m && rep.functional_ok; ++r)
                for (int c = 0; c < p_.n; ++c, ++i) {
                    std::int32_t want = 0;
                    for (int kk = 0; kk < p_.k; ++kk)
                        want += std::int32_t(p_.a_at(r, kk)) * std::int32_t(p_.b_at(kk, c));
                    if (acc_[std::size_t(r) * p_.n + c] != want) {
                        rep.functional_ok = false;
                        break;
                    }
                }
        }
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (std::int32_t v : acc_) {
            std::uint8_t le[4] = {std::uint8_t(v & 0xff), std::uint8_t((v >> 8) & 0xff),
                                  std::uint8_t((v >> 16) & 0xff), std::uint8_t((v >> 24) & 0xff)};
            h = fnv1a64(le, 4, h);
        }
        rep.c_checksum = h;
        return rep;
    }

    const std::vector<std::int32_t>& result() const { return acc_; }

  private:
    using Limiter = engine_detail::Limiter;

    struct TileShape {
        int tm, tn, r0, c0, R, C;
    };

    engine_detail::TileStats sim_tile(int tm, int tn) {
        TileShape sh{tm,
                     tn,
                     tm * core_.m0,
                     tn * core_.n0,
                     std::min(core_.m0, p_.m - tm * core_.m0),
                     std::min(core_.n0, p_.n - tn * core_.n0)};
        switch (cfg_.mode) {
            case Mode::Dense:    return tile_dense(sh);
            case Mode::SparseB:  return tile_sparse_b(sh);
            case Mode::SparseA:  return tile_sparse_a(sh);
            case Mode::SparseAB: return tile_dual(sh);
            case Mode::Griffin:  fail(Err::BadValue, "griffin runs through simulate_griffin");
        }
        fail(Err::BadValue, "bad mode");
    }

    std::int64_t a_fetch_cost(int t, int global_row) const {
        const int k0 = core_.k0;
        if (cfg_.mode == Mode::Dense || cfg_.mode == Mode::SparseB) return k0;
        std::int64_t nnz = a_nnz_[std::size_t(t) * p_.m + global_row];
        return std::min<std::int64_t>(k0, nnz + std::int64_t(ceil_div(k0, 8)));
    }

    void add_pair(int global_row, int global_col, std::int8_t av, std::int8_t bv) {
        acc_[std::size_t(global_row) * p_.n + global_col] +=
            std::int32_t(av) * std::int32_t(bv);
    }

    /* dense: one chunk per cycle, all PEs in lockstep */
    engine_detail::TileStats tile_dense(const TileShape& sh) {
        engine_detail::TileStats ts;
        engine_detail::FetchState fa, fb;
        fa.init(sh.R, T_);
        fb.init(sh.C, T_);
        int t = 0;
        while (t < T_) {
            ++ts.cycles;
            std::vector<int> lo_r(sh.R, t), hi_r(sh.R, t), lo_c(sh.C, t), hi_c(sh.C, t);
            Limiter la = engine_detail::refill(
                fa, sh.R, lo_r, hi_r, cfg_.memory.asram_bw, cfg_.memory.banks_a,
                opts_.enforce_sram_bw, opts_.enforce_banks,
                [&](int r, int e) { return a_fetch_cost(e, sh.r0 + r); });
            Limiter lb = engine_detail::refill(
                fb, sh.C, lo_c, hi_c, cfg_.memory.bsram_bw, 0, opts_.enforce_sram_bw, false,
                [&](int, int) { return std::int64_t(core_.k0); });
            bool ready = true;
            for (int r = 0; r < sh.R; ++r) ready &= fa.has(r, t);
            for (int c = 0; c < sh.C; ++c) ready &= fb.has(c, t);
            if (!ready) {
                std::uint64_t pes = std::uint64_t(sh.R) * sh.C;
                if (la == Limiter::Banks)
                    ts.stalls.bank_conflict += pes;
                else if (la == Limiter::Bytes || lb == Limiter::Bytes)
                    ts.stalls.bandwidth += pes;
                else
                    ts.stalls.bandwidth += pes;
                continue;
            }
            for (int r = 0; r < sh.R; ++r)
                for (int l = 0; l < core_.k0; ++l) {
                    std::int8_t av = a_.at(t, l, sh.r0 + r);
                    for (int c = 0; c < sh.C; ++c) {
                        std::int8_t bv = b_.at(t, l, sh.c0 + c);
                        add_pair(sh.r0 + r, sh.c0 + c, av, bv);
                        if (av != 0 && bv != 0) ++ts.effectual;
                    }
                }
            ++t;
        }
        return ts;  // floor is T itself
    }

    /* sparse_b: per-column compressed streams, rows in lockstep */
    engine_detail::TileStats tile_sparse_b(const TileShape& sh) {
        engine_detail::TileStats ts;
        const int db1 = cfg_.b_window.d1;
        engine_detail::FetchState fa, fb;
        fa.init(sh.R, T_);
        fb.init(sh.C, 1);  // resized below per column stream length
        std::vector<const ColumnStream*> streams(sh.C);
        std::vector<int> cur(sh.C, 0);
        std::vector<char> fin(sh.C, 0);
        int unfinished = 0;
        for (int c = 0; c < sh.C; ++c) {
            streams[c] = &bs_->streams[sh.c0 + c];
            fb.got[c].assign(streams[c]->chunks.size(), 0);
            fb.scan[c] = 0;
            fin[c] = streams[c]->chunks.empty();
            if (!fin[c]) ++unfinished;
        }
        while (unfinished > 0) {
            ++ts.cycles;
            // per-column window registers: the A side serves the union span
            int W = INT32_MAX, Wmax = 0;
            for (int c = 0; c < sh.C; ++c)
                if (!fin[c]) {
                    W = std::min(W, streams[c]->chunks[cur[c]].base);
                    Wmax = std::max(Wmax, streams[c]->chunks[cur[c]].base);
                }
            std::vector<int> lo_r(sh.R, W), hi_r(sh.R, std::min(Wmax + db1, T_ - 1));
            Limiter la = engine_detail::refill(
                fa, sh.R, lo_r, hi_r, cfg_.memory.asram_bw, cfg_.memory.banks_a,
                opts_.enforce_sram_bw, opts_.enforce_banks,
                [&](int r, int e) { return a_fetch_cost(e, sh.r0 + r); });
            std::vector<int> lo_c(sh.C), hi_c(sh.C);
            for (int c = 0; c < sh.C; ++c) {
                lo_c[c] = cur[c];
                hi_c[c] = fin[c] ? -1 : cur[c];
            }
            Limiter lb = engine_detail::refill(
                fb, sh.C, lo_c, hi_c, cfg_.memory.bsram_bw, 0, opts_.enforce_sram_bw, false,
                [&](int, int) { return std::int64_t(core_.k0); });
            for (int c = 0; c < sh.C; ++c) {
                if (fin[c]) {
                    ts.stalls.output_sync += std::uint64_t(sh.R);
                    continue;
                }
                const StreamChunk& ch = streams[c]->chunks[cur[c]];
                bool have = fb.has(c, cur[c]);
                for (int r = 0; r < sh.R && have; ++r)
                    for (int l = 0; l < core_.k0 && have; ++l)
                        if (ch.vals[l] != 0) have = fa.has(r, ch.base + ch.meta[l].t_off);
                if (!have) {
                    if (la == Limiter::Banks)
                        ts.stalls.bank_conflict += std::uint64_t(sh.R);
                    else
                        ts.stalls.bandwidth += std::uint64_t(sh.R);
                    (void)lb;
                    continue;
                }
                for (int l = 0; l < core_.k0; ++l) {
                    std::int8_t bv = ch.vals[l];
                    if (bv == 0) continue;
                    int t = ch.base + ch.meta[l].t_off;
                    int lane = l - ch.meta[l].lane_off;
                    int gcol = sh.c0 + c - ch.meta[l].col_off;
                    for (int r = 0; r < sh.R; ++r) {
                        std::int8_t av = a_.at(t, lane, sh.r0 + r);
                        add_pair(sh.r0 + r, gcol, av, bv);
                        if (av != 0) ++ts.effectual;
                    }
                }
                if (++cur[c] == int(streams[c]->chunks.size())) {
                    fin[c] = 1;
                    --unfinished;
                }
            }
        }
        ts.cycles = std::max<std::uint64_t>(ts.cycles, ceil_div(T_, 1 + db1));
        return ts;
    }

    /* sparse_a: per-row arbiters over the original chunk stream */
    engine_detail::TileStats tile_sparse_a(const TileShape& sh) {
        engine_detail::TileStats ts;
        const BorrowWindow& aw = cfg_.a_window;
        const int k0 = core_.k0;
        engine_detail::FetchState fa, fb;
        fa.init(sh.R, T_);
        fb.init(sh.C, T_);
        std::vector<std::uint8_t> consumed(std::size_t(T_) * k0 * sh.R, 0);
        auto cidx = [&](int t, int l, int r) { return (std::size_t(t) * k0 + l) * sh.R + r; };
        std::vector<int> remaining(std::size_t(T_) * sh.R, 0);
        for (int t = 0; t < T_; ++t)
            for (int l = 0; l < k0; ++l)
                for (int r = 0; r < sh.R; ++r)
                    if (a_.nz(t, l, sh.r0 + r)) ++remaining[std::size_t(t) * sh.R + r];
        std::vector<int> w(sh.R, 0);
        std::vector<char> fin(sh.R, 0);
        int unfinished = sh.R;
        while (unfinished > 0) {
            ++ts.cycles;
            // per-row window registers: the B side serves the union span
            int v = INT32_MAX, vmax = 0;
            for (int r = 0; r < sh.R; ++r)
                if (!fin[r]) {
                    v = std::min(v, w[r]);
                    vmax = std::max(vmax, w[r]);
                }
            std::vector<int> lo_r(sh.R), hi_r(sh.R);
            for (int r = 0; r < sh.R; ++r) {
                lo_r[r] = w[r];
                hi_r[r] = fin[r] ? -1 : std::min(w[r] + aw.d1, T_ - 1);
            }
            Limiter la = engine_detail::refill(
                fa, sh.R, lo_r, hi_r, cfg_.memory.asram_bw, cfg_.memory.banks_a,
                opts_.enforce_sram_bw, opts_.enforce_banks,
                [&](int r, int e) { return a_fetch_cost(e, sh.r0 + r); });
            std::vector<int> lo_c(sh.C, v), hi_c(sh.C, std::min(vmax + aw.d1, T_ - 1));
            Limiter lb = engine_detail::refill(
                fb, sh.C, lo_c, hi_c, cfg_.memory.bsram_bw, 0, opts_.enforce_sram_bw, false,
                [&](int, int) { return std::int64_t(core_.k0); });
            auto b_ready = [&](int t) {
                for (int c = 0; c < sh.C; ++c)
                    if (!fb.has(c, t)) return false;
                return true;
            };
            // candidate geometry is frozen at cycle start
            const std::vector<int> w0 = w;
            for (int r = 0; r < sh.R; ++r) {
                if (fin[r]) {
                    ts.stalls.output_sync += std::uint64_t(sh.C);
                    continue;
                }
                bool progressed = false;
                for (int lane = 0; lane < k0; ++lane) {
                    int pt = -1, pl = -1, pr = -1;
                    auto usable = [&](int t, int l, int rr) {
                        if (t >= T_ || l < 0 || rr < 0) return false;
                        if (!a_.nz(t, l, sh.r0 + rr)) return false;
                        if (consumed[cidx(t, l, rr)]) return false;
                        if (t < w0[rr] || t > w0[rr] + aw.d1) return false;  // donor row's buffer
                        if (!fa.has(rr, t)) return false;
                        if (!b_ready(t)) return false;
                        return true;
                    };
                    if (usable(w0[r], lane, r)) {
                        pt = w0[r]; pl = lane; pr = r;
                    } else {
                        for (int d1 = 1; d1 <= aw.d1 && pt < 0; ++d1)
                            for (int d3 = 0; d3 <= aw.d3 && pt < 0; ++d3)
                                for (int d2 = 0; d2 <= aw.d2 && pt < 0; ++d2)
                                    if (usable(w0[r] + d1, lane - d2, r - d3)) {
                                        pt = w0[r] + d1; pl = lane - d2; pr = r - d3;
                                    }
                    }
                    if (pt < 0) continue;
                    consumed[cidx(pt, pl, pr)] = 1;
                    --remaining[std::size_t(pt) * sh.R + pr];
                    std::int8_t av = a_.at(pt, pl, sh.r0 + pr);
                    for (int c = 0; c < sh.C; ++c) {
                        std::int8_t bv = b_.at(pt, pl, sh.c0 + c);
                        add_pair(sh.r0 + pr, sh.c0 + c, av, bv);
                        if (bv != 0) ++ts.effectual;
                    }
                    progressed = true;
                }
                bool worked = progressed;
                int budget = 1 + aw.d1;
                while (budget > 0 && w[r] < T_ && remaining[std::size_t(w[r]) * sh.R + r] == 0) {
                    ++w[r];
                    --budget;
                    progressed = true;
                }
                if (w[r] >= T_) {
                    fin[r] = 1;
                    --unfinished;
                    continue;
                }
                if (!progressed) {
                    if (!fa.has(r, w[r]) && la == Limiter::Banks)
                        ts.stalls.bank_conflict += std::uint64_t(sh.C);
                    else
                        ts.stalls.bandwidth += std::uint64_t(sh.C);
                } else if (!worked) {
                    ts.stalls.buf_full += std::uint64_t(sh.C);  // window slide cycle
                }
                (void)lb;
            }
        }
        ts.cycles = std::max<std::uint64_t>(ts.cycles, ceil_div(T_, 1 + aw.d1));
        return ts;
    }

    /* sparse_ab: per-PE selection of effectual pairs over compressed B */
    engine_detail::TileStats tile_dual(const TileShape& sh) {
        engine_detail::TileStats ts;
        const BorrowWindow& aw = cfg_.a_window;
        const BorrowWindow& bw = cfg_.b_window;
        const int k0 = core_.k0;
        const int L = (1 + aw.d1) * (1 + bw.d1);
        engine_detail::FetchState fa, fb;
        fa.init(sh.R, T_);
        fb.init(sh.C, 1);
        std::vector<const ColumnStream*> streams(sh.C);
        std::vector<int> len(sh.C);
        for (int c = 0; c < sh.C; ++c) {
            streams[c] = &bs_->streams[sh.c0 + c];
            len[c] = int(streams[c]->chunks.size());
            fb.got[c].assign(len[c], 0);
            fb.scan[c] = 0;
        }
        // per (r,c): cursor, per-chunk pending effectual pair counts, consumed flags
        std::vector<int> cur(std::size_t(sh.R) * sh.C, 0);
        std::vector<char> fin(std::size_t(sh.R) * sh.C, 0);
        std::vector<std::vector<int>> pending(std::size_t(sh.R) * sh.C);
        std::vector<std::vector<std::uint8_t>> used(std::size_t(sh.R) * sh.C);
        auto pe = [&](int r, int c) { return std::size_t(r) * sh.C + c; };
        int unfinished = 0;
        for (int r = 0; r < sh.R; ++r)
            for (int c = 0; c < sh.C; ++c) {
                pending[pe(r, c)].assign(len[c], 0);
                used[pe(r, c)].assign(std::size_t(len[c]) * k0, 0);
                for (int s = 0; s < len[c]; ++s) {
                    const StreamChunk& ch = streams[c]->chunks[s];
                    int cnt = 0;
                    for (int l = 0; l < k0; ++l) {
                        if (ch.vals[l] == 0) continue;
                        int t = ch.base + ch.meta[l].t_off;
                        int lane = l - ch.meta[l].lane_off;
                        if (a_.nz(t, lane, sh.r0 + r)) ++cnt;
                    }
                    pending[pe(r, c)][s] = cnt;
                }
                if (len[c] == 0)
                    fin[pe(r, c)] = 1;
                else
                    ++unfinished;
            }
        while (unfinished > 0) {
            ++ts.cycles;
            // per-PE window registers; refill serves the union span per row/column
            std::vector<int> Wlo(sh.R, INT32_MAX), Whi(sh.R, -1);
            for (int r = 0; r < sh.R; ++r)
                for (int c = 0; c < sh.C; ++c)
                    if (!fin[pe(r, c)]) {
                        int b = streams[c]->chunks[cur[pe(r, c)]].base;
                        Wlo[r] = std::min(Wlo[r], b);
                        Whi[r] = std::max(Whi[r], b);
                    }
            std::vector<int> vlo(sh.C, INT32_MAX), vhi(sh.C, -1);
            for (int c = 0; c < sh.C; ++c)
                for (int r = 0; r < sh.R; ++r)
                    if (!fin[pe(r, c)]) {
                        vlo[c] = std::min(vlo[c], cur[pe(r, c)]);
                        vhi[c] = std::max(vhi[c], cur[pe(r, c)]);
                    }
            // the physical staging window gates reach; unthrottled runs fetch
            // the full extent so reach is limited by the lookahead alone
            const bool a_throttled = opts_.enforce_sram_bw || opts_.enforce_banks;
            std::vector<int> lo_r(sh.R), hi_r(sh.R);
            for (int r = 0; r < sh.R; ++r) {
                lo_r[r] = Wlo[r] == INT32_MAX ? 1 : Wlo[r];
                hi_r[r] = Wlo[r] == INT32_MAX
                              ? 0
                              : (a_throttled ? std::min(Whi[r] + L - 1, T_ - 1) : T_ - 1);
            }
            Limiter la = engine_detail::refill(
                fa, sh.R, lo_r, hi_r, cfg_.memory.asram_bw, cfg_.memory.banks_a,
                opts_.enforce_sram_bw, opts_.enforce_banks,
                [&](int r, int e) { return a_fetch_cost(e, sh.r0 + r); });
            std::vector<int> lo_c(sh.C), hi_c(sh.C);
            for (int c = 0; c < sh.C; ++c) {
                lo_c[c] = vlo[c] == INT32_MAX ? 1 : vlo[c];
                hi_c[c] = vlo[c] == INT32_MAX ? 0 : std::min(vhi[c] + aw.d1, len[c] - 1);
            }
            engine_detail::refill(fb, sh.C, lo_c, hi_c, cfg_.memory.bsram_bw, 0,
                                  opts_.enforce_sram_bw, false,
                                  [&](int, int) { return std::int64_t(core_.k0); });
            // candidate geometry is frozen at cycle start
            const std::vector<int> cur0 = cur;
            for (int r = 0; r < sh.R; ++r)
                for (int c = 0; c < sh.C; ++c) {
                    std::size_t me = pe(r, c);
                    if (fin[me]) {
                        ++ts.stalls.output_sync;
                        continue;
                    }
                    bool progressed = false;
                    for (int lane = 0; lane < k0; ++lane) {
                        int ps = -1, pl = -1, prow = -1;
                        auto usable = [&](int rr, int s_abs, int l) {
                            if (rr < 0 || l < 0) return false;
                            std::size_t de = pe(rr, c);
                            if (s_abs >= len[c]) return false;
                            if (cur0[de] >= len[c]) return false;
                            if (!fb.has(c, s_abs)) return false;
                            const StreamChunk& ch = streams[c]->chunks[s_abs];
                            if (ch.vals[l] == 0) return false;
                            if (used[de][std::size_t(s_abs) * k0 + l]) return false;
                            int t = ch.base + ch.meta[l].t_off;
                            int la2 = l - ch.meta[l].lane_off;
                            if (!a_.nz(t, la2, sh.r0 + rr)) return false;
                            if (!fa.has(rr, t)) return false;
                            return true;
                        };
                        if (usable(r, cur0[me], lane)) {
                            ps = cur0[me]; pl = lane; prow = r;
                        } else {
                            for (int s = 1; s <= aw.d1 && ps < 0; ++s)
                                for (int d3 = 0; d3 <= aw.d3 && ps < 0; ++d3)
                                    for (int d2 = 0; d2 <= aw.d2 && ps < 0; ++d2) {
                                        int rr = r - d3;
                                        if (rr < 0) continue;
                                        if (usable(rr, cur0[pe(rr, c)] + s, lane - d2)) {
                                            ps = cur0[pe(rr, c)] + s;
                                            pl = lane - d2;
                                            prow = rr;
                                        }
                                    }
                        }
                        if (ps < 0) continue;
                        std::size_t de = pe(prow, c);
                        used[de][std::size_t(ps) * k0 + pl] = 1;
                        --pending[de][ps];
                        const StreamChunk& ch = streams[c]->chunks[ps];
                        int t = ch.base + ch.meta[pl].t_off;
                        int la2 = pl - ch.meta[pl].lane_off;
                        int gcol = sh.c0 + c - ch.meta[pl].col_off;
                        std::int8_t av = a_.at(t, la2, sh.r0 + prow);
                        add_pair(sh.r0 + prow, gcol, av, ch.vals[pl]);
                        ++ts.effectual;
                        progressed = true;
                    }
                    bool worked = progressed;
                    int budget = 1 + aw.d1;
                    while (budget > 0 && cur[me] < len[c] && pending[me][cur[me]] == 0) {
                        ++cur[me];
                        --budget;
                        progressed = true;
                    }
                    if (cur[me] >= len[c]) {
                        fin[me] = 1;
                        --unfinished;
                        continue;
                    }
                    if (!progressed) {
                        if (la == Limiter::Banks)
                            ++ts.stalls.bank_conflict;
                        else
                            ++ts.stalls.bandwidth;
                    } else if (!worked) {
                        ++ts.stalls.buf_full;  // cycle spent sliding the window
                    }
                }
        }
        ts.cycles = std::max<std::uint64_t>(ts.cycles, ceil_div(T_, std::uint64_t(L)));
        return ts;
    }

    const GemmProblem& p_;
    ArchConfig cfg_;
    SimOptions opts_;
    CoreDims core_;
    int T_ = 0;
    BlockedTensor a_, b_;
    CompressedOperandStream owned_stream_;
    const CompressedOperandStream* bs_ = nullptr;
    std::vector<int> a_nnz_;
    std::vector<std::int32_t> acc_;
};

inline SimReport simulate(const GemmProblem& p, const ArchConfig& cfg,
                          const SimOptions& opts = {},
                          const CompressedOperandStream* stream = nullptr) {
    ArchConfig v = validate(cfg);
    require(v.mode != Mode::Griffin, Err::BadValue,
            "griffin configs execute via simulate_griffin");
    Engine e(p, v, opts, stream);
    return e.run();
}

// Spec'd entry point for callers that manage preprocessing themselves: the
// stream is mandatory exactly when the mode consumes one.
inline SimReport simulate_with_stream(const GemmProblem& p, const ArchConfig& cfg,
                                      const CompressedOperandStream* stream,
                                      const SimOptions& opts = {}) {
    ArchConfig v = validate(cfg);
    bool needs = v.mode == Mode::SparseB || v.mode == Mode::SparseAB;
    if (needs) require(stream != nullptr, Err::MissingCompressedB, "mode needs a compressed B stream");
    return simulate(p, v, opts, stream);
}

inline SimReport simulate_griffin(const GemmProblem& p, const ArchConfig& cfg,
                                  ModelCategory category, const SimOptions& opts = {}) {
    ArchConfig v = validate(cfg);
    require(v.mode == Mode::Griffin, Err::BadValue, "simulate_griffin needs a griffin config");
    return simulate(p, morph(v, category), opts);
}

/* BANDWIDTH REPORTING */

struct BandwidthViolation {
    std::string resource;  // "asram" | "bsram" | "dram"
    double needed_bytes_per_cycle = 0;
    double budget_bytes_per_cycle = 0;
};

// Flags resources whose budget is below speedup x baseline demand. The
// simulation already charges such shortfalls as bandwidth stalls when
// enforcement is on; this reports which resource binds.
inline std::vector<BandwidthViolation> bandwidth_check(const SimReport& rep,
                                                       const ArchConfig& cfg) {
    std::vector<BandwidthViolation> out;
    double a_base = double(cfg.core.m0) * cfg.core.k0;
    double b_base = double(cfg.core.k0) * cfg.core.n0;
    double d_base =
        rep.dense_cycles
            ? double(rep.a_bytes + rep.b_bytes + rep.c_bytes) / double(rep.dense_cycles)
            : 0.0;
    auto check = [&](const char* name, double base, double budget) {
        double needed = rep.speedup * base;
        if (needed > budget) out.push_back({name, needed, budget});
    };
    check("asram", a_base, cfg.memory.asram_bw);
    check("bsram", b_base, cfg.memory.bsram_bw);
    check("dram", d_base, cfg.memory.dram_bw);
    return out;
}

/* REPORT SERIALIZATION */

inline json report_to_json(const SimReport& r) {
    return json{{"m", r.m},
                {"k", r.k},
                {"n", r.n},
                {"cycles", r.cycles},
                {"dense_cycles", r.dense_cycles},
                {"speedup", r.speedup},
                {"stall_output_sync", r.stalls.output_sync},
                {"stall_bank_conflict", r.stalls.bank_conflict},
                {"stall_buf_full", r.stalls.buf_full},
                {"stall_bandwidth", r.stalls.bandwidth},
                {"effectual_ops", r.effectual_ops},
                {"total_mac_slots", r.total_mac_slots},
                {"c_checksum", r.c_checksum},
                {"functional_ok", r.functional_ok}};
}

}  // namespace sgsim

#pragma once

// GEMM workloads: layer-shape mapping, the blocked 3D operand layout fed to
// the core, sparsity generation, the load-balancing lane shuffle, and the
// flat tensor file format.

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "sgsim/common.hpp"
#include "sgsim/config.hpp"

namespace sgsim {

// C(m x n) += A(m x k) * B(k x n); int8 elements, int32 accumulation so
// functional checks are exact.
struct GemmProblem {
    int m = 0, k = 0, n = 0;
    std::vector<std::int8_t> a;  // row-major m x k
    std::vector<std::int8_t> b;  // row-major k x n

    std::int8_t a_at(int row, int kk) const { return a[std::size_t(row) * k + kk]; }
    std::int8_t b_at(int kk, int col) const { return b[std::size_t(kk) * n + col]; }
};

inline GemmProblem make_problem(int m, int k, int n) {
    require(m > 0 && k > 0 && n > 0, Err::BadValue, "GEMM dims must be positive");
    GemmProblem p;
    p.m = m;
    p.k = k;
    p.n = n;
    p.a.assign(std::size_t(m) * k, 0);
    p.b.assign(std::size_t(k) * n, 0);
    return p;
}

/* LAYER SHAPES */

struct LayerShape {
    enum class Kind { Conv, FullyConnected, Attention } kind = Kind::FullyConnected;
    // Conv
    int c_in = 0, r = 0, s = 0, c_out = 0, h = 0, w = 0;
    // FullyConnected
    int in_features = 0, out_features = 0, batch = 0;
    // Attention (one projection)
    int seq_len = 0, hidden = 0;
};

struct GemmDims {
    int m = 0, k = 0, n = 0;
};

inline GemmDims layer_to_gemm(const LayerShape& ls) {
    switch (ls.kind) {
        case LayerShape::Kind::Conv:
            require(ls.c_in > 0 && ls.r > 0 && ls.s > 0 && ls.c_out > 0 && ls.h > 0 && ls.w > 0,
                    Err::BadValue, "conv shape fields must be positive");
            return {ls.h * ls.w, ls.c_in * ls.r * ls.s, ls.c_out};
        case LayerShape::Kind::FullyConnected:
            require(ls.batch > 0 && ls.in_features > 0 && ls.out_features > 0, Err::BadValue,
                    "fc shape fields must be positive");
            return {ls.batch, ls.in_features, ls.out_features};
        case LayerShape::Kind::Attention:
            require(ls.seq_len > 0 && ls.hidden > 0, Err::BadValue,
                    "attention shape fields must be positive");
            return {ls.seq_len, ls.hidden, ls.hidden};
    }
    fail(Err::BadValue, "bad layer kind");
}

/* BLOCKED LAYOUT */

// Operand reshaped into (chunk, lane, slice): k = chunk*K0 + lane, slice is
// the m row for A or the n column for B. Padded lanes hold zero with mask 0.
struct BlockedTensor {
    int t_chunks = 0;
    int k0 = 0;
    int slices = 0;   // m for A, n for B
    int k_logical = 0;
    int pad = 0;      // zero-padded element count
    std::vector<std::int8_t> vals;  // [t][lane][slice]
    std::vector<std::uint8_t> mask;

    std::size_t idx(int t, int lane, int s) const {
        return (std::size_t(t) * k0 + lane) * slices + s;
    }
    std::int8_t at(int t, int lane, int s) const { return vals[idx(t, lane, s)]; }
    bool nz(int t, int lane, int s) const { return mask[idx(t, lane, s)] != 0; }
};

enum class Operand { A, B };

inline BlockedTensor block(const GemmProblem& p, const CoreDims& core, Operand which) {
    BlockedTensor bt;
    bt.k0 = core.k0;
    bt.t_chunks = int(ceil_div(p.k, core.k0));
    bt.slices = which == Operand::A ? p.m : p.n;
    bt.k_logical = p.k;
    bt.pad = (bt.t_chunks * core.k0 - p.k) * bt.slices;
    bt.vals.assign(std::size_t(bt.t_chunks) * bt.k0 * bt.slices, 0);
    bt.mask.assign(bt.vals.size(), 0);
    for (int t = 0; t < bt.t_chunks; ++t) {
        for (int lane = 0; lane < bt.k0; ++lane) {
            int kk = t * core.k0 + lane;
            if (kk >= p.k) continue;
            for (int s = 0; s < bt.slices; ++s) {
                std::int8_t v = which == Operand::A ? p.a_at(s, kk) : p.b_at(kk, s);
                bt.vals[bt.idx(t, lane, s)] = v;
                bt.mask[bt.idx(t, lane, s)] = v != 0;
            }
        }
    }
    return bt;
}

// Inverse of block(); exact round trip including the pad check.
inline void deblock(const BlockedTensor& bt, Operand which, GemmProblem& out) {
    for (int t = 0; t < bt.t_chunks; ++t)
        for (int lane = 0; lane < bt.k0; ++lane) {
            int kk = t * bt.k0 + lane;
            for (int s = 0; s < bt.slices; ++s) {
                std::int8_t v = bt.at(t, lane, s);
                if (kk >= bt.k_logical) {
                    require(v == 0, Err::BadValue, "nonzero value in padded lane");
                    continue;
                }
                if (which == Operand::A)
                    out.a[std::size_t(s) * out.k + kk] = v;
                else
                    out.b[std::size_t(kk) * out.n + s] = v;
            }
        }
}

/* SHUFFLE */

// Deterministic local rotation: within every group of 4 consecutive lanes,
// chunk t rotates lanes by (t mod 4). Applied identically to A and B so the
// multiplicand pairing along k is preserved.
inline int shuffled_lane(int lane, int t) {
    int g = lane & ~3;
    return g + ((lane - g + t) & 3);
}

inline BlockedTensor shuffle(const BlockedTensor& bt, bool on) {
    if (!on) return bt;
    require(bt.k0 % 4 == 0, Err::K0NotDivisibleBy4, "shuffle needs K0 divisible by 4");
    BlockedTensor out = bt;
    for (int t = 0; t < bt.t_chunks; ++t)
        for (int lane = 0; lane < bt.k0; ++lane) {
            int dst = shuffled_lane(lane, t);
            for (int s = 0; s < bt.slices; ++s) {
                out.vals[out.idx(t, dst, s)] = bt.vals[bt.idx(t, lane, s)];
                out.mask[out.idx(t, dst, s)] = bt.mask[bt.idx(t, lane, s)];
            }
        }
    return out;
}

inline BlockedTensor unshuffle(const BlockedTensor& bt, bool on) {
    if (!on) return bt;
    require(bt.k0 % 4 == 0, Err::K0NotDivisibleBy4, "shuffle needs K0 divisible by 4");
    BlockedTensor out = bt;
    for (int t = 0; t < bt.t_chunks; ++t)
        for (int lane = 0; lane < bt.k0; ++lane) {
            int dst = shuffled_lane(lane, t);
            for (int s = 0; s < bt.slices; ++s) {
                out.vals[out.idx(t, lane, s)] = bt.vals[bt.idx(t, dst, s)];
                out.mask[out.idx(t, lane, s)] = bt.mask[bt.idx(t, dst, s)];
            }
        }
    return out;
}

/* SPARSITY GENERATION */

struct PatternSpec {
    enum class Kind { Bernoulli, PerGroupOneHot, RowSkewed } kind = Kind::Bernoulli;
    int g = 4;                 // PerGroupOneHot: group length along a lane's chunk sequence
    int k0_group = 16;         // PerGroupOneHot: lane width used for grouping
    double row_fraction = 0.25;  // RowSkewed: fraction of k-rows carrying the nonzeros
};

namespace detail {

// Fill `nnz` distinct positions out of `total` with nonzero values.
// Exact-count sampling keeps the realized density on target.
inline void scatter_exact(std::vector<std::int8_t>& out, const std::vector<std::size_t>& domain,
                          std::size_t nnz, Rng& rng) {
    std::vector<std::size_t> pool(domain);
    std::size_t take = std::min(nnz, pool.size());
    for (std::size_t i = 0; i < take; ++i) {
        std::size_t j = i + rng.below(pool.size() - i);
        std::swap(pool[i], pool[j]);
        out[pool[i]] = rng.nonzero_i8();
    }
}

inline void fill_operand(std::vector<std::int8_t>& vals, int rows, int cols, bool k_major_rows,
                         double density, const PatternSpec& ps, Rng& rng) {
    // `rows` x `cols` row-major; the k axis is `rows` for B and `cols` for A.
    std::fill(vals.begin(), vals.end(), 0);
    if (density <= 0.0) return;
    if (density >= 1.0) {
        for (auto& v : vals) v = rng.nonzero_i8();
        return;
    }
    const std::size_t total = vals.size();
    switch (ps.kind) {
        case PatternSpec::Kind::Bernoulli: {
            std::vector<std::size_t> domain(total);
            for (std::size_t i = 0; i < total; ++i) domain[i] = i;
            std::size_t nnz = std::size_t(double(total) * density + 0.5);
            scatter_exact(vals, domain, nnz, rng);
            break;
        }
        case PatternSpec::Kind::PerGroupOneHot: {
            // One nonzero per g consecutive chunks of each lane's k
            // subsequence, per slice. With k = t*K0 + lane, lane `l` owns
            // k positions l, l+K0, l+2*K0, ...
            require(ps.g >= 1 && ps.k0_group >= 1, Err::BadValue, "bad one-hot group");
            int kdim = k_major_rows ? rows : cols;
            int other = k_major_rows ? cols : rows;
            int k0 = ps.k0_group;
            int tchunks = int(ceil_div(kdim, k0));
            for (int s = 0; s < other; ++s)
                for (int lane = 0; lane < k0; ++lane) {
                    for (int g0 = 0; g0 < tchunks; g0 += ps.g) {
                        // candidate chunks [g0, g0+g) whose k index is valid
                        std::vector<int> ks;
                        for (int t = g0; t < std::min(g0 + ps.g, tchunks); ++t) {
                            int kk = t * k0 + lane;
                            if (kk < kdim) ks.push_back(kk);
                        }
                        if (ks.empty()) continue;
                        int kk = ks[rng.below(ks.size())];
                        std::size_t at = k_major_rows ? std::size_t(kk) * other + s
                                                      : std::size_t(s) * cols + kk;
                        vals[at] = rng.nonzero_i8();
                    }
                }
            break;
        }
        case PatternSpec::Kind::RowSkewed: {
            // Concentrate nonzeros in a periodic subset of k rows; persistent
            // lane imbalance in the blocked layout, the stress case local
            // rotation is meant to fix.
            require(ps.row_fraction > 0.0 && ps.row_fraction <= 1.0, Err::BadValue,
                    "row_fraction in (0,1]");
            int stride = std::max(1, int(1.0 / ps.row_fraction + 0.5));
            int kdim = k_major_rows ? rows : cols;
            int phase = int(rng.below(std::uint64_t(stride)));
            std::vector<std::size_t> domain;
            for (std::size_t i = 0; i < total; ++i) {
                int kk = k_major_rows ? int(i / cols) : int(i % cols);
                if ((kk + phase) % stride == 0) domain.push_back(i);
            }
            std::size_t nnz = std::size_t(double(total) * density + 0.5);
            scatter_exact(vals, domain, nnz, rng);
            break;
        }
    }
}

}  // namespace detail

inline GemmProblem gen_sparsity(const GemmProblem& shape, double density_a, double density_b,
                                std::uint64_t seed, const PatternSpec& pattern) {
    require(density_a >= 0.0 && density_a <= 1.0 && density_b >= 0.0 && density_b <= 1.0,
            Err::BadValue, "densities must lie in [0,1]");
    GemmProblem p = make_problem(shape.m, shape.k, shape.n);
    Rng ra(Rng::mix(seed, 0xA11CE));
    Rng rb(Rng::mix(seed, 0xB0B));
    detail::fill_operand(p.a, p.m, p.k, /*k_major_rows=*/false, density_a, pattern, ra);
    detail::fill_operand(p.b, p.k, p.n, /*k_major_rows=*/true, density_b, pattern, rb);
    return p;
}

inline GemmProblem random_problem(int m, int k, int n, double density_a, double density_b,
                                  std::uint64_t seed,
                                  PatternSpec pattern = PatternSpec{}) {
    return gen_sparsity(make_problem(m, k, n), density_a, density_b, seed, pattern);
}

/* TENSOR FILES (magic "SGT1", little-endian header, row-major int8 body) */

inline void write_tensor(const std::string& path, int rows, int cols,
                         const std::vector<std::int8_t>& vals) {
    require(std::size_t(rows) * cols == vals.size(), Err::BadValue, "tensor size mismatch");
    std::ofstream f(path, std::ios::binary);
    require(f.good(), Err::BadFile, "cannot open " + path);
    const char magic[4] = {'S', 'G', 'T', '1'};
    std::uint32_t r = rows, c = cols, dtype = 0;  // dtype 0 = int8
    f.write(magic, 4);
    f.write(reinterpret_cast<const char*>(&r), 4);
    f.write(reinterpret_cast<const char*>(&c), 4);
    f.write(reinterpret_cast<const char*>(&dtype), 4);
    f.write(reinterpret_cast<const char*>(vals.data()), std::streamsize(vals.size()));
    require(f.good(), Err::BadFile, "write failed: " + path);
}

inline std::vector<std::int8_t> read_tensor(const std::string& path, int& rows, int& cols) {
    std::ifstream f(path, std::ios::binary);
    require(f.good(), Err::BadFile, "cannot open " + path);
    char magic[4];
    std::uint32_t r = 0, c = 0, dtype = 0;
    f.read(magic, 4);
    f.read(reinterpret_cast<char*>(&r), 4);
    f.read(reinterpret_cast<char*>(&c), 4);
    f.read(reinterpret_cast<char*>(&dtype), 4);
    require(f.good() && std::string(magic, 4) == "SGT1", Err::BadFile,
            "bad tensor header: " + path);
    require(dtype == 0, Err::BadFile, "unsupported dtype in " + path);
    std::vector<std::int8_t> vals(std::size_t(r) * c);
    f.read(reinterpret_cast<char*>(vals.data()), std::streamsize(vals.size()));
    require(f.good(), Err::BadFile, "truncated tensor body: " + path);
    rows = int(r);
    cols = int(c);
    return vals;
}

/* BENCHMARK PRESETS */

// Reference networks with their (B,A) sparsity ratios and published dense
// cycle counts, used as workload presets. Layer lists are the GEMM shapes of
// the conv/fc/attention layers (grouped convolutions appear with repeat=2).
struct BenchLayer {
    std::string name;
    int m, k, n;
    int repeat = 1;
};

struct Benchmark {
    std::string name;
    double density_b = 1.0;  // weight tensor density (1 - sparsity)
    double density_a = 1.0;  // activation tensor density
    std::uint64_t ref_dense_cycles = 0;
    std::vector<BenchLayer> layers;
};

inline const std::vector<Benchmark>& benchmarks() {
    static const std::vector<Benchmark> nets = {
        {"alexnet", 0.11, 0.47, 1000000,
         {{"conv1", 3025, 363, 96},
          {"conv2", 729, 1200, 128, 2},
          {"conv3", 169, 2304, 384},
          {"conv4", 169, 1728, 192, 2},
          {"conv5", 169, 1728, 128, 2},
          {"fc6", 1, 9216, 4096},
          {"fc7", 1, 4096, 4096},
          {"fc8", 1, 4096, 1000}}},
        {"googlenet", 0.18, 0.63, 2200000,
         {{"conv1", 12544, 147, 64},
          {"conv2", 3136, 576, 192},
          {"i3a_3x3", 784, 864, 128},
          {"i4a_3x3", 196, 864, 208},
          {"i4e_3x3", 196, 1440, 320},
          {"i5b_3x3", 49, 1728, 384},
          {"fc", 1, 1024, 1000}}},
        {"resnet50", 0.19, 0.57, 4800000,
         {{"conv1", 12544, 147, 64},
          {"res2_1x1", 3136, 64, 256},
          {"res2_3x3", 3136, 576, 64},
          {"res3_3x3", 784, 1152, 128},
          {"res4_1x1", 196, 1024, 256},
          {"res4_3x3", 196, 2304, 256},
          {"res5_3x3", 49, 4608, 512},
          {"fc", 1, 2048, 1000}}},
        {"inceptionv3", 0.21, 0.54, 6900000,
         {{"conv_1a", 22201, 27, 32},
          {"conv_2b", 21609, 288, 64},
          {"mixed5_3x3", 1225, 576, 96},
          {"mixed6_7x1", 289, 1344, 192},
          {"mixed7_3x3", 64, 1344, 384},
          {"fc", 1, 2048, 1000}}},
        {"mobilenetv2", 0.19, 0.48, 2200000,
         {{"conv1", 12544, 27, 32},
          {"pw2", 3136, 144, 24},
          {"pw3", 784, 192, 32},
          {"pw4", 196, 384, 96},
          {"pw5", 49, 960, 160},
          {"pw6", 49, 320, 1280},
          {"fc", 1, 1280, 1000}}},
        {"bert", 0.18, 1.00, 5300000,
         {{"qkv_proj", 64, 768, 768, 36},
          {"attn_out", 64, 768, 768, 12},
          {"ffn_up", 64, 768, 3072, 12},
          {"ffn_down", 64, 3072, 768, 12}}},
    };
    return nets;
}

inline const Benchmark& benchmark(const std::string& name) {
    for (const auto& b : benchmarks())
        if (b.name == name) return b;
    fail(Err::BadValue, "unknown benchmark '" + name + "'");
}

// Shrink a layer until m*k*n <= cap. The spatial dimensions shrink first;
// the reduction length, which drives the packing statistics, is halved only
// once m and n are exhausted.
inline GemmDims truncate_layer(GemmDims d, std::int64_t cap) {
    auto macs = [&] { return std::int64_t(d.m) * d.k * d.n; };
    while (macs() > cap) {
        if (d.m > 1 && d.m >= d.n)
            d.m = (d.m + 1) / 2;
        else if (d.n > 1)
            d.n = (d.n + 1) / 2;
        else if (d.k > 1)
            d.k = (d.k + 1) / 2;
        else
            break;
    }
    return d;
}

}  // namespace sgsim

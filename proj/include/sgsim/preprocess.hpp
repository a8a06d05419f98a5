#pragma once

// Offline compiler for operand B: greedy nonzero borrowing inside a
// (db1,db2,db3) window, emitting per-column packed chunk streams plus
// per-element borrow metadata, a verifying decoder, and a bit-exact file
// format.
//
// Compression walks output rounds; in round s every live column fills one
// K0-wide output chunk. A column's window base is the earliest chunk that
// still holds one of its unconsumed nonzeros. Slot (s,lane,col) takes the
// first unconsumed nonzero among
//     (base, lane, col)                                      own position
//     (base+t, lane-l, col-c)  t in [1,d1], l in [0,d2], c in [0,d3]
// in lexicographic (t,c,l) order: nearest in time first, own column before
// cross-column donation on time ties. This order is stable under window
// growth (a wider window only appends candidates), which keeps cycle
// counts monotone in the window. Slots race for donors in (lane,col)
// order, earlier slots win. Offsets are stored relative to the chunk base,
// so base jumps over drained chunks never widen the metadata fields.

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "sgsim/common.hpp"
#include "sgsim/config.hpp"
#include "sgsim/workload.hpp"

namespace sgsim {

struct BorrowMeta {
    std::uint8_t t_off = 0;
    std::uint8_t lane_off = 0;
    std::uint8_t col_off = 0;
    bool operator==(const BorrowMeta&) const = default;
};

struct StreamChunk {
    int base = 0;  // original chunk index slot offsets are relative to
    std::vector<std::int8_t> vals;
    std::vector<BorrowMeta> meta;

    int max_ref() const {
        int mr = base;
        for (std::size_t l = 0; l < vals.size(); ++l)
            if (vals[l] != 0) mr = std::max(mr, base + meta[l].t_off);
        return mr;
    }
    bool empty() const {
        for (auto v : vals)
            if (v != 0) return false;
        return true;
    }
};

struct ColumnStream {
    std::vector<StreamChunk> chunks;
};

struct CompressedOperandStream {
    BorrowWindow window;
    int k0 = 0;
    int t_chunks = 0;      // original chunk count
    int columns = 0;       // total columns covered
    int group = 0;         // column-group width borrowing may not cross
    std::vector<ColumnStream> streams;  // one per column

    std::vector<int> chunk_count_per_column() const {
        std::vector<int> c;
        c.reserve(streams.size());
        for (const auto& s : streams) c.push_back(int(s.chunks.size()));
        return c;
    }
};

/* COMPRESSION */

inline CompressedOperandStream compress_b(const BlockedTensor& b, const BorrowWindow& window,
                                          int column_group) {
    check_window(window, "B");
    require(column_group >= 1, Err::BadValue, "column group must be >= 1");
    CompressedOperandStream out;
    out.window = window;
    out.k0 = b.k0;
    out.t_chunks = b.t_chunks;
    out.columns = b.slices;
    out.group = column_group;
    out.streams.resize(b.slices);

    const int T = b.t_chunks;
    const int K0 = b.k0;

    std::vector<std::uint8_t> consumed(b.vals.size(), 0);
    // nonzeros still unconsumed per (chunk, column); drives base advance
    std::vector<int> live(std::size_t(T) * b.slices, 0);
    for (int t = 0; t < T; ++t)
        for (int l = 0; l < K0; ++l)
            for (int c = 0; c < b.slices; ++c)
                if (b.nz(t, l, c)) ++live[std::size_t(t) * b.slices + c];

    for (int g0 = 0; g0 < b.slices; g0 += column_group) {
        const int gend = std::min(g0 + column_group, b.slices);
        std::vector<int> base(gend - g0, 0);
        std::vector<char> done(gend - g0, 0);
        bool any_live = true;
        while (any_live) {
            // advance bases first, in ascending column order
            for (int c = g0; c < gend; ++c) {
                if (done[c - g0]) continue;
                int bse = base[c - g0];
                while (bse < T && live[std::size_t(bse) * b.slices + c] == 0) ++bse;
                if (bse >= T) {
                    done[c - g0] = 1;
                    continue;
                }
                base[c - g0] = bse;
            }
            any_live = false;
            for (int c = g0; c < gend; ++c) any_live |= !done[c - g0];
            if (!any_live) break;
            // open one output chunk per live column
            for (int c = g0; c < gend; ++c) {
                if (done[c - g0]) continue;
                StreamChunk ch;
                ch.base = base[c - g0];
                ch.vals.assign(K0, 0);
                ch.meta.assign(K0, {});
                out.streams[c].chunks.push_back(std::move(ch));
            }
            // fill slots in (lane, column) order: earlier slots win donors
            for (int lane = 0; lane < K0; ++lane) {
                for (int c = g0; c < gend; ++c) {
                    if (done[c - g0]) continue;
                    StreamChunk& ch = out.streams[c].chunks.back();
                    const int bse = ch.base;
                    auto take = [&](int t, int l, int cc, int dt, int dl, int dc) -> bool {
                        if (t >= T || l < 0 || cc < g0) return false;
                        std::size_t at = b.idx(t, l, cc);
                        if (!b.mask[at] || consumed[at]) return false;
                        consumed[at] = 1;
                        --live[std::size_t(t) * b.slices + cc];
                        ch.vals[lane] = b.vals[at];
                        ch.meta[lane] = {std::uint8_t(dt), std::uint8_t(dl), std::uint8_t(dc)};
                        return true;
                    };
                    if (take(bse, lane, c, 0, 0, 0)) continue;
                    bool got = false;
                    for (int dt = 1; dt <= window.d1 && !got; ++dt)
                        for (int dc = 0; dc <= window.d3 && !got; ++dc)
                            for (int dl = 0; dl <= window.d2 && !got; ++dl)
                                got = take(bse + dt, lane - dl, c - dc, dt, dl, dc);
                }
            }
        }
    }
    return out;
}

/* DECODING */

inline BlockedTensor decode_b(const CompressedOperandStream& s) {
    check_window(s.window, "B");
    BlockedTensor bt;
    bt.k0 = s.k0;
    bt.t_chunks = s.t_chunks;
    bt.slices = s.columns;
    bt.k_logical = s.t_chunks * s.k0;  // pad split is not recoverable; callers compare values
    bt.pad = 0;
    bt.vals.assign(std::size_t(s.t_chunks) * s.k0 * s.columns, 0);
    bt.mask.assign(bt.vals.size(), 0);
    require(int(s.streams.size()) == s.columns, Err::CorruptMetadata, "stream count mismatch");
    for (int c = 0; c < s.columns; ++c) {
        int prev_base = -1;
        for (const StreamChunk& ch : s.streams[c].chunks) {
            require(int(ch.vals.size()) == s.k0 && int(ch.meta.size()) == s.k0,
                    Err::CorruptMetadata, "bad chunk width");
            require(ch.base > prev_base, Err::CorruptMetadata, "chunk bases must increase");
            prev_base = ch.base;
            for (int lane = 0; lane < s.k0; ++lane) {
                if (ch.vals[lane] == 0) continue;
                const BorrowMeta& m = ch.meta[lane];
                require(m.t_off <= s.window.d1 && m.lane_off <= s.window.d2 &&
                            m.col_off <= s.window.d3,
                        Err::CorruptMetadata, "borrow offset exceeds window");
                require(m.t_off > 0 || (m.lane_off == 0 && m.col_off == 0), Err::CorruptMetadata,
                        "diagonal borrow without a time step");
                int t = ch.base + m.t_off;
                int l = lane - m.lane_off;
                int cc = c - m.col_off;
                require(t < s.t_chunks && l >= 0 && cc >= 0, Err::CorruptMetadata,
                        "borrow offset out of range");
                require((cc / s.group) == (c / s.group), Err::CorruptMetadata,
                        "borrow crosses a column group");
                std::size_t at = bt.idx(t, l, cc);
                require(bt.mask[at] == 0, Err::CorruptMetadata, "double consumption");
                bt.vals[at] = ch.vals[lane];
                bt.mask[at] = 1;
            }
        }
    }
    return bt;
}

/* SERIALIZATION (magic "SGC1") */

namespace detail {

struct BitWriter {
    std::vector<std::uint8_t>& out;
    std::uint32_t acc = 0;
    int nbits = 0;
    void put(std::uint32_t v, int bits) {
        acc |= v << nbits;
        nbits += bits;
        while (nbits >= 8) {
            out.push_back(std::uint8_t(acc & 0xff));
            acc >>= 8;
            nbits -= 8;
        }
    }
    void flush() {
        if (nbits > 0) out.push_back(std::uint8_t(acc & 0xff));
        acc = 0;
        nbits = 0;
    }
};

struct BitReader {
    const std::uint8_t* p;
    const std::uint8_t* end;
    std::uint32_t acc = 0;
    int nbits = 0;
    std::uint32_t get(int bits) {
        while (nbits < bits) {
            require(p != end, Err::TruncatedStream, "metadata bits exhausted");
            acc |= std::uint32_t(*p++) << nbits;
            nbits += 8;
        }
        std::uint32_t v = acc & ((1u << bits) - 1u);
        if (bits) {
            acc >>= bits;
            nbits -= bits;
        }
        return v;
    }
};

template <typename T>
void put_raw(std::vector<std::uint8_t>& out, T v) {
    std::uint8_t b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    out.insert(out.end(), b, b + sizeof(T));
}

template <typename T>
T get_raw(const std::uint8_t*& p, const std::uint8_t* end) {
    require(std::size_t(end - p) >= sizeof(T), Err::TruncatedStream, "stream header truncated");
    T v;
    std::memcpy(&v, p, sizeof(T));
    p += sizeof(T);
    return v;
}

}  // namespace detail

inline std::vector<std::uint8_t> serialize(const CompressedOperandStream& s) {
    using namespace detail;
    std::vector<std::uint8_t> out;
    out.insert(out.end(), {'S', 'G', 'C', '1'});
    put_raw<std::uint16_t>(out, std::uint16_t(s.window.d1));
    put_raw<std::uint16_t>(out, std::uint16_t(s.window.d2));
    put_raw<std::uint16_t>(out, std::uint16_t(s.window.d3));
    put_raw<std::uint16_t>(out, std::uint16_t(s.k0));
    put_raw<std::uint32_t>(out, std::uint32_t(s.t_chunks));
    put_raw<std::uint32_t>(out, std::uint32_t(s.columns));
    put_raw<std::uint32_t>(out, std::uint32_t(s.group));
    MetaWidths w = meta_widths(s.window);
    for (const ColumnStream& col : s.streams) {
        put_raw<std::uint32_t>(out, std::uint32_t(col.chunks.size()));
        for (const StreamChunk& ch : col.chunks) {
            put_raw<std::uint32_t>(out, std::uint32_t(ch.base));
            for (int l = 0; l < s.k0; ++l) put_raw<std::int8_t>(out, ch.vals[l]);
            BitWriter bw{out};
            for (int l = 0; l < s.k0; ++l) {
                bw.put(ch.meta[l].t_off, w.t_bits);
                bw.put(ch.meta[l].lane_off, w.lane_bits);
                bw.put(ch.meta[l].col_off, w.col_bits);
            }
            bw.flush();
        }
    }
    return out;
}

inline CompressedOperandStream deserialize(const std::vector<std::uint8_t>& bytes) {
    using namespace detail;
    const std::uint8_t* p = bytes.data();
    const std::uint8_t* end = p + bytes.size();
    require(bytes.size() >= 4 && p[0] == 'S' && p[1] == 'G' && p[2] == 'C' && p[3] == '1',
            Err::TruncatedStream, "bad stream magic");
    p += 4;
    CompressedOperandStream s;
    s.window.d1 = get_raw<std::uint16_t>(p, end);
    s.window.d2 = get_raw<std::uint16_t>(p, end);
    s.window.d3 = get_raw<std::uint16_t>(p, end);
    s.k0 = get_raw<std::uint16_t>(p, end);
    s.t_chunks = int(get_raw<std::uint32_t>(p, end));
    s.columns = int(get_raw<std::uint32_t>(p, end));
    s.group = int(get_raw<std::uint32_t>(p, end));
    require(s.k0 > 0 && s.columns >= 0 && s.group > 0, Err::TruncatedStream, "bad stream header");
    MetaWidths w = meta_widths(s.window);
    int meta_bytes = (s.k0 * w.total() + 7) / 8;
    s.streams.resize(s.columns);
    for (int c = 0; c < s.columns; ++c) {
        std::uint32_t nchunks = get_raw<std::uint32_t>(p, end);
        s.streams[c].chunks.resize(nchunks);
        for (std::uint32_t i = 0; i < nchunks; ++i) {
            StreamChunk& ch = s.streams[c].chunks[i];
            ch.base = int(get_raw<std::uint32_t>(p, end));
            ch.vals.resize(s.k0);
            ch.meta.resize(s.k0);
            for (int l = 0; l < s.k0; ++l) ch.vals[l] = get_raw<std::int8_t>(p, end);
            require(end - p >= meta_bytes, Err::TruncatedStream, "metadata truncated");
            BitReader br{p, p + meta_bytes};
            for (int l = 0; l < s.k0; ++l) {
                ch.meta[l].t_off = std::uint8_t(br.get(w.t_bits));
                ch.meta[l].lane_off = std::uint8_t(br.get(w.lane_bits));
                ch.meta[l].col_off = std::uint8_t(br.get(w.col_bits));
            }
            p += meta_bytes;
        }
    }
    require(p == end, Err::TruncatedStream, "trailing bytes in stream");
    return s;
}

inline void write_stream(const std::string& path, const CompressedOperandStream& s) {
    auto bytes = serialize(s);
    std::ofstream f(path, std::ios::binary);
    require(f.good(), Err::BadFile, "cannot open " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    require(f.good(), Err::BadFile, "write failed: " + path);
}

inline CompressedOperandStream read_stream(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    require(f.good(), Err::BadFile, "cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

}  // namespace sgsim

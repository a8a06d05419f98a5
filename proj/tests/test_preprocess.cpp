#include <catch2/catch_amalgamated.hpp>

#include "sgsim/preprocess.hpp"

using namespace sgsim;

namespace {

BlockedTensor column_tensor(const std::vector<std::int8_t>& kvals, int k0) {
    GemmProblem p = make_problem(1, int(kvals.size()), 1);
    p.b = kvals;
    CoreDims core;
    core.k0 = k0;
    return block(p, core, Operand::B);
}

std::size_t count_nonzeros(const CompressedOperandStream& s) {
    std::size_t n = 0;
    for (const auto& col : s.streams)
        for (const auto& ch : col.chunks)
            for (auto v : ch.vals)
                if (v) ++n;
    return n;
}

}  // namespace

TEST_CASE("compress: dense column is the identity stream") {
    std::vector<std::int8_t> kvals(32);
    Rng rng(1);
    for (auto& v : kvals) v = rng.nonzero_i8();
    BlockedTensor b = column_tensor(kvals, 16);
    CompressedOperandStream s = compress_b(b, {3, 1, 0}, 16);
    REQUIRE(s.streams[0].chunks.size() == 2);
    for (int i = 0; i < 2; ++i) {
        const StreamChunk& ch = s.streams[0].chunks[i];
        CHECK(ch.base == i);
        for (int l = 0; l < 16; ++l) {
            CHECK(ch.vals[l] == b.at(i, l, 0));
            CHECK(ch.meta[l] == BorrowMeta{});
        }
    }
}

TEST_CASE("compress: time and diagonal borrows fill the leading chunk") {
    // k-vector [0, 5, 0, 7, 9] blocked at K0=3: slot k0 pulls k3 one chunk
    // ahead, slot k2 pulls k4 one chunk ahead and one lane down.
    BlockedTensor b = column_tensor({0, 5, 0, 7, 9}, 3);
    CompressedOperandStream s = compress_b(b, {1, 1, 0}, 16);
    REQUIRE(s.streams[0].chunks.size() == 1);
    const StreamChunk& ch = s.streams[0].chunks[0];
    CHECK(ch.base == 0);
    CHECK(ch.vals[0] == 7);
    CHECK(ch.meta[0] == BorrowMeta{1, 0, 0});
    CHECK(ch.vals[1] == 5);
    CHECK(ch.meta[1] == BorrowMeta{0, 0, 0});
    CHECK(ch.vals[2] == 9);
    CHECK(ch.meta[2] == BorrowMeta{1, 1, 0});
}

TEST_CASE("compress: one-hot columns shrink by exactly the window factor") {
    for (int db1 = 1; db1 <= 4; ++db1) {
        int g = 1 + db1;
        PatternSpec ps;
        ps.kind = PatternSpec::Kind::PerGroupOneHot;
        ps.g = g;
        ps.k0_group = 16;
        int T = 3 * g;
        GemmProblem p = gen_sparsity(make_problem(1, T * 16, 4), 1.0, 0.5, 5 + db1, ps);
        CoreDims core;
        BlockedTensor b = block(p, core, Operand::B);
        CompressedOperandStream s = compress_b(b, {db1, 0, 0}, 16);
        for (int c = 0; c < 4; ++c) CHECK(int(s.streams[c].chunks.size()) == T / g);
    }
}

TEST_CASE("compress: empty column gives an empty stream") {
    BlockedTensor b = column_tensor(std::vector<std::int8_t>(48, 0), 16);
    CompressedOperandStream s = compress_b(b, {2, 1, 0}, 16);
    CHECK(s.streams[0].chunks.empty());
    BlockedTensor back = decode_b(s);
    for (auto v : back.vals) CHECK(v == 0);
}

TEST_CASE("compress/decode round trip, conservation and merge bound") {
    Rng rng(99);
    for (int it = 0; it < 40; ++it) {
        int k = 1 + int(rng.below(120));
        int n = 1 + int(rng.below(24));
        double density = 0.05 + 0.9 * rng.unit();
        GemmProblem p = random_problem(1, k, n, 1.0, density, rng.next());
        CoreDims core;
        core.k0 = 4 << rng.below(3);
        BorrowWindow w;
        w.d1 = int(rng.below(4));
        if (w.d1 > 0) {
            w.d2 = int(rng.below(3));
            w.d3 = int(rng.below(3));
        }
        int group = 1 + int(rng.below(16));
        BlockedTensor b = block(p, core, Operand::B);
        CompressedOperandStream s = compress_b(b, w, group);

        std::size_t nnz = 0;
        for (auto m : b.mask) nnz += m;
        CHECK(count_nonzeros(s) == nnz);  // no drops, no duplicates

        BlockedTensor back = decode_b(s);
        CHECK(back.vals == b.vals);

        for (int c = 0; c < s.columns; ++c) {
            const auto& chunks = s.streams[c].chunks;
            CHECK(int(chunks.size()) <= b.t_chunks);
            // occupied chunks merge at most (1+d1) per output chunk
            int occupied = 0;
            for (int t = 0; t < b.t_chunks; ++t) {
                bool any = false;
                for (int l = 0; l < core.k0; ++l) any |= b.nz(t, l, c);
                occupied += any;
            }
            CHECK(int(chunks.size()) >= int(ceil_div(occupied, 1 + w.d1)));
            for (std::size_t i = 1; i < chunks.size(); ++i)
                CHECK(chunks[i].base > chunks[i - 1].base);
        }

        // determinism
        CompressedOperandStream s2 = compress_b(b, w, group);
        CHECK(serialize(s) == serialize(s2));
    }
}

TEST_CASE("decode: tampered offsets are rejected") {
    GemmProblem p = random_problem(1, 64, 4, 1.0, 0.4, 3);
    CoreDims core;
    BlockedTensor b = block(p, core, Operand::B);
    CompressedOperandStream s = compress_b(b, {2, 1, 0}, 16);
    bool tampered = false;
    for (auto& col : s.streams)
        for (auto& ch : col.chunks)
            for (int l = 0; l < s.k0 && !tampered; ++l)
                if (ch.vals[l]) {
                    ch.meta[l].t_off = 3;  // beyond d1=2
                    tampered = true;
                }
    REQUIRE(tampered);
    CHECK_THROWS_AS(decode_b(s), Error);
}

TEST_CASE("serialize: bit widths and round trip") {
    CHECK(meta_widths({2, 0, 1}).total() == 3);
    CHECK(meta_widths({0, 0, 0}).total() == 0);
    CHECK(meta_widths({8, 0, 1}).total() == 5);

    Rng rng(1234);
    for (int it = 0; it < 20; ++it) {
        GemmProblem p =
            random_problem(1, 1 + int(rng.below(100)), 1 + int(rng.below(10)),
                           1.0, 0.3 + 0.5 * rng.unit(), rng.next());
        CoreDims core;
        BlockedTensor b = block(p, core, Operand::B);
        BorrowWindow w{2, 0, 1};
        CompressedOperandStream s = compress_b(b, w, 16);
        auto bytes = serialize(s);
        CompressedOperandStream back = deserialize(bytes);
        CHECK(serialize(back) == bytes);
        BlockedTensor d1 = decode_b(s);
        BlockedTensor d2 = decode_b(back);
        CHECK(d1.vals == d2.vals);
    }
    // truncation is detected
    GemmProblem p = random_problem(1, 40, 2, 1.0, 0.5, 5);
    CoreDims core;
    auto bytes = serialize(compress_b(block(p, core, Operand::B), {1, 0, 0}, 16));
    bytes.pop_back();
    CHECK_THROWS_AS(deserialize(bytes), Error);
}

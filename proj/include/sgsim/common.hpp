#pragma once

// Shared primitives: error type, deterministic RNG, small numeric helpers.

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>

namespace sgsim {

enum class Err {
    ModeWindowMismatch,
    DegenerateCore,
    UnknownPreset,
    MorphExceedsHardware,
    K0NotDivisibleBy4,
    CorruptMetadata,
    TruncatedStream,
    MissingCompressedB,
    ConfigTensorMismatch,
    TooLargeForOracle,
    UnderdeterminedFit,
    EmptySpaceAfterConstraints,
    BadFile,
    BadValue,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::ModeWindowMismatch:        return "ModeWindowMismatch";
        case Err::DegenerateCore:            return "DegenerateCore";
        case Err::UnknownPreset:             return "UnknownPreset";
        case Err::MorphExceedsHardware:      return "MorphExceedsHardware";
        case Err::K0NotDivisibleBy4:         return "K0NotDivisibleBy4";
        case Err::CorruptMetadata:           return "CorruptMetadata";
        case Err::TruncatedStream:           return "TruncatedStream";
        case Err::MissingCompressedB:        return "MissingCompressedB";
        case Err::ConfigTensorMismatch:      return "ConfigTensorMismatch";
        case Err::TooLargeForOracle:         return "TooLargeForOracle";
        case Err::UnderdeterminedFit:        return "UnderdeterminedFit";
        case Err::EmptySpaceAfterConstraints:return "EmptySpaceAfterConstraints";
        case Err::BadFile:                   return "BadFile";
        case Err::BadValue:                  return "BadValue";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
  public:
    Error(Err kind, const std::string& msg)
        : std::runtime_error(std::string(err_name(kind)) + ": " + msg), kind_(kind) {}
    Err kind() const { return kind_; }

  private:
    Err kind_;
};

[[noreturn]] inline void fail(Err k, const std::string& msg) { throw Error(k, msg); }

inline void require(bool ok, Err k, const std::string& msg) {
    if (!ok) fail(k, msg);
}

constexpr std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

// ceil(log2(v)) with clog2(1) == 0.
constexpr int clog2(std::uint64_t v) {
    int b = 0;
    while ((std::uint64_t{1} << b) < v) ++b;
    return b;
}

// splitmix64. Fixed algorithm so generated workloads are identical across
// platforms and toolchains (std:: distributions are not portable).
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Modulo bias is negligible for the bounds used here and keeps the
    // stream layout obvious.
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    double unit() { return double(next() >> 11) * 0x1.0p-53; }

    // Uniform over [-128,127] excluding 0.
    std::int8_t nonzero_i8() {
        std::uint64_t r = below(255);  // 0..254
        int v = int(r) - 128;          // -128..126
        if (v >= 0) ++v;               // skip 0 -> -128..-1, 1..127
        return static_cast<std::int8_t>(v);
    }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        Rng r(a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2)));
        return r.next();
    }
};

inline std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ull) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace sgsim

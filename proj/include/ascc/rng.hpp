#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "ascc/bytes.hpp"

namespace ascc {

// Deterministic per-component random stream. mt19937_64 output is fully
// specified by the standard, so traces are reproducible across platforms.
// std::uniform_int_distribution is not portable; do the reductions by hand.
class Rng {
  public:
    explicit Rng(uint64_t seed) : seed_(seed), engine_(seed) {}

    // Derives an independent stream, e.g. Rng(seed).fork("device").
    Rng fork(std::string_view label) const {
        uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
        for (char c : label) {
            h ^= uint8_t(c);
            h *= 0x100000001b3ull;
        }
        return Rng(seed_ ^ h);
    }

    uint64_t u64() { return engine_(); }

    // Uniform in [0, bound) by rejection; bound must be nonzero.
    uint64_t below(uint64_t bound) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    int16_t i16() { return int16_t(engine_() & 0xffff); }

    Bytes bytes(size_t n) {
        Bytes out(n);
        uint64_t buf = 0;
        for (size_t i = 0; i < n; ++i) {
            if (i % 8 == 0) buf = engine_();
            out[i] = uint8_t(buf >> (8 * (i % 8)));
        }
        return out;
    }

  private:
    uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace ascc

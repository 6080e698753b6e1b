#pragma once

#include <cstddef>
#include <cstdint>

namespace ascc::crypto {

// GF(2^128) element in the GCM bit-reflected representation. hi carries the
// first eight bytes of the block (bit 0 of the spec = MSB of hi).
struct Gf128 {
    uint64_t hi = 0;
    uint64_t lo = 0;

    friend bool operator==(const Gf128&, const Gf128&) = default;

    Gf128 operator^(const Gf128& o) const { return {hi ^ o.hi, lo ^ o.lo}; }
    Gf128& operator^=(const Gf128& o) {
        hi ^= o.hi;
        lo ^= o.lo;
        return *this;
    }

    static Gf128 from_block(const uint8_t b[16]);
    void to_block(uint8_t out[16]) const;
};

// Carry-less multiply with reduction by x^128 + x^7 + x^2 + x + 1.
Gf128 gf128_mul(const Gf128& x, const Gf128& y);

// x^k by square-and-multiply.
Gf128 gf128_pow(const Gf128& x, uint64_t k);

// Incremental GHASH over 16-byte blocks: state = (state ^ block) * H.
class Ghash {
  public:
    explicit Ghash(const Gf128& h) : h_(h) {}

    void absorb_block(const uint8_t block[16]) { state_ = gf128_mul(state_ ^ Gf128::from_block(block), h_); }

    // Absorbs data zero-padded to a block boundary.
    void absorb_padded(const uint8_t* data, size_t len);

    // Absorbs many whole blocks, splitting the Horner recurrence across
    // OpenMP threads; bit-identical to repeated absorb_block.
    void absorb_blocks_parallel(const uint8_t* data, size_t nblocks);

    const Gf128& state() const { return state_; }
    Gf128& state() { return state_; }

  private:
    Gf128 h_;
    Gf128 state_{};
};

}  // namespace ascc::crypto

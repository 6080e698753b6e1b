#include "ascc/crypto/ghash.hpp"

#include <omp.h>

#include <cstring>
#include <vector>

namespace ascc::crypto {

Gf128 Gf128::from_block(const uint8_t b[16]) {
    Gf128 v;
    for (int i = 0; i < 8; ++i) v.hi = v.hi << 8 | b[i];
    for (int i = 8; i < 16; ++i) v.lo = v.lo << 8 | b[i];
    return v;
}

void Gf128::to_block(uint8_t out[16]) const {
    for (int i = 0; i < 8; ++i) out[i] = uint8_t(hi >> (56 - 8 * i));
    for (int i = 0; i < 8; ++i) out[8 + i] = uint8_t(lo >> (56 - 8 * i));
}

Gf128 gf128_mul(const Gf128& x, const Gf128& y) {
    // Right-shift algorithm from the GCM specification; branchless masks.
    Gf128 z{};
    Gf128 v = y;
    for (int i = 0; i < 128; ++i) {
        uint64_t bit = i < 64 ? (x.hi >> (63 - i)) & 1 : (x.lo >> (127 - i)) & 1;
        uint64_t mask = 0 - bit;
        z.hi ^= v.hi & mask;
        z.lo ^= v.lo & mask;
        uint64_t lsb_mask = 0 - (v.lo & 1);
        v.lo = v.lo >> 1 | v.hi << 63;
        v.hi >>= 1;
        v.hi ^= lsb_mask & 0xe100000000000000ull;
    }
    return z;
}

Gf128 gf128_pow(const Gf128& x, uint64_t k) {
    Gf128 one{0x8000000000000000ull, 0};  // the polynomial "1"
    Gf128 acc = one;
    Gf128 base = x;
    while (k != 0) {
        if (k & 1) acc = gf128_mul(acc, base);
        base = gf128_mul(base, base);
        k >>= 1;
    }
    return acc;
}

void Ghash::absorb_padded(const uint8_t* data, size_t len) {
    while (len >= 16) {
        absorb_block(data);
        data += 16;
        len -= 16;
    }
    if (len > 0) {
        uint8_t last[16] = {};
        std::memcpy(last, data, len);
        absorb_block(last);
    }
}

void Ghash::absorb_blocks_parallel(const uint8_t* data, size_t nblocks) {
    if (nblocks == 0) return;

    int threads = omp_get_max_threads();
    size_t per = (nblocks + threads - 1) / threads;
    size_t slices = (nblocks + per - 1) / per;

    // Slice t covers [t*per, end_t). H^(nblocks - end_t) lifts its Horner
    // partial to the global exponent; the prior state gets H^nblocks.
    std::vector<Gf128> partial(slices);
#pragma omp parallel for schedule(static)
    for (size_t t = 0; t < slices; ++t) {
        size_t begin = t * per;
        size_t end = begin + per < nblocks ? begin + per : nblocks;
        Gf128 z{};
        for (size_t j = begin; j < end; ++j) {
            z = gf128_mul(z ^ Gf128::from_block(data + 16 * j), h_);
        }
        partial[t] = gf128_mul(z, gf128_pow(h_, nblocks - end));
    }

    Gf128 acc = gf128_mul(state_, gf128_pow(h_, nblocks));
    for (size_t t = 0; t < slices; ++t) acc ^= partial[t];
    state_ = acc;
}

}  // namespace ascc::crypto

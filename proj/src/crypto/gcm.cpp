#include "ascc/crypto/gcm.hpp"

#include <omp.h>

#include <cstring>

#include "ascc/crypto/aes128.hpp"
#include "ascc/crypto/ghash.hpp"

namespace ascc::crypto {

namespace {

// Parallelize only above this size; below it thread startup dominates.
constexpr size_t kParallelThresholdBytes = 8 * 1024;

void store_counter(uint8_t block[16], const uint8_t nonce[12], uint32_t ctr) {
    std::memcpy(block, nonce, 12);
    block[12] = uint8_t(ctr >> 24);
    block[13] = uint8_t(ctr >> 16);
    block[14] = uint8_t(ctr >> 8);
    block[15] = uint8_t(ctr);
}

void ctr_xor_serial(const Aes128& aes, const uint8_t nonce[12], uint32_t ctr0, ByteView in,
                    uint8_t* out) {
    uint8_t block[16], ks[16];
    for (size_t off = 0; off < in.size(); off += 16) {
        store_counter(block, nonce, uint32_t(ctr0 + off / 16));
        aes.encrypt_block(block, ks);
        size_t n = in.size() - off < 16 ? in.size() - off : 16;
        for (size_t i = 0; i < n; ++i) out[off + i] = in[off + i] ^ ks[i];
    }
}

void ctr_xor_parallel(const Aes128& aes, const uint8_t nonce[12], uint32_t ctr0, ByteView in,
                      uint8_t* out) {
    size_t nblocks = (in.size() + 15) / 16;
#pragma omp parallel for schedule(static)
    for (size_t b = 0; b < nblocks; ++b) {
        uint8_t block[16], ks[16];
        store_counter(block, nonce, uint32_t(ctr0 + b));
        aes.encrypt_block(block, ks);
        size_t off = 16 * b;
        size_t n = in.size() - off < 16 ? in.size() - off : 16;
        for (size_t i = 0; i < n; ++i) out[off + i] = in[off + i] ^ ks[i];
    }
}

// GHASH(A, C) with the final length block, then tag = state ^ E_K(J0).
void compute_tag(const Aes128& aes, const Gf128& h, const uint8_t nonce[12], ByteView aad,
                 ByteView ct, bool parallel, uint8_t tag_out[16]) {
    Ghash ghash(h);
    ghash.absorb_padded(aad.data(), aad.size());

    size_t whole = ct.size() / 16;
    if (parallel && whole > 0) {
        ghash.absorb_blocks_parallel(ct.data(), whole);
        size_t rem = ct.size() - 16 * whole;
        if (rem > 0) ghash.absorb_padded(ct.data() + 16 * whole, rem);
    } else {
        ghash.absorb_padded(ct.data(), ct.size());
    }

    uint8_t lens[16];
    uint64_t abits = uint64_t(aad.size()) * 8, cbits = uint64_t(ct.size()) * 8;
    for (int i = 0; i < 8; ++i) lens[i] = uint8_t(abits >> (56 - 8 * i));
    for (int i = 0; i < 8; ++i) lens[8 + i] = uint8_t(cbits >> (56 - 8 * i));
    ghash.absorb_block(lens);

    uint8_t j0[16], ekj0[16];
    store_counter(j0, nonce, 1);
    aes.encrypt_block(j0, ekj0);

    uint8_t s[16];
    ghash.state().to_block(s);
    for (int i = 0; i < 16; ++i) tag_out[i] = s[i] ^ ekj0[i];
}

Gf128 hash_subkey(const Aes128& aes) {
    uint8_t zero[16] = {}, h[16];
    aes.encrypt_block(zero, h);
    return Gf128::from_block(h);
}

}  // namespace

GcmResult gcm_seal(const uint8_t key[16], const uint8_t nonce[12], ByteView aad, ByteView plaintext,
                   GcmEngine engine) {
    Aes128 aes(key);
    bool parallel = engine == GcmEngine::Parallel && plaintext.size() >= kParallelThresholdBytes;

    GcmResult res;
    res.ciphertext.resize(plaintext.size());
    if (parallel) {
        ctr_xor_parallel(aes, nonce, 2, plaintext, res.ciphertext.data());
    } else {
        ctr_xor_serial(aes, nonce, 2, plaintext, res.ciphertext.data());
    }
    compute_tag(aes, hash_subkey(aes), nonce, aad, res.ciphertext, parallel, res.tag.data());
    return res;
}

bool gcm_open(const uint8_t key[16], const uint8_t nonce[12], ByteView aad, ByteView ciphertext,
              const uint8_t tag[16], Bytes& plaintext_out, GcmEngine engine) {
    Aes128 aes(key);
    bool parallel = engine == GcmEngine::Parallel && ciphertext.size() >= kParallelThresholdBytes;

    uint8_t expected[16];
    compute_tag(aes, hash_subkey(aes), nonce, aad, ciphertext, parallel, expected);

    uint8_t diff = 0;
    for (int i = 0; i < 16; ++i) diff |= uint8_t(expected[i] ^ tag[i]);
    plaintext_out.clear();
    if (diff != 0) return false;

    plaintext_out.resize(ciphertext.size());
    if (parallel) {
        ctr_xor_parallel(aes, nonce, 2, ciphertext, plaintext_out.data());
    } else {
        ctr_xor_serial(aes, nonce, 2, ciphertext, plaintext_out.data());
    }
    return true;
}

}  // namespace ascc::crypto

#pragma once

#include <array>
#include <cstdint>

#include "ascc/bytes.hpp"

namespace ascc::crypto {

// AES-GCM-128 with 96-bit nonces and 128-bit tags.
//
// Two engines produce bit-identical output: Serial is the plain reference
// kept for testing; Parallel splits the CTR keystream and the GHASH Horner
// recurrence across OpenMP threads, the same way the device's crypto
// operator fans work out over its AI-CPU lanes.
enum class GcmEngine { Serial, Parallel };

struct GcmResult {
    Bytes ciphertext;
    std::array<uint8_t, 16> tag;
};

GcmResult gcm_seal(const uint8_t key[16], const uint8_t nonce[12], ByteView aad, ByteView plaintext,
                   GcmEngine engine = GcmEngine::Serial);

// Returns false on tag mismatch; `plaintext_out` is left empty in that case.
bool gcm_open(const uint8_t key[16], const uint8_t nonce[12], ByteView aad, ByteView ciphertext,
              const uint8_t tag[16], Bytes& plaintext_out, GcmEngine engine = GcmEngine::Serial);

}  // namespace ascc::crypto

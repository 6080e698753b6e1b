#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace ascc::crypto {

// AES-128 forward cipher (key schedule + block encrypt). GCM only needs the
// encrypt direction. Table-based software implementation; no constant-time
// claims beyond what the S-box lookup gives.
class Aes128 {
  public:
    static constexpr size_t kBlockBytes = 16;
    static constexpr size_t kKeyBytes = 16;

    explicit Aes128(const uint8_t key[kKeyBytes]);

    void encrypt_block(const uint8_t in[kBlockBytes], uint8_t out[kBlockBytes]) const;

  private:
    // 11 round keys, 4 words each.
    std::array<uint32_t, 44> round_keys_{};
};

}  // namespace ascc::crypto

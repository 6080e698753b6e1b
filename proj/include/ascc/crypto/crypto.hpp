#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "ascc/bytes.hpp"
#include "ascc/crypto/gcm.hpp"
#include "ascc/rng.hpp"

namespace ascc::crypto {

struct SymKey {
    std::array<uint8_t, 16> bytes{};

    friend bool operator==(const SymKey&, const SymKey&) = default;
    static SymKey random(Rng& rng);
    static SymKey from_hex(std::string_view hex);
    std::string hex() const { return to_hex(bytes); }
};

struct AuthTag {
    std::array<uint8_t, 16> bytes{};

    friend bool operator==(const AuthTag&, const AuthTag&) = default;
    std::string hex() const { return to_hex(bytes); }
};

struct Nonce {
    std::array<uint8_t, 12> bytes{};
};

struct FirmwareMeasurement {
    std::array<uint8_t, 32> digest{};

    friend bool operator==(const FirmwareMeasurement&, const FirmwareMeasurement&) = default;
    std::string hex() const { return to_hex(digest); }
};

struct PublicKey {
    std::array<uint8_t, 32> bytes{};
    friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

// X25519 key pair. The private scalar stays inside the owning party; nothing
// in the protocol messages or trace serializers reads it.
struct KeyPair {
    std::array<uint8_t, 32> private_scalar{};
    PublicKey public_key;
};

struct VendorSignature {
    std::array<uint8_t, 64> bytes{};
    friend bool operator==(const VendorSignature&, const VendorSignature&) = default;
};

struct SigningKeyPair {
    std::array<uint8_t, 64> private_key{};  // Ed25519 expanded secret
    PublicKey public_key;
};

struct InvalidGroupElement : std::runtime_error {
    InvalidGroupElement() : std::runtime_error("invalid Diffie-Hellman group element") {}
};

// Tag verification failed; the session must be treated as compromised.
struct AuthFailure : std::runtime_error {
    AuthFailure() : std::runtime_error("authenticated decryption failed") {}
};

// --- AEAD (AES-GCM-128) ----------------------------------------------------

inline constexpr size_t kTagBytes = 16;
inline constexpr size_t kNonceBytes = 12;
// Every sealed blob is nonce || ciphertext || tag.
inline constexpr size_t kSealOverhead = kNonceBytes + kTagBytes;

struct Sealed {
    Bytes ciphertext;
    AuthTag tag;
};

Sealed aead_seal(const SymKey& key, const Nonce& nonce, ByteView aad, ByteView plaintext,
                 GcmEngine engine = GcmEngine::Parallel);

std::optional<Bytes> aead_open(const SymKey& key, const Nonce& nonce, ByteView aad, ByteView ciphertext,
                               const AuthTag& tag, GcmEngine engine = GcmEngine::Parallel);

// Serialized form used in files and on the wire.
Bytes seal_blob(const SymKey& key, const Nonce& nonce, ByteView aad, ByteView plaintext,
                GcmEngine engine = GcmEngine::Parallel);
std::optional<Bytes> open_blob(const SymKey& key, ByteView aad, ByteView sealed,
                               GcmEngine engine = GcmEngine::Parallel);

// GMAC: AEAD with empty plaintext, the message as AAD and an all-zero nonce.
// MAC keys are always derived subkeys, never sealing keys, so the fixed nonce
// cannot collide with a sealing nonce under the same key.
AuthTag mac(const SymKey& mac_key, ByteView message);

// --- Blob binding conventions ----------------------------------------------

enum class BlobKind : uint8_t {
    Header = 0x01,
    Weights = 0x02,
    Binary = 0x03,
    Input = 0x04,
    Output = 0x05,
};

// AAD = kind byte || 32-bit big-endian index. Binds a ciphertext to its slot.
Bytes blob_aad(BlobKind kind, uint32_t index);

// Deterministic nonce stream: kind byte, three zero bytes, 64-bit BE counter.
class NonceSeq {
  public:
    explicit NonceSeq(BlobKind kind, uint64_t start = 0) : kind_(kind), counter_(start) {}
    Nonce next();

  private:
    BlobKind kind_;
    uint64_t counter_;
};

// --- Key derivation ----------------------------------------------------------

// Keyed-hash KDF: distinct measurements or contexts give independent keys.
SymKey derive_key(const SymKey& root, const FirmwareMeasurement& measurement, std::string_view context);

// MAC subkey for a session key (context "mac", zero salt).
SymKey mac_subkey(const SymKey& session_key);

// --- Diffie-Hellman ----------------------------------------------------------

KeyPair dh_keygen(Rng& rng);
// Throws InvalidGroupElement on degenerate peer points.
SymKey dh_derive(const KeyPair& own, const PublicKey& peer);

// --- Signatures (vendor / identity) -----------------------------------------

SigningKeyPair sign_keygen(Rng& rng);
SigningKeyPair sign_keygen_from_seed(ByteView seed32);
VendorSignature sign(const SigningKeyPair& signer, ByteView message);
bool verify(const PublicKey& signer_public, ByteView message, const VendorSignature& sig);

// --- Hashing -----------------------------------------------------------------

FirmwareMeasurement measure_firmware(ByteView firmware_image);
std::array<uint8_t, 32> sha256(ByteView data);

}  // namespace ascc::crypto

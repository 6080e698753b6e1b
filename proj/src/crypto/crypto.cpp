#include "ascc/crypto/crypto.hpp"

#include <sodium.h>

#include <cstring>
#include <mutex>

namespace ascc::crypto {

namespace {

void ensure_sodium() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        if (sodium_init() < 0) throw std::runtime_error("libsodium init failed");
    });
}

}  // namespace

SymKey SymKey::random(Rng& rng) {
    SymKey k;
    Bytes b = rng.bytes(k.bytes.size());
    std::memcpy(k.bytes.data(), b.data(), k.bytes.size());
    return k;
}

SymKey SymKey::from_hex(std::string_view hex) {
    Bytes b = ascc::from_hex(hex);
    if (b.size() != 16) throw std::runtime_error("SymKey must be 16 bytes");
    SymKey k;
    std::memcpy(k.bytes.data(), b.data(), 16);
    return k;
}

Sealed aead_seal(const SymKey& key, const Nonce& nonce, ByteView aad, ByteView plaintext,
                 GcmEngine engine) {
    GcmResult r = gcm_seal(key.bytes.data(), nonce.bytes.data(), aad, plaintext, engine);
    Sealed out;
    out.ciphertext = std::move(r.ciphertext);
    out.tag.bytes = r.tag;
    return out;
}

std::optional<Bytes> aead_open(const SymKey& key, const Nonce& nonce, ByteView aad, ByteView ciphertext,
                               const AuthTag& tag, GcmEngine engine) {
    Bytes pt;
    if (!gcm_open(key.bytes.data(), nonce.bytes.data(), aad, ciphertext, tag.bytes.data(), pt, engine)) {
        return std::nullopt;
    }
    return pt;
}

Bytes seal_blob(const SymKey& key, const Nonce& nonce, ByteView aad, ByteView plaintext,
                GcmEngine engine) {
    Sealed s = aead_seal(key, nonce, aad, plaintext, engine);
    Bytes out;
    out.reserve(plaintext.size() + kSealOverhead);
    append(out, nonce.bytes);
    append(out, s.ciphertext);
    append(out, s.tag.bytes);
    return out;
}

std::optional<Bytes> open_blob(const SymKey& key, ByteView aad, ByteView sealed, GcmEngine engine) {
    if (sealed.size() < kSealOverhead) return std::nullopt;
    Nonce nonce;
    std::memcpy(nonce.bytes.data(), sealed.data(), kNonceBytes);
    AuthTag tag;
    std::memcpy(tag.bytes.data(), sealed.data() + sealed.size() - kTagBytes, kTagBytes);
    ByteView ct = sealed.subspan(kNonceBytes, sealed.size() - kSealOverhead);
    return aead_open(key, nonce, aad, ct, tag, engine);
}

AuthTag mac(const SymKey& mac_key, ByteView message) {
    Nonce zero{};
    Sealed s = aead_seal(mac_key, zero, message, {}, GcmEngine::Serial);
    return s.tag;
}

Bytes blob_aad(BlobKind kind, uint32_t index) {
    Bytes aad;
    append_u8(aad, uint8_t(kind));
    append_u32be(aad, index);
    return aad;
}

Nonce NonceSeq::next() {
    Nonce n;
    n.bytes[0] = uint8_t(kind_);
    uint64_t c = counter_++;
    for (int i = 0; i < 8; ++i) n.bytes[4 + i] = uint8_t(c >> (56 - 8 * i));
    return n;
}

SymKey derive_key(const SymKey& root, const FirmwareMeasurement& measurement, std::string_view context) {
    ensure_sodium();
    if (context.empty()) throw std::runtime_error("derive_key: empty context");
    Bytes input;
    append(input, measurement.digest);
    append_u8(input, 0x00);
    append(input, ByteView(reinterpret_cast<const uint8_t*>(context.data()), context.size()));
    SymKey out;
    crypto_generichash(out.bytes.data(), out.bytes.size(), input.data(), input.size(),
                       root.bytes.data(), root.bytes.size());
    return out;
}

SymKey mac_subkey(const SymKey& session_key) {
    return derive_key(session_key, FirmwareMeasurement{}, "mac");
}

KeyPair dh_keygen(Rng& rng) {
    ensure_sodium();
    KeyPair kp;
    Bytes priv = rng.bytes(32);
    std::memcpy(kp.private_scalar.data(), priv.data(), 32);
    crypto_scalarmult_base(kp.public_key.bytes.data(), kp.private_scalar.data());
    return kp;
}

SymKey dh_derive(const KeyPair& own, const PublicKey& peer) {
    ensure_sodium();
    std::array<uint8_t, 32> shared{};
    if (crypto_scalarmult(shared.data(), own.private_scalar.data(), peer.bytes.data()) != 0) {
        throw InvalidGroupElement();
    }
    // crypto_scalarmult rejects outputs of small-order points as all-zero.
    uint8_t acc = 0;
    for (uint8_t b : shared) acc |= b;
    if (acc == 0) throw InvalidGroupElement();

    SymKey out;
    crypto_generichash(out.bytes.data(), out.bytes.size(), shared.data(), shared.size(), nullptr, 0);
    return out;
}

SigningKeyPair sign_keygen(Rng& rng) {
    Bytes seed = rng.bytes(32);
    return sign_keygen_from_seed(seed);
}

SigningKeyPair sign_keygen_from_seed(ByteView seed32) {
    ensure_sodium();
    if (seed32.size() != 32) throw std::runtime_error("signing seed must be 32 bytes");
    SigningKeyPair kp;
    crypto_sign_seed_keypair(kp.public_key.bytes.data(), kp.private_key.data(), seed32.data());
    return kp;
}

VendorSignature sign(const SigningKeyPair& signer, ByteView message) {
    ensure_sodium();
    VendorSignature sig;
    crypto_sign_detached(sig.bytes.data(), nullptr, message.data(), message.size(),
                         signer.private_key.data());
    return sig;
}

bool verify(const PublicKey& signer_public, ByteView message, const VendorSignature& sig) {
    ensure_sodium();
    return crypto_sign_verify_detached(sig.bytes.data(), message.data(), message.size(),
                                       signer_public.bytes.data()) == 0;
}

FirmwareMeasurement measure_firmware(ByteView firmware_image) {
    ensure_sodium();
    FirmwareMeasurement m;
    crypto_hash_sha256(m.digest.data(), firmware_image.data(), firmware_image.size());
    return m;
}

std::array<uint8_t, 32> sha256(ByteView data) {
    ensure_sodium();
    std::array<uint8_t, 32> out;
    crypto_hash_sha256(out.data(), data.data(), data.size());
    return out;
}

}  // namespace ascc::crypto

#include <openssl/evp.h>

#include <cstring>

#include "ascc/crypto/crypto.hpp"
#include "ascc/crypto/ghash.hpp"
#include "ascc/rng.hpp"
#include "doctest.h"

using namespace ascc;
using namespace ascc::crypto;

namespace {

// Independent oracle: OpenSSL EVP AES-128-GCM. Only test code links this.
struct OpensslGcm {
    Bytes ciphertext;
    std::array<uint8_t, 16> tag{};
};

OpensslGcm openssl_seal(ByteView key, ByteView nonce, ByteView aad, ByteView pt) {
    OpensslGcm out;
    EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
    REQUIRE(ctx != nullptr);
    REQUIRE(EVP_EncryptInit_ex(ctx, EVP_aes_128_gcm(), nullptr, key.data(), nonce.data()) == 1);
    int len = 0;
    if (!aad.empty()) {
        REQUIRE(EVP_EncryptUpdate(ctx, nullptr, &len, aad.data(), int(aad.size())) == 1);
    }
    out.ciphertext.resize(pt.size());
    if (!pt.empty()) {
        REQUIRE(EVP_EncryptUpdate(ctx, out.ciphertext.data(), &len, pt.data(), int(pt.size())) == 1);
    }
    uint8_t tail[16];
    REQUIRE(EVP_EncryptFinal_ex(ctx, tail, &len) == 1);
    REQUIRE(EVP_CIPHER_CTX_ctrl(ctx, EVP_CTRL_GCM_GET_TAG, 16, out.tag.data()) == 1);
    EVP_CIPHER_CTX_free(ctx);
    return out;
}

struct GcmKat {
    const char* key;
    const char* iv;
    const char* pt;
    const char* aad;
    const char* ct;
    const char* tag;
};

// AES-128 rows of the published GCM known-answer set (96-bit IVs).
constexpr GcmKat kKats[] = {
    {"00000000000000000000000000000000", "000000000000000000000000", "", "", "",
     "58e2fccefa7e3061367f1d57a4e7455a"},
    {"00000000000000000000000000000000", "000000000000000000000000",
     "00000000000000000000000000000000", "", "0388dace60b6a392f328c2b971b2fe78",
     "ab6e47d42cec13bdf53a67b21257bddf"},
    {"feffe9928665731c6d6a8f9467308308", "cafebabefacedbaddecaf888",
     "d9313225f88406e5a55909c5aff5269a86a7a9531534f7da2e4c303d8a318a721c3c0c95956809532fcf0e244"
     "9a6b525b16aedf5aa0de657ba637b391aafd255",
     "",
     "42831ec2217774244b7221b784d0d49ce3aa212f2c02a4e035c17e2329aca12e21d514b25466931c7d8f6a5aa"
     "c84aa051ba30b396a0aac973d58e091473f5985",
     "4d5c2af327cd64a62cf35abd2ba6fab4"},
    {"feffe9928665731c6d6a8f9467308308", "cafebabefacedbaddecaf888",
     "d9313225f88406e5a55909c5aff5269a86a7a9531534f7da2e4c303d8a318a721c3c0c95956809532fcf0e244"
     "9a6b525b16aedf5aa0de657ba637b39",
     "feedfacedeadbeeffeedfacedeadbeefabaddad2",
     "42831ec2217774244b7221b784d0d49ce3aa212f2c02a4e035c17e2329aca12e21d514b25466931c7d8f6a5aa"
     "c84aa051ba30b396a0aac973d58e091",
     "5bc94fbc3221a5db94fae95ae7121a47"},
};

SymKey key_from(const Bytes& b) {
    SymKey k;
    std::memcpy(k.bytes.data(), b.data(), 16);
    return k;
}

Nonce nonce_from(const Bytes& b) {
    Nonce n;
    std::memcpy(n.bytes.data(), b.data(), 12);
    return n;
}

}  // namespace

TEST_CASE("gcm matches the published known-answer vectors") {
    for (const auto& kat : kKats) {
        Bytes key = from_hex(kat.key), iv = from_hex(kat.iv), pt = from_hex(kat.pt);
        Bytes aad = from_hex(kat.aad), ct = from_hex(kat.ct), tag = from_hex(kat.tag);
        for (GcmEngine engine : {GcmEngine::Serial, GcmEngine::Parallel}) {
            Sealed s = aead_seal(key_from(key), nonce_from(iv), aad, pt, engine);
            CHECK(to_hex(s.ciphertext) == kat.ct);
            CHECK(s.tag.hex() == kat.tag);

            AuthTag t;
            std::memcpy(t.bytes.data(), tag.data(), 16);
            auto opened = aead_open(key_from(key), nonce_from(iv), aad, ct, t, engine);
            REQUIRE(opened.has_value());
            CHECK(*opened == pt);
        }
    }
}

TEST_CASE("gcm agrees with the OpenSSL oracle on random inputs") {
    Rng rng(0x5eed0001);
    for (int i = 0; i < 200; ++i) {
        Bytes key = rng.bytes(16), iv = rng.bytes(12);
        Bytes aad = rng.bytes(rng.below(48));
        Bytes pt = rng.bytes(rng.below(777));
        Sealed ours = aead_seal(key_from(key), nonce_from(iv), aad, pt, GcmEngine::Serial);
        OpensslGcm theirs = openssl_seal(key, iv, aad, pt);
        REQUIRE(ours.ciphertext == theirs.ciphertext);
        REQUIRE(ours.tag.bytes == theirs.tag);
    }
}

TEST_CASE("serial and parallel engines are bit-identical across sizes") {
    Rng rng(0x5eed0002);
    for (size_t size : {0u, 1u, 15u, 16u, 17u, 1024u, 8192u, 8193u, 70000u, 262144u}) {
        Bytes key = rng.bytes(16), iv = rng.bytes(12), aad = rng.bytes(20), pt = rng.bytes(size);
        Sealed a = aead_seal(key_from(key), nonce_from(iv), aad, pt, GcmEngine::Serial);
        Sealed b = aead_seal(key_from(key), nonce_from(iv), aad, pt, GcmEngine::Parallel);
        REQUIRE(a.ciphertext == b.ciphertext);
        REQUIRE(a.tag == b.tag);
    }
}

TEST_CASE("seal/open round-trip over 1000 random pairs") {
    Rng rng(0x5eed0003);
    for (int i = 0; i < 1000; ++i) {
        SymKey key = SymKey::random(rng);
        Nonce nonce = nonce_from(rng.bytes(12));
        Bytes aad = rng.bytes(8);
        Bytes pt = rng.bytes(rng.below(200));
        Sealed s = aead_seal(key, nonce, aad, pt);
        auto back = aead_open(key, nonce, aad, s.ciphertext, s.tag);
        REQUIRE(back.has_value());
        REQUIRE(*back == pt);
    }
}

TEST_CASE("empty plaintext and empty aad give empty ciphertext and a 16-byte tag") {
    SymKey key;
    Nonce nonce;
    Sealed s = aead_seal(key, nonce, {}, {});
    CHECK(s.ciphertext.empty());
    CHECK(s.tag.bytes.size() == 16);
}

TEST_CASE("any single-bit flip in ciphertext, tag or aad is rejected") {
    Rng rng(0x5eed0004);
    SymKey key = SymKey::random(rng);
    Nonce nonce = nonce_from(rng.bytes(12));
    Bytes aad = rng.bytes(24);
    Bytes pt = rng.bytes(96);
    Sealed s = aead_seal(key, nonce, aad, pt);

    size_t ct_bits = s.ciphertext.size() * 8;
    size_t tag_bits = 16 * 8;
    size_t aad_bits = aad.size() * 8;
    size_t total = ct_bits + tag_bits + aad_bits;
    REQUIRE(total >= 1000);

    for (size_t bit = 0; bit < total; ++bit) {
        Bytes ct = s.ciphertext;
        AuthTag tag = s.tag;
        Bytes a = aad;
        if (bit < ct_bits) {
            ct[bit / 8] ^= uint8_t(1u << (bit % 8));
        } else if (bit < ct_bits + tag_bits) {
            size_t b = bit - ct_bits;
            tag.bytes[b / 8] ^= uint8_t(1u << (b % 8));
        } else {
            size_t b = bit - ct_bits - tag_bits;
            a[b / 8] ^= uint8_t(1u << (b % 8));
        }
        CHECK_FALSE(aead_open(key, nonce, a, ct, tag).has_value());
    }
}

TEST_CASE("wrong key is rejected") {
    Rng rng(0x5eed0005);
    SymKey key = SymKey::random(rng);
    SymKey other = SymKey::random(rng);
    Nonce nonce;
    Sealed s = aead_seal(key, nonce, {}, to_bytes("payload"));
    CHECK_FALSE(aead_open(other, nonce, {}, s.ciphertext, s.tag).has_value());
}

TEST_CASE("sealed blob framing: nonce || ct || tag, 28-byte inflation") {
    Rng rng(0x5eed0006);
    SymKey key = SymKey::random(rng);
    NonceSeq seq(BlobKind::Weights);
    Bytes pt = rng.bytes(100);
    Bytes aad = blob_aad(BlobKind::Weights, 0);
    Bytes sealed = seal_blob(key, seq.next(), aad, pt);
    CHECK(sealed.size() == pt.size() + kSealOverhead);
    auto back = open_blob(key, aad, sealed);
    REQUIRE(back.has_value());
    CHECK(*back == pt);

    // Binding to the slot: a different index fails.
    CHECK_FALSE(open_blob(key, blob_aad(BlobKind::Weights, 1), sealed).has_value());
    CHECK_FALSE(open_blob(key, blob_aad(BlobKind::Binary, 0), sealed).has_value());
}

TEST_CASE("mac is deterministic and extension-sensitive") {
    Rng rng(0x5eed0007);
    for (int i = 0; i < 1000; ++i) {
        SymKey k = SymKey::random(rng);
        Bytes m = rng.bytes(1 + rng.below(64));
        AuthTag t1 = mac(k, m);
        AuthTag t2 = mac(k, m);
        CHECK(t1 == t2);
        Bytes ext = m;
        ext.push_back(0x00);
        CHECK(mac(k, ext).bytes != t1.bytes);
    }
}

TEST_CASE("mac golden values from the independent GMAC oracle") {
    SymKey k = SymKey::from_hex("000102030405060708090a0b0c0d0e0f");
    CHECK(mac(k, to_bytes("ascend mac golden")).hex() == "c721aebe40007c090aa426d924e92d8c");
    CHECK(mac(k, {}).hex() == "7346139595c0b41e497bbde365f42d0a");

    // PC list {0x10,0x20,0x30} serialized as 8-byte big-endian words.
    Bytes pc;
    for (uint64_t v : {0x10ull, 0x20ull, 0x30ull}) append_u64be(pc, v);
    CHECK(mac(k, pc).hex() == "388374c8745e66b5794d39aee6b0099b");
}

TEST_CASE("mac agrees with a live OpenSSL GMAC computation") {
    Rng rng(0x5eed0008);
    for (int i = 0; i < 100; ++i) {
        Bytes key = rng.bytes(16);
        Bytes msg = rng.bytes(rng.below(120));
        Bytes zero_iv(12, 0);
        OpensslGcm oracle = openssl_seal(key, zero_iv, msg, {});
        CHECK(mac(key_from(key), msg).bytes == oracle.tag);
    }
}

TEST_CASE("dh agreement over 100 random pairs") {
    Rng rng(0x5eed0009);
    for (int i = 0; i < 100; ++i) {
        KeyPair a = dh_keygen(rng);
        KeyPair b = dh_keygen(rng);
        SymKey ka = dh_derive(a, b.public_key);
        SymKey kb = dh_derive(b, a.public_key);
        CHECK(ka == kb);
    }
}

TEST_CASE("dh rejects the identity element") {
    Rng rng(0x5eed000a);
    KeyPair a = dh_keygen(rng);
    PublicKey identity{};  // all-zero point
    CHECK_THROWS_AS(dh_derive(a, identity), InvalidGroupElement);
}

TEST_CASE("distinct sessions derive distinct keys") {
    Rng rng(0x5eed000b);
    KeyPair fixed = dh_keygen(rng);
    KeyPair s1 = dh_keygen(rng);
    KeyPair s2 = dh_keygen(rng);
    CHECK(dh_derive(fixed, s1.public_key).bytes != dh_derive(fixed, s2.public_key).bytes);
}

TEST_CASE("derive_key separates measurements and contexts") {
    Rng rng(0x5eed000c);
    SymKey root = SymKey::random(rng);
    FirmwareMeasurement m1, m2;
    auto d1 = rng.bytes(32), d2 = rng.bytes(32);
    std::memcpy(m1.digest.data(), d1.data(), 32);
    std::memcpy(m2.digest.data(), d2.data(), 32);

    CHECK(derive_key(root, m1, "model") == derive_key(root, m1, "model"));
    CHECK(derive_key(root, m1, "model").bytes != derive_key(root, m1, "data").bytes);

    for (int i = 0; i < 100; ++i) {
        FirmwareMeasurement a, b;
        auto da = rng.bytes(32), db = rng.bytes(32);
        std::memcpy(a.digest.data(), da.data(), 32);
        std::memcpy(b.digest.data(), db.data(), 32);
        CHECK(derive_key(root, a, "x").bytes != derive_key(root, b, "x").bytes);
    }
}

TEST_CASE("signature verify accepts the signer and rejects everything else") {
    Rng rng(0x5eed000d);
    SigningKeyPair signer = sign_keygen(rng);
    SigningKeyPair other = sign_keygen(rng);
    Bytes msg = to_bytes("firmware image v1");
    VendorSignature sig = sign(signer, msg);

    CHECK(verify(signer.public_key, msg, sig));

    Bytes flipped = msg;
    flipped[0] ^= 0x01;
    CHECK_FALSE(verify(signer.public_key, flipped, sig));
    CHECK_FALSE(verify(other.public_key, msg, sig));

    VendorSignature bad = sig;
    bad.bytes[10] ^= 0x80;
    CHECK_FALSE(verify(signer.public_key, msg, bad));
}

TEST_CASE("firmware measurement is a deterministic function of the image") {
    Bytes img1 = to_bytes("fw v1"), img2 = to_bytes("fw v2");
    CHECK(measure_firmware(img1) == measure_firmware(img1));
    CHECK_FALSE(measure_firmware(img1) == measure_firmware(img2));
}

TEST_CASE("ghash parallel absorb equals serial") {
    Rng rng(0x5eed000e);
    Bytes hbytes = rng.bytes(16);
    Gf128 h = Gf128::from_block(hbytes.data());
    for (size_t nblocks : {1u, 2u, 3u, 17u, 64u, 1000u}) {
        Bytes data = rng.bytes(nblocks * 16);
        Ghash serial(h), parallel(h);
        for (size_t i = 0; i < nblocks; ++i) serial.absorb_block(data.data() + 16 * i);
        parallel.absorb_blocks_parallel(data.data(), nblocks);
        CHECK(serial.state() == parallel.state());
    }
}

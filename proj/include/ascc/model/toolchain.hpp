#pragma once

#include "ascc/crypto/crypto.hpp"
#include "ascc/model/graph.hpp"
#include "ascc/model/model_file.hpp"
#include "ascc/rng.hpp"

namespace ascc::model {

// MAC over the ordered plaintext operator binaries, each one length-prefixed
// with an 8-byte big-endian count so binary boundaries are unambiguous.
struct BinaryChain {
    crypto::AuthTag tag;

    friend bool operator==(const BinaryChain&, const BinaryChain&) = default;
};

// Clean-room compiler: one operator binary per layer, layer order preserved,
// deterministic for a fixed graph.
ModelFile compile(const OperatorGraph& graph);

// Replaces every layer name with 32 random bytes. The name->layer mapping
// stays with the provider; nothing functional reads the names.
ModelFile mask_names(ModelFile model, Rng& rng);

// Seals budget, weights and each binary independently under the model key.
// Blob AADs bind each ciphertext to its slot; nonces are the deterministic
// per-kind counters starting at zero.
std::pair<SealedModel, BinaryChain> seal(const ModelFile& model, const crypto::SymKey& k_m);

BinaryChain binary_chain(const ModelFile& model, const crypto::SymKey& k_m);

// Exact inverse of seal; test oracle only. The production decryption path is
// the device's attestation operator. Throws crypto::AuthFailure.
ModelFile unseal_for_test(const SealedModel& sealed, const crypto::SymKey& k_m);

}  // namespace ascc::model

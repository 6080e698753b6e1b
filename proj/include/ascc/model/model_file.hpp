#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ascc/bytes.hpp"
#include "ascc/model/isa.hpp"

namespace ascc::model {

inline constexpr uint32_t kUnlimitedBudget = 0xffffffff;
inline constexpr std::array<uint8_t, 4> kMagic = {'A', 'C', 'C', '1'};

enum class ComputeUnit : uint8_t { AiCore = 0, AiCpu = 1 };

// Where a task argument pointer lands, relative to the region the space maps
// to. The host resolves these against the region bases it allocated.
struct ArgSpec {
    Space space = Space::Workspace;
    uint64_t offset = 0;

    friend bool operator==(const ArgSpec&, const ArgSpec&) = default;
};

struct LayerEntry {
    std::array<uint8_t, 32> masked_name{};
    uint32_t binary_index = 0;
    uint64_t binary_offset = 0;  // into the binaries blob
    uint64_t binary_len = 0;     // plaintext len in ModelFile, sealed len in SealedModel
    ComputeUnit unit = ComputeUnit::AiCore;
    std::vector<ArgSpec> args;

    friend bool operator==(const LayerEntry&, const LayerEntry&) = default;
};

namespace detail {

// Shared plaintext-vs-sealed layout. The layer table stays plaintext either
// way; only the budget, weights and binaries blobs change under sealing.
struct ModelImage {
    uint16_t version = 1;
    Bytes budget_blob;  // plain: 4-byte LE count; sealed: AEAD blob
    std::vector<LayerEntry> layers;
    Bytes weights;
    Bytes binaries;
    std::vector<uint64_t> sizes;  // one per binary
    uint64_t input_bytes = 0;
    uint64_t workspace_bytes = 0;
    uint64_t output_bytes = 0;

    friend bool operator==(const ModelImage&, const ModelImage&) = default;
};

Bytes serialize_image(const ModelImage& img, bool sealed);
ModelImage parse_image(ByteView raw, bool expect_sealed);

}  // namespace detail

struct ModelFile {
    detail::ModelImage image;

    uint32_t budget() const;
    void set_budget(uint32_t budget);
    ByteView binary(size_t layer_idx) const;

    Bytes serialize() const { return detail::serialize_image(image, false); }
    static ModelFile parse(ByteView raw) { return ModelFile{detail::parse_image(raw, false)}; }

    friend bool operator==(const ModelFile&, const ModelFile&) = default;
};

struct SealedModel {
    detail::ModelImage image;

    ByteView sealed_binary(size_t layer_idx) const;

    Bytes serialize() const { return detail::serialize_image(image, true); }
    static SealedModel parse(ByteView raw) { return SealedModel{detail::parse_image(raw, true)}; }

    friend bool operator==(const SealedModel&, const SealedModel&) = default;
};

}  // namespace ascc::model

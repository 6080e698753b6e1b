#include "ascc/model/model_file.hpp"

#include <cstring>
#include <stdexcept>

namespace ascc::model {

namespace detail {

Bytes serialize_image(const ModelImage& img, bool sealed) {
    Bytes out;
    append(out, kMagic);
    append_u16le(out, img.version);
    append_u8(out, sealed ? 1 : 0);

    append_u32le(out, uint32_t(img.budget_blob.size()));
    append(out, img.budget_blob);

    append_u32le(out, uint32_t(img.layers.size()));
    for (const LayerEntry& l : img.layers) {
        append(out, l.masked_name);
        append_u32le(out, l.binary_index);
        append_u64le(out, l.binary_offset);
        append_u64le(out, l.binary_len);
        append_u8(out, uint8_t(l.unit));
        append_u8(out, uint8_t(l.args.size()));
        for (const ArgSpec& a : l.args) {
            append_u8(out, uint8_t(a.space));
            append_u64le(out, a.offset);
        }
    }

    append_u64le(out, img.weights.size());
    append(out, img.weights);
    append_u64le(out, img.binaries.size());
    append(out, img.binaries);

    append_u32le(out, uint32_t(img.sizes.size()));
    for (uint64_t s : img.sizes) append_u64le(out, s);

    append_u64le(out, img.input_bytes);
    append_u64le(out, img.workspace_bytes);
    append_u64le(out, img.output_bytes);
    return out;
}

ModelImage parse_image(ByteView raw, bool expect_sealed) {
    ByteReader r(raw);
    Bytes magic = r.bytes(4);
    if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
        throw std::runtime_error("bad model magic");
    }
    ModelImage img;
    img.version = r.u16le();
    uint8_t flags = r.u8();
    if ((flags & 1) != (expect_sealed ? 1 : 0)) {
        throw std::runtime_error(expect_sealed ? "expected a sealed model file"
                                               : "expected a plaintext model file");
    }

    img.budget_blob = r.bytes(r.u32le());

    uint32_t layer_count = r.u32le();
    img.layers.resize(layer_count);
    for (LayerEntry& l : img.layers) {
        Bytes name = r.bytes(32);
        std::memcpy(l.masked_name.data(), name.data(), 32);
        l.binary_index = r.u32le();
        l.binary_offset = r.u64le();
        l.binary_len = r.u64le();
        l.unit = ComputeUnit(r.u8());
        uint8_t argc = r.u8();
        l.args.resize(argc);
        for (ArgSpec& a : l.args) {
            a.space = Space(r.u8());
            a.offset = r.u64le();
        }
    }

    img.weights = r.bytes(r.u64le());
    img.binaries = r.bytes(r.u64le());

    uint32_t size_count = r.u32le();
    img.sizes.resize(size_count);
    for (uint64_t& s : img.sizes) s = r.u64le();

    img.input_bytes = r.u64le();
    img.workspace_bytes = r.u64le();
    img.output_bytes = r.u64le();
    if (!r.done()) throw std::runtime_error("trailing bytes after model file");

    // The sizes list and layer table must describe the actual blob extents.
    for (const LayerEntry& l : img.layers) {
        if (l.binary_index >= img.sizes.size()) throw std::runtime_error("binary index out of range");
        if (l.binary_len != img.sizes[l.binary_index]) {
            throw std::runtime_error("layer length disagrees with the sizes list");
        }
        if (l.binary_offset + l.binary_len > img.binaries.size()) {
            throw std::runtime_error("binary extent outside the binaries blob");
        }
    }
    return img;
}

}  // namespace detail

uint32_t ModelFile::budget() const {
    if (image.budget_blob.size() != 4) throw std::runtime_error("bad plaintext budget field");
    return uint32_t(image.budget_blob[0]) | uint32_t(image.budget_blob[1]) << 8 |
           uint32_t(image.budget_blob[2]) << 16 | uint32_t(image.budget_blob[3]) << 24;
}

void ModelFile::set_budget(uint32_t budget) {
    image.budget_blob.clear();
    append_u32le(image.budget_blob, budget);
}

ByteView ModelFile::binary(size_t layer_idx) const {
    const LayerEntry& l = image.layers.at(layer_idx);
    return ByteView(image.binaries).subspan(l.binary_offset, l.binary_len);
}

ByteView SealedModel::sealed_binary(size_t layer_idx) const {
    const LayerEntry& l = image.layers.at(layer_idx);
    return ByteView(image.binaries).subspan(l.binary_offset, l.binary_len);
}

}  // namespace ascc::model

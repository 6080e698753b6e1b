#include "ascc/model/toolchain.hpp"

#include <cstring>
#include <string>

namespace ascc::model {

using crypto::AuthFailure;
using crypto::BlobKind;
using crypto::NonceSeq;
using crypto::SymKey;

namespace {

const char* op_slug(Op op) {
    switch (op) {
        case Op::Matmul: return "matmul";
        case Op::Relu: return "relu";
        case Op::Add: return "add";
        case Op::Softmax: return "softmax";
        case Op::CopyIn: return "memcpy_h2d";
        case Op::CopyOut: return "memcpy_d2h";
        case Op::Halt: break;
    }
    return "halt";
}

std::array<uint8_t, 32> layer_name(Op op, size_t idx) {
    std::array<uint8_t, 32> name{};
    std::string s = "te_" + std::string(op_slug(op)) + "_" + std::to_string(idx + 1) + "_1";
    std::memcpy(name.data(), s.data(), std::min(s.size(), name.size()));
    return name;
}

}  // namespace

ModelFile compile(const OperatorGraph& graph) {
    GraphLayout layout = validate(graph);

    ModelFile model;
    model.set_budget(kUnlimitedBudget);
    model.image.input_bytes = layout.input_bytes;
    model.image.workspace_bytes = layout.workspace_bytes;
    model.image.output_bytes = layout.output_bytes;

    // Pack constants into the weights blob at their assigned offsets.
    uint64_t params_bytes = 0;
    for (size_t c = 0; c < graph.consts.size(); ++c) {
        size_t id = graph.inputs.size() + c;
        params_bytes = std::max(params_bytes, layout.offsets[id] + layout.shapes[id].bytes());
    }
    model.image.weights.assign(params_bytes, 0);
    for (size_t c = 0; c < graph.consts.size(); ++c) {
        size_t id = graph.inputs.size() + c;
        uint8_t* dst = model.image.weights.data() + layout.offsets[id];
        for (int16_t v : graph.consts[c].data) {
            *dst++ = uint8_t(uint16_t(v));
            *dst++ = uint8_t(uint16_t(v) >> 8);
        }
    }

    for (size_t li = 0; li < graph.layers.size(); ++li) {
        const LayerSpec& spec = graph.layers[li];
        LayerEntry entry;
        entry.masked_name = layer_name(spec.op, li);
        entry.binary_index = uint32_t(li);
        entry.unit = ComputeUnit::AiCore;

        Bytes code;
        auto arg_index = [&](uint32_t tensor_id) {
            entry.args.push_back(ArgSpec{layout.spaces[tensor_id], layout.offsets[tensor_id]});
            return uint32_t(entry.args.size() - 1);
        };

        switch (spec.op) {
            case Op::CopyIn: {
                for (size_t j = 0; j < graph.inputs.size(); ++j) {
                    Instruction ins;
                    ins.op = Op::CopyIn;
                    ins.dim0 = uint8_t(graph.inputs[j].rows);
                    ins.dim1 = uint8_t(graph.inputs[j].cols);
                    entry.args.push_back(ArgSpec{Space::Input, layout.input_blob_offsets[j]});
                    ins.arg0 = uint32_t(entry.args.size() - 1);
                    ins.arg1 = arg_index(uint32_t(j));
                    encode_instruction(code, ins);
                }
                break;
            }
            case Op::CopyOut: {
                Instruction ins;
                ins.op = Op::CopyOut;
                Shape s = layout.shapes[spec.inputs[0]];
                ins.dim0 = uint8_t(s.rows);
                ins.dim1 = uint8_t(s.cols);
                ins.arg0 = arg_index(spec.inputs[0]);
                entry.args.push_back(ArgSpec{Space::Output, 0});
                ins.arg1 = uint32_t(entry.args.size() - 1);
                encode_instruction(code, ins);
                break;
            }
            case Op::Matmul: {
                Instruction ins;
                ins.op = Op::Matmul;
                Shape a = layout.shapes[spec.inputs[0]];
                Shape b = layout.shapes[spec.inputs[1]];
                ins.dim0 = uint8_t(a.rows);
                ins.dim1 = uint8_t(a.cols);
                ins.dim2 = uint8_t(b.cols);
                ins.arg0 = arg_index(spec.inputs[0]);
                ins.arg1 = arg_index(spec.inputs[1]);
                ins.arg2 = arg_index(spec.output);
                encode_instruction(code, ins);
                break;
            }
            case Op::Add:
            case Op::Relu:
            case Op::Softmax: {
                Instruction ins;
                ins.op = spec.op;
                Shape s = layout.shapes[spec.inputs[0]];
                ins.dim0 = uint8_t(s.rows);
                ins.dim1 = uint8_t(s.cols);
                ins.arg0 = arg_index(spec.inputs[0]);
                if (spec.op == Op::Add) {
                    ins.arg1 = arg_index(spec.inputs[1]);
                    ins.arg2 = arg_index(spec.output);
                } else {
                    ins.arg1 = arg_index(spec.output);
                }
                encode_instruction(code, ins);
                break;
            }
            case Op::Halt:
                break;
        }
        encode_instruction(code, Instruction{});  // terminating halt

        entry.binary_offset = model.image.binaries.size();
        entry.binary_len = code.size();
        append(model.image.binaries, code);
        model.image.sizes.push_back(code.size());
        model.image.layers.push_back(std::move(entry));
    }

    return model;
}

ModelFile mask_names(ModelFile model, Rng& rng) {
    for (LayerEntry& l : model.image.layers) {
        Bytes masked = rng.bytes(l.masked_name.size());
        std::memcpy(l.masked_name.data(), masked.data(), l.masked_name.size());
    }
    return model;
}

BinaryChain binary_chain(const ModelFile& model, const SymKey& k_m) {
    Bytes chained;
    for (size_t i = 0; i < model.image.layers.size(); ++i) {
        ByteView bin = model.binary(i);
        append_u64be(chained, bin.size());
        append(chained, bin);
    }
    return BinaryChain{crypto::mac(crypto::mac_subkey(k_m), chained)};
}

std::pair<SealedModel, BinaryChain> seal(const ModelFile& model, const SymKey& k_m) {
    SealedModel sealed;
    sealed.image.version = model.image.version;
    sealed.image.input_bytes = model.image.input_bytes;
    sealed.image.workspace_bytes = model.image.workspace_bytes;
    sealed.image.output_bytes = model.image.output_bytes;
    sealed.image.weights.clear();

    NonceSeq header_nonce(BlobKind::Header);
    NonceSeq weights_nonce(BlobKind::Weights);
    NonceSeq binary_nonce(BlobKind::Binary);

    sealed.image.budget_blob = crypto::seal_blob(k_m, header_nonce.next(),
                                                 crypto::blob_aad(BlobKind::Header, 0),
                                                 model.image.budget_blob);
    sealed.image.weights = crypto::seal_blob(k_m, weights_nonce.next(),
                                             crypto::blob_aad(BlobKind::Weights, 0),
                                             model.image.weights);

    for (size_t i = 0; i < model.image.layers.size(); ++i) {
        Bytes blob = crypto::seal_blob(k_m, binary_nonce.next(),
                                       crypto::blob_aad(BlobKind::Binary, uint32_t(i)),
                                       model.binary(i));
        LayerEntry entry = model.image.layers[i];
        entry.binary_offset = sealed.image.binaries.size();
        entry.binary_len = blob.size();
        append(sealed.image.binaries, blob);
        sealed.image.sizes.push_back(blob.size());
        sealed.image.layers.push_back(std::move(entry));
    }

    return {std::move(sealed), binary_chain(model, k_m)};
}

ModelFile unseal_for_test(const SealedModel& sealed, const SymKey& k_m) {
    ModelFile model;
    model.image.version = sealed.image.version;
    model.image.input_bytes = sealed.image.input_bytes;
    model.image.workspace_bytes = sealed.image.workspace_bytes;
    model.image.output_bytes = sealed.image.output_bytes;

    auto open = [&](BlobKind kind, uint32_t index, ByteView blob) {
        auto pt = crypto::open_blob(k_m, crypto::blob_aad(kind, index), blob);
        if (!pt) throw AuthFailure();
        return *pt;
    };

    model.image.budget_blob = open(BlobKind::Header, 0, sealed.image.budget_blob);
    model.image.weights = open(BlobKind::Weights, 0, sealed.image.weights);

    for (size_t i = 0; i < sealed.image.layers.size(); ++i) {
        Bytes code = open(BlobKind::Binary, uint32_t(i), sealed.sealed_binary(i));
        LayerEntry entry = sealed.image.layers[i];
        entry.binary_offset = model.image.binaries.size();
        entry.binary_len = code.size();
        append(model.image.binaries, code);
        model.image.sizes.push_back(code.size());
        model.image.layers.push_back(std::move(entry));
    }
    return model;
}

}  // namespace ascc::model

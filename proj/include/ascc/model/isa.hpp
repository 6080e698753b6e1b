#pragma once

#include <cstdint>
#include <stdexcept>

#include "ascc/bytes.hpp"

namespace ascc::model {

// Toy AI-Core instruction set. One fixed-width 16-byte instruction per
// operation: opcode, three u8 shape params, three u32 argument-table indices.
// Tensors are row-major int16 little-endian; dimensions are capped at 255.
enum class Op : uint8_t {
    Matmul = 0x01,   // dims m,k,n      args a, b, out
    Relu = 0x02,     // dims r,c        args in, out
    Add = 0x03,      // dims r,c        args a, b, out
    Softmax = 0x04,  // dims r,c        args in, out (row-wise, fixed point)
    CopyIn = 0x05,   // dims r,c        args src(host input), dst(workspace)
    CopyOut = 0x06,  // dims r,c        args src, dst(output)
    Halt = 0xff,
};

// Spaces an argument pointer may live in, by role.
enum class Space : uint8_t {
    Input = 0,
    Workspace = 1,
    Output = 2,
    Params = 3,
};

struct Instruction {
    Op op = Op::Halt;
    uint8_t dim0 = 0, dim1 = 0, dim2 = 0;
    uint32_t arg0 = 0, arg1 = 0, arg2 = 0;
};

inline constexpr size_t kInstrBytes = 16;

inline void encode_instruction(Bytes& out, const Instruction& ins) {
    append_u8(out, uint8_t(ins.op));
    append_u8(out, ins.dim0);
    append_u8(out, ins.dim1);
    append_u8(out, ins.dim2);
    append_u32le(out, ins.arg0);
    append_u32le(out, ins.arg1);
    append_u32le(out, ins.arg2);
}

inline Instruction decode_instruction(ByteView raw) {
    if (raw.size() < kInstrBytes) throw std::runtime_error("truncated instruction");
    ByteReader r(raw);
    Instruction ins;
    ins.op = Op(r.u8());
    ins.dim0 = r.u8();
    ins.dim1 = r.u8();
    ins.dim2 = r.u8();
    ins.arg0 = r.u32le();
    ins.arg1 = r.u32le();
    ins.arg2 = r.u32le();
    return ins;
}

}  // namespace ascc::model

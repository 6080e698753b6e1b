#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ascc/bytes.hpp"
#include "ascc/model/isa.hpp"

namespace ascc::model {

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct CyclicGraph : std::runtime_error {
    explicit CyclicGraph(const std::string& what) : std::runtime_error(what) {}
};

struct Shape {
    uint16_t rows = 0;
    uint16_t cols = 0;

    friend bool operator==(const Shape&, const Shape&) = default;
    size_t elems() const { return size_t(rows) * cols; }
    size_t bytes() const { return elems() * 2; }
};

// Constant tensor baked into the model parameters.
struct ConstTensor {
    Shape shape;
    std::vector<int16_t> data;
};

struct LayerSpec {
    Op op;
    std::vector<uint32_t> inputs;  // tensor ids consumed
    uint32_t output = 0;           // tensor id produced (compute ops only)
};

// Tensor id namespace: external inputs get 0..n-1, constants follow, then one
// fresh id per compute layer output, in layer order.
struct OperatorGraph {
    std::vector<Shape> inputs;
    std::vector<ConstTensor> consts;
    std::vector<LayerSpec> layers;
};

// Byte layout the compiler assigns to a validated graph. Offsets are relative
// to the region base the id's space maps to.
struct GraphLayout {
    std::vector<Shape> shapes;           // by tensor id
    std::vector<Space> spaces;           // by tensor id (Workspace or Params)
    std::vector<uint64_t> offsets;       // by tensor id, within its space
    std::vector<uint64_t> input_blob_offsets;  // per external input, within the input blob
    uint64_t input_bytes = 0;
    uint64_t workspace_bytes = 0;
    uint64_t output_bytes = 0;
};

// Checks DAG order and shape compatibility; throws ShapeMismatch/CyclicGraph.
GraphLayout validate(const OperatorGraph& graph);

}  // namespace ascc::model

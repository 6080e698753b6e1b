#include "ascc/model/graph.hpp"

#include <string>

namespace ascc::model {

namespace {

uint64_t align16(uint64_t v) { return (v + 15) & ~uint64_t{15}; }

void check_dims(const Shape& s) {
    if (s.rows == 0 || s.cols == 0) throw ShapeMismatch("zero-sized tensor");
    if (s.rows > 255 || s.cols > 255) throw ShapeMismatch("dimension exceeds ISA limit of 255");
}

}  // namespace

GraphLayout validate(const OperatorGraph& graph) {
    GraphLayout layout;
    size_t n_inputs = graph.inputs.size();
    size_t n_consts = graph.consts.size();

    // Inputs and constants first; compute outputs appended as layers define them.
    for (const Shape& s : graph.inputs) {
        check_dims(s);
        layout.shapes.push_back(s);
        layout.spaces.push_back(Space::Workspace);
        layout.offsets.push_back(0);  // assigned below
    }
    for (const ConstTensor& c : graph.consts) {
        check_dims(c.shape);
        if (c.data.size() != c.shape.elems()) throw ShapeMismatch("const data does not match its shape");
        layout.shapes.push_back(c.shape);
        layout.spaces.push_back(Space::Params);
        layout.offsets.push_back(0);
    }

    std::vector<bool> defined(n_inputs + n_consts, false);
    for (size_t i = 0; i < n_consts; ++i) defined[n_inputs + i] = true;

    auto require_defined = [&](uint32_t id, size_t layer_idx) {
        if (id >= defined.size() || !defined[id]) {
            throw CyclicGraph("layer " + std::to_string(layer_idx) + " consumes tensor " +
                              std::to_string(id) + " before it is defined");
        }
    };

    bool saw_copy_out = false;
    for (size_t li = 0; li < graph.layers.size(); ++li) {
        const LayerSpec& layer = graph.layers[li];
        if (saw_copy_out) throw CyclicGraph("no layer may follow the copy-out layer");

        auto define_output = [&](const Shape& s) {
            check_dims(s);
            if (layer.output != layout.shapes.size()) {
                throw CyclicGraph("layer " + std::to_string(li) + " must define the next fresh id");
            }
            layout.shapes.push_back(s);
            layout.spaces.push_back(Space::Workspace);
            layout.offsets.push_back(0);
            defined.push_back(true);
        };

        switch (layer.op) {
            case Op::CopyIn: {
                if (li != 0) throw CyclicGraph("copy-in must be the first layer");
                if (!layer.inputs.empty()) throw ShapeMismatch("copy-in takes no tensor inputs");
                for (size_t j = 0; j < n_inputs; ++j) defined[j] = true;
                break;
            }
            case Op::CopyOut: {
                if (layer.inputs.size() != 1) throw ShapeMismatch("copy-out takes one input");
                require_defined(layer.inputs[0], li);
                saw_copy_out = true;
                layout.output_bytes = layout.shapes[layer.inputs[0]].bytes();
                break;
            }
            case Op::Matmul: {
                if (layer.inputs.size() != 2) throw ShapeMismatch("matmul takes two inputs");
                require_defined(layer.inputs[0], li);
                require_defined(layer.inputs[1], li);
                Shape a = layout.shapes[layer.inputs[0]];
                Shape b = layout.shapes[layer.inputs[1]];
                if (a.cols != b.rows) {
                    throw ShapeMismatch("matmul shapes (" + std::to_string(a.rows) + "," +
                                        std::to_string(a.cols) + ")x(" + std::to_string(b.rows) + "," +
                                        std::to_string(b.cols) + ") are incompatible");
                }
                define_output(Shape{a.rows, b.cols});
                break;
            }
            case Op::Add: {
                if (layer.inputs.size() != 2) throw ShapeMismatch("add takes two inputs");
                require_defined(layer.inputs[0], li);
                require_defined(layer.inputs[1], li);
                if (!(layout.shapes[layer.inputs[0]] == layout.shapes[layer.inputs[1]])) {
                    throw ShapeMismatch("add operands differ in shape");
                }
                define_output(layout.shapes[layer.inputs[0]]);
                break;
            }
            case Op::Relu:
            case Op::Softmax: {
                if (layer.inputs.size() != 1) throw ShapeMismatch("unary op takes one input");
                require_defined(layer.inputs[0], li);
                define_output(layout.shapes[layer.inputs[0]]);
                break;
            }
            case Op::Halt:
                throw ShapeMismatch("halt is not a layer operation");
        }
    }

    if (!graph.inputs.empty()) {
        bool has_copy_in = !graph.layers.empty() && graph.layers[0].op == Op::CopyIn;
        if (!has_copy_in) throw CyclicGraph("graph with external inputs needs a copy-in layer");
    }

    // Workspace offsets for inputs and compute outputs; params offsets for consts.
    uint64_t ws = 0, params = 0;
    for (size_t id = 0; id < layout.shapes.size(); ++id) {
        if (layout.spaces[id] == Space::Workspace) {
            layout.offsets[id] = ws;
            ws += align16(layout.shapes[id].bytes());
        } else {
            layout.offsets[id] = params;
            params += align16(layout.shapes[id].bytes());
        }
    }
    layout.workspace_bytes = ws;

    uint64_t in_off = 0;
    for (size_t j = 0; j < n_inputs; ++j) {
        layout.input_blob_offsets.push_back(in_off);
        in_off += align16(graph.inputs[j].bytes());
    }
    layout.input_bytes = in_off;

    return layout;
}

}  // namespace ascc::model

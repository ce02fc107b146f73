#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "fourierhead/tensor.hpp"

namespace fourierhead {

enum class OpKind : std::uint8_t {
    leaf,
    matmul,
    add,
    sub,
    elementwise_mul,
    scalar_mul,
    tanh_op,
    sin_op,
    cos_op,
    sum,
    mean,
    square,
    broadcast_add_row,
};

const char* op_name(OpKind op);

// Handle to a value recorded on a Tape.
struct ValueId {
    std::size_t index = static_cast<std::size_t>(-1);
    bool operator==(const ValueId&) const = default;
};

// Reverse-mode autodiff tape over Tensors. Operations evaluate eagerly and
// record one node each; backward() replays the tape in reverse. Nodes only
// ever reference earlier nodes, so the tape is a DAG in topological order.
//
// A Tape is single-threaded; independent tapes may run on separate threads.
class Tape {
public:
    ValueId leaf(Tensor value);

    ValueId matmul(ValueId a, ValueId b);
    ValueId add(ValueId a, ValueId b);
    ValueId sub(ValueId a, ValueId b);
    ValueId elementwise_mul(ValueId a, ValueId b);
    ValueId scalar_mul(ValueId a, double factor);
    ValueId tanh(ValueId a);
    ValueId sin(ValueId a);
    ValueId cos(ValueId a);
    ValueId sum(ValueId a);   // 1x1
    ValueId mean(ValueId a);  // 1x1
    ValueId square(ValueId a);
    // matrix [m x n] + row [1 x n], broadcast over rows
    ValueId broadcast_add_row(ValueId matrix, ValueId row);

    const Tensor& value(ValueId id) const;
    std::size_t node_count() const { return nodes_.size(); }

    // d loss / d node for every node on the tape, indexed like the tape.
    // `loss` must hold a 1x1 tensor. Accumulation order is fixed, so results
    // are bitwise reproducible for identical tapes.
    std::vector<Tensor> backward(ValueId loss) const;

private:
    static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

    struct Node {
        OpKind op = OpKind::leaf;
        Tensor value;
        std::array<std::size_t, 2> parents{kNoParent, kNoParent};
        double scalar = 0.0; // factor for scalar_mul
    };

    ValueId push(Node node);
    const Node& node(ValueId id) const;
    ValueId unary(OpKind op, ValueId a, Tensor value);
    ValueId binary(OpKind op, ValueId a, ValueId b, Tensor value);
    

    std::vector<Node> nodes_;
};

} // namespace fourierhead

#include "fourierhead/tape.hpp"

#include <cmath>
#include <utility>

#include "fourierhead/errors.hpp"

namespace fourierhead {

namespace {

[[noreturn]] void throw_shape_mismatch(OpKind op, const Tensor& a, const Tensor& b) {
    throw ShapeError(std::string(op_name(op)) + ": incompatible shapes " + a.shape_str() +
                     " and " + b.shape_str());
}

} // namespace

const char* op_name(OpKind op) {
    switch (op) {
        case OpKind::leaf: return "leaf";
        case OpKind::matmul: return "matmul";
        case OpKind::add: return "add";
        case OpKind::sub: return "sub";
        case OpKind::elementwise_mul: return "elementwise-mul";
        case OpKind::scalar_mul: return "scalar-mul";
        case OpKind::tanh_op: return "tanh";
        case OpKind::sin_op: return "sin";
        case OpKind::cos_op: return "cos";
        case OpKind::sum: return "sum";
        case OpKind::mean: return "mean";
        case OpKind::square: return "square";
        case OpKind::broadcast_add_row: return "broadcast-add-row";
    }
    return "unknown";
}

ValueId Tape::push(Node node) {
    nodes_.push_back(std::move(node));
    return ValueId{nodes_.size() - 1};
}

const Tape::Node& Tape::node(ValueId id) const {
    if (id.index >= nodes_.size()) {
        throw std::out_of_range("Tape: value id " + std::to_string(id.index) +
                                " not on this tape");
    }
    return nodes_[id.index];
}

const Tensor& Tape::value(ValueId id) const {
    return node(id).value;
}

ValueId Tape::leaf(Tensor value) {
    Node n;
    n.op = OpKind::leaf;
    n.value = std::move(value);
    return push(std::move(n));
}

ValueId Tape::unary(OpKind op, ValueId a, Tensor value) {
    Node n;
    n.op = op;
    n.value = std::move(value);
    n.parents[0] = a.index;
    return push(std::move(n));
}

ValueId Tape::binary(OpKind op, ValueId a, ValueId b, Tensor value) {
    Node n;
    n.op = op;
    n.value = std::move(value);
    n.parents[0] = a.index;
    n.parents[1] = b.index;
    return push(std::move(n));
}

ValueId Tape::matmul(ValueId a, ValueId b) {
    const Tensor& ta = value(a);
    const Tensor& tb = value(b);
    if (ta.cols != tb.rows) throw_shape_mismatch(OpKind::matmul, ta, tb);
    Tensor out(ta.rows, tb.cols);
    matmul_into(ta, tb, out);
    return binary(OpKind::matmul, a, b, std::move(out));
}

ValueId Tape::add(ValueId a, ValueId b) {
    const Tensor& ta = value(a);
    const Tensor& tb = value(b);
    if (!ta.same_shape(tb)) throw_shape_mismatch(OpKind::add, ta, tb);
    Tensor out = ta;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += tb.data[i];
    return binary(OpKind::add, a, b, std::move(out));
}

ValueId Tape::sub(ValueId a, ValueId b) {
    const Tensor& ta = value(a);
    const Tensor& tb = value(b);
    if (!ta.same_shape(tb)) throw_shape_mismatch(OpKind::sub, ta, tb);
    Tensor out = ta;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] -= tb.data[i];
    return binary(OpKind::sub, a, b, std::move(out));
}

ValueId Tape::elementwise_mul(ValueId a, ValueId b) {
    const Tensor& ta = value(a);
    const Tensor& tb = value(b);
    if (!ta.same_shape(tb)) throw_shape_mismatch(OpKind::elementwise_mul, ta, tb);
    Tensor out = ta;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] *= tb.data[i];
    return binary(OpKind::elementwise_mul, a, b, std::move(out));
}

ValueId Tape::scalar_mul(ValueId a, double factor) {
    const Tensor& ta = value(a);
    Tensor out = ta;
    for (double& v : out.data) v *= factor;
    ValueId id = unary(OpKind::scalar_mul, a, std::move(out));
    nodes_.back().scalar = factor;
    return id;
}

ValueId Tape::tanh(ValueId a) {
    Tensor out = value(a);
    for (double& v : out.data) v = std::tanh(v);
    return unary(OpKind::tanh_op, a, std::move(out));
}

ValueId Tape::sin(ValueId a) {
    Tensor out = value(a);
    for (double& v : out.data) v = std::sin(v);
    return unary(OpKind::sin_op, a, std::move(out));
}

ValueId Tape::cos(ValueId a) {
    Tensor out = value(a);
    for (double& v : out.data) v = std::cos(v);
    return unary(OpKind::cos_op, a, std::move(out));
}

ValueId Tape::sum(ValueId a) {
    const Tensor& ta = value(a);
    double total = 0.0;
    for (double v : ta.data) total += v; // left-to-right
    return unary(OpKind::sum, a, Tensor(1, 1, {total}));
}

ValueId Tape::mean(ValueId a) {
    const Tensor& ta = value(a);
    if (ta.data.empty()) {
        throw ShapeError("mean: empty tensor " + ta.shape_str());
    }
    double total = 0.0;
    for (double v : ta.data) total += v;
    return unary(OpKind::mean, a, Tensor(1, 1, {total / static_cast<double>(ta.data.size())}));
}

ValueId Tape::square(ValueId a) {
    Tensor out = value(a);
    for (double& v : out.data) v *= v;
    return unary(OpKind::square, a, std::move(out));
}

ValueId Tape::broadcast_add_row(ValueId matrix, ValueId row) {
    const Tensor& tm = value(matrix);
    const Tensor& tr = value(row);
    if (tr.rows != 1 || tr.cols != tm.cols) throw_shape_mismatch(OpKind::broadcast_add_row, tm, tr);
    Tensor out = tm;
    for (int i = 0; i < out.rows; ++i) {
        for (int j = 0; j < out.cols; ++j) out.at(i, j) += tr.data[j];
    }
    return binary(OpKind::broadcast_add_row, matrix, row, std::move(out));
}

std::vector<Tensor> Tape::backward(ValueId loss) const {
    const Node& loss_node = node(loss);
    if (loss_node.value.rows != 1 || loss_node.value.cols != 1) {
        throw ShapeError("backward: loss must be 1x1, got " + loss_node.value.shape_str());
    }

    std::vector<Tensor> grads;
    grads.reserve(nodes_.size());
    for (const Node& n : nodes_) {
        grads.emplace_back(n.value.rows, n.value.cols);
    }
    grads[loss.index].data[0] = 1.0;

    // Nodes recorded after the loss cannot influence it; their gradient is 0.
    for (std::size_t i = loss.index + 1; i-- > 0;) {
        const Node& n = nodes_[i];
        const Tensor& g = grads[i];
        switch (n.op) {
            case OpKind::leaf:
                break;
            case OpKind::matmul: {
                const Tensor& ta = nodes_[n.parents[0]].value;
                const Tensor& tb = nodes_[n.parents[1]].value;
                matmul_nt_acc(g, tb, grads[n.parents[0]]); // dA += g * B^T
                matmul_tn_acc(ta, g, grads[n.parents[1]]); // dB += A^T * g
                break;
            }
            case OpKind::add: {
                Tensor& ga = grads[n.parents[0]];
                Tensor& gb = grads[n.parents[1]];
                for (std::size_t k = 0; k < g.data.size(); ++k) {
                    ga.data[k] += g.data[k];
                    gb.data[k] += g.data[k];
                }
                break;
            }
            case OpKind::sub: {
                Tensor& ga = grads[n.parents[0]];
                Tensor& gb = grads[n.parents[1]];
                for (std::size_t k = 0; k < g.data.size(); ++k) {
                    ga.data[k] += g.data[k];
                    gb.data[k] -= g.data[k];
                }
                break;
            }
            case OpKind::elementwise_mul: {
                const Tensor& ta = nodes_[n.parents[0]].value;
                const Tensor& tb = nodes_[n.parents[1]].value;
                Tensor& ga = grads[n.parents[0]];
                Tensor& gb = grads[n.parents[1]];
                for (std::size_t k = 0; k < g.data.size(); ++k) {
                    ga.data[k] += g.data[k] * tb.data[k];
                    gb.data[k] += g.data[k] * ta.data[k];
                }
                break;
            }
            case OpKind::scalar_mul: {
                Tensor& ga = grads[n.parents[0]];
                for (std::size_t k = 0; k < g.data.size(); ++k) {
                    ga.data[k] += n.scalar * g.data[k];
                }
                break;
            }
            case OpKind::tanh_op: {
                // d tanh = 1 - tanh^2, from the cached output
                Tensor& ga = grads[n.parents[0]];
                for (std::size_t k = 0; k < g.data.size(); ++k) {
                    ga.data[k] += g.data[k] * (1.0 - n.value.data[k] * n.value.data[k]);
                }
                break;
            }
            case OpKind::sin_op: {
                const Tensor& ta = nodes_[n.parents[0]].value;
                Tensor& ga = grads[n.parents[0]];
                for (std::size_t k = 0; k < g.data.size(); ++k) {
                    ga.data[k] += g.data[k] * std::cos(ta.data[k]);
                }
                break;
            }
            case OpKind::cos_op: {
                const Tensor& ta = nodes_[n.parents[0]].value;
                Tensor& ga = grads[n.parents[0]];
                for (std::size_t k = 0; k < g.data.size(); ++k) {
                    ga.data[k] -= g.data[k] * std::sin(ta.data[k]);
                }
                break;
            }
            case OpKind::sum: {
                Tensor& ga = grads[n.parents[0]];
                const double gv = g.data[0];
                for (double& v : ga.data) v += gv;
                break;
            }
            case OpKind::mean: {
                Tensor& ga = grads[n.parents[0]];
                const double gv = g.data[0] / static_cast<double>(ga.data.size());
                for (double& v : ga.data) v += gv;
                break;
            }
            case OpKind::square: {
                const Tensor& ta = nodes_[n.parents[0]].value;
                Tensor& ga = grads[n.parents[0]];
                for (std::size_t k = 0; k < g.data.size(); ++k) {
                    ga.data[k] += g.data[k] * 2.0 * ta.data[k];
                }
                break;
            }
            case OpKind::broadcast_add_row: {
                Tensor& gm = grads[n.parents[0]];
                Tensor& gr = grads[n.parents[1]];
                for (std::size_t k = 0; k < g.data.size(); ++k) gm.data[k] += g.data[k];
                for (int r = 0; r < g.rows; ++r) {
                    for (int c = 0; c < g.cols; ++c) gr.data[c] += g.at(r, c);
                }
                break;
            }
        }
    }
    return grads;
}

} // namespace fourierhead

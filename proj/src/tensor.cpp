#include "fourierhead/tensor.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "fourierhead/errors.hpp"

namespace fourierhead {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajorMatrix>;
using MutMap = Eigen::Map<RowMajorMatrix>;

ConstMap map_of(const Tensor& t) {
    return ConstMap(t.data.data(), t.rows, t.cols);
}

MutMap map_of(Tensor& t) {
    return MutMap(t.data.data(), t.rows, t.cols);
}

std::size_t checked_area(int rows, int cols) {
    if (rows < 0 || cols < 0) {
        throw ShapeError("Tensor: negative dimension " + std::to_string(rows) + "x" +
                         std::to_string(cols));
    }
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
}

} // namespace

Tensor::Tensor(int rows_, int cols_) : rows(rows_), cols(cols_), data(checked_area(rows_, cols_)) {}

Tensor::Tensor(int rows_, int cols_, std::vector<double> values)
    : rows(rows_), cols(cols_), data(std::move(values)) {
    if (data.size() != checked_area(rows_, cols_)) {
        throw ShapeError("Tensor: " + std::to_string(data.size()) + " values do not fill " +
                         shape_str());
    }
}

Tensor Tensor::zeros(int rows, int cols) {
    return Tensor(rows, cols);
}

Tensor Tensor::full(int rows, int cols, double value) {
    Tensor t(rows, cols);
    for (double& v : t.data) v = value;
    return t;
}

Tensor Tensor::identity(int n) {
    Tensor t(n, n);
    for (int i = 0; i < n; ++i) t.at(i, i) = 1.0;
    return t;
}

Tensor Tensor::row_vector(std::vector<double> values) {
    const int n = static_cast<int>(values.size());
    return Tensor(1, n, std::move(values));
}

Tensor Tensor::column_vector(std::vector<double> values) {
    const int n = static_cast<int>(values.size());
    return Tensor(n, 1, std::move(values));
}

bool Tensor::all_finite() const {
    for (double v : data) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

std::string Tensor::shape_str() const {
    return std::to_string(rows) + "x" + std::to_string(cols);
}

bool bitwise_equal(const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) return false;
    if (a.data.empty()) return true;
    return std::memcmp(a.data.data(), b.data.data(), a.data.size() * sizeof(double)) == 0;
}

void matmul_into(const Tensor& a, const Tensor& b, Tensor& out) {
    map_of(out).noalias() = map_of(a) * map_of(b);
}

void matmul_nt_acc(const Tensor& a, const Tensor& b, Tensor& out) {
    map_of(out).noalias() += map_of(a) * map_of(b).transpose();
}

void matmul_tn_acc(const Tensor& a, const Tensor& b, Tensor& out) {
    map_of(out).noalias() += map_of(a).transpose() * map_of(b);
}

} // namespace fourierhead

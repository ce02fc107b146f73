#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fourierhead {

// Dense 2-D array of 64-bit floats, row-major.
struct Tensor {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Tensor() = default;
    Tensor(int rows, int cols);                             // zero-filled
    Tensor(int rows, int cols, std::vector<double> values); // checks length

    static Tensor zeros(int rows, int cols);
    static Tensor full(int rows, int cols, double value);
    static Tensor identity(int n);
    static Tensor row_vector(std::vector<double> values);    // 1 x n
    static Tensor column_vector(std::vector<double> values); // n x 1

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    std::size_t size() const { return data.size(); }
    bool same_shape(const Tensor& other) const { return rows == other.rows && cols == other.cols; }
    bool all_finite() const;
    std::string shape_str() const; // e.g. "3x4"
};

bool bitwise_equal(const Tensor& a, const Tensor& b);

// GEMM kernels over row-major buffers. `_acc` variants accumulate into `out`,
// the others overwrite it. Shapes are validated by the caller.
void matmul_into(const Tensor& a, const Tensor& b, Tensor& out);    // out = a * b
void matmul_nt_acc(const Tensor& a, const Tensor& b, Tensor& out);  // out += a * b^T
void matmul_tn_acc(const Tensor& a, const Tensor& b, Tensor& out);  // out += a^T * b

} // namespace fourierhead

// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace glgcn {

/// Thrown when operand shapes do not line up.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Row-major dense matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool all_finite() const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Square CSR matrix. Column indices are strictly increasing within a row and
/// no explicit zeros are stored.
class SparseMatrix {
public:
    SparseMatrix() : row_offsets_(1, 0) {}
    explicit SparseMatrix(std::size_t dim) : dim_(dim), row_offsets_(dim + 1, 0) {}

    /// Builds from the raw CSR arrays; throws std::invalid_argument if they
    /// violate the CSR invariants.
    SparseMatrix(std::size_t dim, std::vector<std::size_t> row_offsets,
                 std::vector<std::size_t> col_indices, std::vector<double> values);

    /// Duplicate coordinates are summed; entries that end up zero are dropped.
    static SparseMatrix from_triplets(std::size_t dim, std::vector<Triplet> triplets);
    static SparseMatrix identity(std::size_t n);
    /// Exact zeros are skipped. Throws if `dense` is not square.
    static SparseMatrix from_dense(const DenseMatrix& dense);

    std::size_t dim() const { return dim_; }
    std::size_t nnz() const { return values_.size(); }

    const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
    const std::vector<std::size_t>& col_indices() const { return col_indices_; }
    const std::vector<double>& values() const { return values_; }

    std::span<const std::size_t> row_cols(std::size_t r) const {
        return {col_indices_.data() + row_offsets_[r], row_offsets_[r + 1] - row_offsets_[r]};
    }
    std::span<const double> row_values(std::size_t r) const {
        return {values_.data() + row_offsets_[r], row_offsets_[r + 1] - row_offsets_[r]};
    }

    /// Stored value at (r, c), or 0.
    double at(std::size_t r, std::size_t c) const;
    bool is_symmetric(double tol = 0.0) const;
    std::vector<double> row_sums() const;

    DenseMatrix densify() const;
    SparseMatrix transpose() const;
    /// Multiplies every stored value by `factor` (must be nonzero).
    SparseMatrix scaled(double factor) const;
    /// P A P^T for the node relabeling old index i -> perm[i].
    SparseMatrix permuted(std::span<const std::size_t> perm) const;

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<std::size_t> row_offsets_;
    std::vector<std::size_t> col_indices_;
    std::vector<double> values_;
};

/// a * b with the i-k-j loop order fixed; zero entries of `a` are skipped.
DenseMatrix matmul_dense(const DenseMatrix& a, const DenseMatrix& b);
/// a^T * b without materialising the transpose.
DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b);
/// a * b^T without materialising the transpose.
DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix spmm(const SparseMatrix& s, const DenseMatrix& x);
/// s^T * x.
DenseMatrix spmm_transposed(const SparseMatrix& s, const DenseMatrix& x);

struct ReluResult {
    DenseMatrix output;
    std::vector<std::uint8_t> mask;  // 1 where the input was strictly positive
};

ReluResult relu(const DenseMatrix& x);

/// Row-wise softmax with the row max subtracted first.
DenseMatrix softmax_rows(const DenseMatrix& x);

/// Uniform entries in [-sqrt(6/(rows+cols)), sqrt(6/(rows+cols))].
DenseMatrix glorot_init(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
DenseMatrix glorot_init(std::size_t rows, std::size_t cols, std::uint64_t seed);

DenseMatrix transpose(const DenseMatrix& a);
/// Rows of `a` reordered so that row i lands at perm[i].
DenseMatrix permute_rows(const DenseMatrix& a, std::span<const std::size_t> perm);
void add_in_place(DenseMatrix& acc, const DenseMatrix& x, double scale = 1.0);
/// sum_ij a_ij * b_ij.
double frobenius_dot(const DenseMatrix& a, const DenseMatrix& b);

std::string shape_string(const DenseMatrix& m);

}  // namespace glgcn

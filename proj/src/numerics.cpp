// Copyright 2026 The glgcn Authors
// SPDX-License-Identifier: Apache-2.0

#include "glgcn/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace glgcn {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw DimensionError(what);
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    require(data_.size() == rows * cols, "DenseMatrix: data length does not match rows*cols");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        require(r.size() == cols_, "DenseMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool DenseMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

SparseMatrix::SparseMatrix(std::size_t dim, std::vector<std::size_t> row_offsets,
                           std::vector<std::size_t> col_indices, std::vector<double> values)
    : dim_(dim),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
    if (row_offsets_.size() != dim_ + 1 || row_offsets_.front() != 0 ||
        row_offsets_.back() != col_indices_.size() || col_indices_.size() != values_.size()) {
        throw std::invalid_argument("SparseMatrix: inconsistent CSR array lengths");
    }
    for (std::size_t r = 0; r < dim_; ++r) {
        if (row_offsets_[r] > row_offsets_[r + 1]) {
            throw std::invalid_argument("SparseMatrix: row_offsets not monotone");
        }
        for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
            if (col_indices_[k] >= dim_) throw std::invalid_argument("SparseMatrix: column out of range");
            if (k > row_offsets_[r] && col_indices_[k] <= col_indices_[k - 1]) {
                throw std::invalid_argument("SparseMatrix: columns not strictly increasing");
            }
            if (values_[k] == 0.0) throw std::invalid_argument("SparseMatrix: explicit zero stored");
        }
    }
}

SparseMatrix SparseMatrix::from_triplets(std::size_t dim, std::vector<Triplet> triplets) {
    for (const auto& t : triplets) {
        require(t.row < dim && t.col < dim, "SparseMatrix::from_triplets: index out of range");
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseMatrix m(dim);
    std::size_t k = 0;
    while (k < triplets.size()) {
        const std::size_t r = triplets[k].row;
        const std::size_t c = triplets[k].col;
        double v = 0.0;
        for (; k < triplets.size() && triplets[k].row == r && triplets[k].col == c; ++k) {
            v += triplets[k].value;
        }
        if (v != 0.0) {
            m.col_indices_.push_back(c);
            m.values_.push_back(v);
            ++m.row_offsets_[r + 1];
        }
    }
    std::partial_sum(m.row_offsets_.begin(), m.row_offsets_.end(), m.row_offsets_.begin());
    return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    std::vector<std::size_t> offsets(n + 1);
    std::iota(offsets.begin(), offsets.end(), std::size_t{0});
    std::vector<std::size_t> cols(n);
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    return SparseMatrix(n, std::move(offsets), std::move(cols), std::vector<double>(n, 1.0));
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense) {
    require(dense.rows() == dense.cols(), "SparseMatrix::from_dense: matrix not square");
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < dense.rows(); ++i) {
        for (std::size_t j = 0; j < dense.cols(); ++j) {
            if (dense(i, j) != 0.0) t.push_back({i, j, dense(i, j)});
        }
    }
    return from_triplets(dense.rows(), std::move(t));
}

double SparseMatrix::at(std::size_t r, std::size_t c) const {
    const auto cols = row_cols(r);
    const auto it = std::lower_bound(cols.begin(), cols.end(), c);
    if (it == cols.end() || *it != c) return 0.0;
    return values_[row_offsets_[r] + static_cast<std::size_t>(it - cols.begin())];
}

bool SparseMatrix::is_symmetric(double tol) const {
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
            const std::size_t c = col_indices_[k];
            const auto other = row_cols(c);
            if (!std::binary_search(other.begin(), other.end(), r)) return false;
            if (std::abs(at(c, r) - values_[k]) > tol) return false;
        }
    }
    return true;
}

std::vector<double> SparseMatrix::row_sums() const {
    std::vector<double> sums(dim_, 0.0);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (double v : row_values(r)) sums[r] += v;
    }
    return sums;
}

DenseMatrix SparseMatrix::densify() const {
    DenseMatrix d(dim_, dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
            d(r, col_indices_[k]) = values_[k];
        }
    }
    return d;
}

SparseMatrix SparseMatrix::transpose() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
            t.push_back({col_indices_[k], r, values_[k]});
        }
    }
    return from_triplets(dim_, std::move(t));
}

SparseMatrix SparseMatrix::scaled(double factor) const {
    if (factor == 0.0) throw std::invalid_argument("SparseMatrix::scaled: zero factor");
    SparseMatrix out = *this;
    for (double& v : out.values_) v *= factor;
    return out;
}

SparseMatrix SparseMatrix::permuted(std::span<const std::size_t> perm) const {
    require(perm.size() == dim_, "SparseMatrix::permuted: permutation length mismatch");
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
            t.push_back({perm[r], perm[col_indices_[k]], values_[k]});
        }
    }
    return from_triplets(dim_, std::move(t));
}

DenseMatrix matmul_dense(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.cols() == b.rows(), "matmul_dense: " + shape_string(a) + " x " + shape_string(b));
    DenseMatrix out(a.rows(), b.cols());
    const std::size_t inner = a.cols();
    const std::size_t n = b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* out_row = out.row(i).data();
        const double* a_row = a.row(i).data();
        for (std::size_t k = 0; k < inner; ++k) {
            const double aik = a_row[k];
            if (aik == 0.0) continue;
            const double* b_row = b.row(k).data();
            for (std::size_t j = 0; j < n; ++j) out_row[j] += aik * b_row[j];
        }
    }
    return out;
}

DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.rows() == b.rows(), "matmul_at_b: " + shape_string(a) + "^T x " + shape_string(b));
    DenseMatrix out(a.cols(), b.cols());
    const std::size_t n = b.cols();
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const double* a_row = a.row(k).data();
        const double* b_row = b.row(k).data();
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = a_row[i];
            if (aki == 0.0) continue;
            double* out_row = out.row(i).data();
            for (std::size_t j = 0; j < n; ++j) out_row[j] += aki * b_row[j];
        }
    }
    return out;
}

DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.cols() == b.cols(), "matmul_a_bt: " + shape_string(a) + " x " + shape_string(b) + "^T");
    DenseMatrix out(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto a_row = a.row(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const auto b_row = b.row(j);
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a_row[k] * b_row[k];
            out(i, j) = acc;
        }
    }
    return out;
}

DenseMatrix spmm(const SparseMatrix& s, const DenseMatrix& x) {
    require(s.dim() == x.rows(), "spmm: sparse dim " + std::to_string(s.dim()) + " vs " + shape_string(x));
    DenseMatrix out(x.rows(), x.cols());
    const std::size_t n = x.cols();
    for (std::size_t r = 0; r < s.dim(); ++r) {
        double* out_row = out.row(r).data();
        const auto cols = s.row_cols(r);
        const auto vals = s.row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const double* x_row = x.row(cols[k]).data();
            const double v = vals[k];
            for (std::size_t j = 0; j < n; ++j) out_row[j] += v * x_row[j];
        }
    }
    return out;
}

DenseMatrix spmm_transposed(const SparseMatrix& s, const DenseMatrix& x) {
    require(s.dim() == x.rows(),
            "spmm_transposed: sparse dim " + std::to_string(s.dim()) + " vs " + shape_string(x));
    DenseMatrix out(x.rows(), x.cols());
    const std::size_t n = x.cols();
    for (std::size_t r = 0; r < s.dim(); ++r) {
        const double* x_row = x.row(r).data();
        const auto cols = s.row_cols(r);
        const auto vals = s.row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            double* out_row = out.row(cols[k]).data();
            const double v = vals[k];
            for (std::size_t j = 0; j < n; ++j) out_row[j] += v * x_row[j];
        }
    }
    return out;
}

ReluResult relu(const DenseMatrix& x) {
    ReluResult r{x, std::vector<std::uint8_t>(x.size(), 0)};
    auto& d = r.output.data();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] > 0.0) {
            r.mask[i] = 1;
        } else {
            d[i] = 0.0;
        }
    }
    return r;
}

DenseMatrix softmax_rows(const DenseMatrix& x) {
    DenseMatrix out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto in = x.row(i);
        auto o = out.row(i);
        if (in.empty()) continue;
        const double mx = *std::max_element(in.begin(), in.end());
        double total = 0.0;
        for (std::size_t j = 0; j < in.size(); ++j) {
            o[j] = std::exp(in[j] - mx);
            total += o[j];
        }
        for (double& v : o) v /= total;
    }
    return out;
}

DenseMatrix glorot_init(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    if (rows == 0 || cols == 0) throw DimensionError("glorot_init: rows and cols must be >= 1");
    const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
    std::uniform_real_distribution<double> dist(-bound, bound);
    DenseMatrix w(rows, cols);
    for (double& v : w.data()) v = dist(rng);
    return w;
}

DenseMatrix glorot_init(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return glorot_init(rows, cols, rng);
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    }
    return t;
}

DenseMatrix permute_rows(const DenseMatrix& a, std::span<const std::size_t> perm) {
    require(perm.size() == a.rows(), "permute_rows: permutation length mismatch");
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::copy(a.row(i).begin(), a.row(i).end(), out.row(perm[i]).begin());
    }
    return out;
}

void add_in_place(DenseMatrix& acc, const DenseMatrix& x, double scale) {
    require(acc.rows() == x.rows() && acc.cols() == x.cols(),
            "add_in_place: " + shape_string(acc) + " vs " + shape_string(x));
    auto& a = acc.data();
    const auto& b = x.data();
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += scale * b[i];
}

double frobenius_dot(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(),
            "frobenius_dot: " + shape_string(a) + " vs " + shape_string(b));
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a.data()[i] * b.data()[i];
    return acc;
}

std::string shape_string(const DenseMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace glgcn

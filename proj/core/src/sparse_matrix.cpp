#include "trustkatz/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trustkatz/error.hpp"

namespace trustkatz {

SparseMatrix::SparseMatrix(Index n_rows, Index n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), row_ptr_(static_cast<std::size_t>(n_rows) + 1, 0) {}

SparseMatrix SparseMatrix::from_rows(Index n_rows, Index n_cols,
                                     const std::vector<std::vector<SparseEntry>>& rows) {
    if (rows.size() != n_rows) throw Error("row list size does not match row count");
    std::size_t total = 0;
    for (const auto& r : rows) total += r.size();

    std::vector<std::size_t> ptr;
    std::vector<Index> cols;
    std::vector<double> vals;
    ptr.reserve(static_cast<std::size_t>(n_rows) + 1);
    cols.reserve(total);
    vals.reserve(total);
    ptr.push_back(0);
    for (const auto& r : rows) {
        for (const auto& e : r) {
            cols.push_back(e.col);
            vals.push_back(e.value);
        }
        ptr.push_back(cols.size());
    }
    return from_csr(n_rows, n_cols, std::move(ptr), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::from_csr(Index n_rows, Index n_cols, std::vector<std::size_t> row_ptr,
                                    std::vector<Index> cols, std::vector<double> values) {
    SparseMatrix m;
    m.n_rows_ = n_rows;
    m.n_cols_ = n_cols;
    m.row_ptr_ = std::move(row_ptr);
    m.cols_ = std::move(cols);
    m.values_ = std::move(values);
    m.validate();
    return m;
}

void SparseMatrix::validate() const {
    if (row_ptr_.size() != static_cast<std::size_t>(n_rows_) + 1 || row_ptr_.front() != 0 ||
        row_ptr_.back() != cols_.size() || cols_.size() != values_.size())
        throw Error("inconsistent CSR arrays");
    for (Index i = 0; i < n_rows_; ++i) {
        std::size_t b = row_ptr_[i], e = row_ptr_[i + 1];
        if (b > e) throw Error("row pointers must be non-decreasing");
        for (std::size_t p = b; p < e; ++p) {
            if (cols_[p] >= n_cols_)
                throw Error("column index out of range in row " + std::to_string(i));
            if (p > b && cols_[p] <= cols_[p - 1])
                throw Error("column indices not strictly increasing in row " + std::to_string(i));
            if (values_[p] == 0.0) throw Error("explicit zero stored in row " + std::to_string(i));
            if (!std::isfinite(values_[p]))
                throw Error("non-finite value stored in row " + std::to_string(i));
        }
    }
}

SparseMatrix::Row SparseMatrix::row(Index i) const {
    if (i >= n_rows_) throw Error("row index out of range: " + std::to_string(i));
    std::size_t b = row_ptr_[i], e = row_ptr_[i + 1];
    return {std::span<const Index>(cols_).subspan(b, e - b),
            std::span<const double>(values_).subspan(b, e - b)};
}

double SparseMatrix::at(Index i, Index j) const {
    Row r = row(i);
    auto it = std::lower_bound(r.cols.begin(), r.cols.end(), j);
    if (it == r.cols.end() || *it != j) return 0.0;
    return r.values[static_cast<std::size_t>(it - r.cols.begin())];
}

bool SparseMatrix::contains(Index i, Index j) const {
    Row r = row(i);
    return std::binary_search(r.cols.begin(), r.cols.end(), j);
}

}  // namespace trustkatz

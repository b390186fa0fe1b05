#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace trustkatz {

/// One stored entry of a sparse row.
struct SparseEntry {
    std::uint32_t col;
    double value;

    friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Row-compressed real matrix.
///
/// Invariants, checked on construction: column indices strictly increase within a row,
/// no explicit zeros are stored, all values are finite.
class SparseMatrix {
public:
    using Index = std::uint32_t;

    /// Read-only view of one row.
    struct Row {
        std::span<const Index> cols;
        std::span<const double> values;

        std::size_t size() const noexcept { return cols.size(); }
        bool empty() const noexcept { return cols.empty(); }
    };

    SparseMatrix() = default;

    /// All-zero matrix.
    SparseMatrix(Index n_rows, Index n_cols);

    /// Builds from one entry list per row. Each list must already be sorted by column.
    static SparseMatrix from_rows(Index n_rows, Index n_cols,
                                  const std::vector<std::vector<SparseEntry>>& rows);

    /// Builds from raw CSR arrays (row_ptr has n_rows + 1 entries).
    static SparseMatrix from_csr(Index n_rows, Index n_cols, std::vector<std::size_t> row_ptr,
                                 std::vector<Index> cols, std::vector<double> values);

    Index rows() const noexcept { return n_rows_; }
    Index cols() const noexcept { return n_cols_; }
    std::size_t nnz() const noexcept { return cols_.size(); }
    bool square() const noexcept { return n_rows_ == n_cols_; }

    Row row(Index i) const;

    /// Value at (i, j); 0 when not stored.
    double at(Index i, Index j) const;
    bool contains(Index i, Index j) const;

    std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
    std::span<const Index> col_indices() const noexcept { return cols_; }
    std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    void validate() const;

    Index n_rows_ = 0;
    Index n_cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<Index> cols_;
    std::vector<double> values_;
};

}  // namespace trustkatz

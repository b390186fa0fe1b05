#include "trustkatz/similarity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "trustkatz/error.hpp"
#include "trustkatz/parallel.hpp"

namespace trustkatz {

namespace {

using Index = SparseMatrix::Index;

/// Sparse accumulator over a dense scratch vector; `touched` lists the live columns.
struct Accumulator {
    std::vector<double> dense;
    std::vector<Index> touched;

    explicit Accumulator(std::size_t n) : dense(n, 0.0) {}

    void add(Index c, double v) {
        if (dense[c] == 0.0) touched.push_back(c);
        dense[c] += v;
    }

    /// Moves the live entries out in column order, skipping `exclude`, and resets.
    void drain(std::vector<SparseEntry>& out, Index exclude) {
        std::sort(touched.begin(), touched.end());
        for (Index c : touched) {
            if (c != exclude && dense[c] != 0.0) out.push_back({c, dense[c]});
            dense[c] = 0.0;
        }
        touched.clear();
    }
};

std::vector<UserIndex> selected_rows(const ComputeOptions& opts, Index n) {
    std::vector<UserIndex> rows;
    if (opts.rows) {
        rows = *opts.rows;
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        if (!rows.empty() && rows.back() >= n)
            throw Error("requested row " + std::to_string(rows.back()) + " is out of range");
    } else {
        rows.resize(n);
        std::iota(rows.begin(), rows.end(), 0u);
    }
    return rows;
}

/// Computes the selected rows of an n x n matrix with `fn(row, scratch, out)`, in parallel
/// over row blocks. Results are placed by row index, so the output does not depend on the
/// thread count.
template <typename Fn>
SparseMatrix compute_rows(Index n, const ComputeOptions& opts, Fn&& fn) {
    auto rows = selected_rows(opts, n);
    std::vector<std::vector<SparseEntry>> out(n);
    std::atomic<std::size_t> stored{0};
    parallel_for(rows.size(), opts.threads, opts.block_rows, [&](std::size_t b, std::size_t e) {
        Accumulator scratch(n);
        for (std::size_t p = b; p < e; ++p) {
            auto& row = out[rows[p]];
            fn(rows[p], scratch, row);
            if (stored.fetch_add(row.size()) + row.size() > opts.max_stored_entries)
                throw BudgetExceeded(opts.max_stored_entries);
        }
    });
    return SparseMatrix::from_rows(n, n, out);
}

/// Applies `fn(row_index, cols, values, out)` to every row of `m`.
template <typename Fn>
SparseMatrix map_rows(const SparseMatrix& m, Fn&& fn) {
    std::vector<std::size_t> ptr{0};
    std::vector<Index> cols;
    std::vector<double> vals;
    ptr.reserve(static_cast<std::size_t>(m.rows()) + 1);
    cols.reserve(m.nnz());
    vals.reserve(m.nnz());
    std::vector<SparseEntry> row;
    for (Index i = 0; i < m.rows(); ++i) {
        row.clear();
        fn(i, m.row(i), row);
        for (const auto& e : row) {
            if (e.value == 0.0) continue;
            cols.push_back(e.col);
            vals.push_back(e.value);
        }
        ptr.push_back(cols.size());
    }
    return SparseMatrix::from_csr(m.rows(), m.cols(), std::move(ptr), std::move(cols),
                                  std::move(vals));
}

void require_same_shape(const SparseMatrix& s, const SparseMatrix& a) {
    if (s.rows() != a.rows() || s.cols() != a.cols())
        throw Error("dimension mismatch: similarity is " + std::to_string(s.rows()) + "x" +
                    std::to_string(s.cols()) + ", adjacency is " + std::to_string(a.rows()) +
                    "x" + std::to_string(a.cols()));
}

SparseMatrix transpose(const SparseMatrix& m) {
    std::vector<std::size_t> ptr(static_cast<std::size_t>(m.cols()) + 1, 0);
    for (Index c : m.col_indices()) ++ptr[c + 1];
    for (std::size_t c = 0; c < m.cols(); ++c) ptr[c + 1] += ptr[c];
    std::vector<Index> cols(m.nnz());
    std::vector<double> vals(m.nnz());
    std::vector<std::size_t> fill(ptr.begin(), ptr.end() - 1);
    for (Index i = 0; i < m.rows(); ++i) {
        auto r = m.row(i);
        for (std::size_t p = 0; p < r.size(); ++p) {
            std::size_t dst = fill[r.cols[p]]++;
            cols[dst] = i;
            vals[dst] = r.values[p];
        }
    }
    return SparseMatrix::from_csr(m.cols(), m.rows(), std::move(ptr), std::move(cols),
                                  std::move(vals));
}

}  // namespace

std::string SimilarityMatrix::provenance() const {
    std::string out;
    for (const auto& s : stages) {
        if (!out.empty()) out += " > ";
        out += s;
    }
    return out;
}

SimilarityMatrix katz_truncated(const SparseMatrix& a, double alpha, int l_max,
                                const ComputeOptions& opts) {
    if (!a.square()) throw Error("adjacency matrix must be square");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error("alpha must be a positive finite number");
    if (l_max < 0) throw Error("l_max must be >= 0");
    const Index n = a.rows();

    auto row_fn = [&](Index i, Accumulator& acc, std::vector<SparseEntry>& out) {
        // frontier holds alpha^l * (walk count of length l) for the current l.
        std::vector<SparseEntry> frontier{{i, 1.0}};
        std::vector<SparseEntry> next;
        for (int l = 1; l <= l_max && !frontier.empty(); ++l) {
            for (const auto& [j, v] : frontier) {
                auto r = a.row(j);
                double w = alpha * v;
                for (std::size_t p = 0; p < r.size(); ++p) acc.add(r.cols[p], w * r.values[p]);
            }
            next.clear();
            acc.drain(next, n);  // n is never a column, so nothing is excluded
            frontier.swap(next);
            out.insert(out.end(), frontier.begin(), frontier.end());
        }
        // Merge the per-length contributions column by column, dropping the diagonal.
        std::stable_sort(out.begin(), out.end(),
                         [](const SparseEntry& x, const SparseEntry& y) { return x.col < y.col; });
        std::size_t w = 0;
        for (std::size_t p = 0; p < out.size();) {
            Index c = out[p].col;
            double sum = 0.0;
            for (; p < out.size() && out[p].col == c; ++p) sum += out[p].value;
            if (c != i && sum != 0.0) out[w++] = {c, sum};
        }
        out.resize(w);
    };

    SimilarityMatrix s{compute_rows(n, opts, row_fn), {}};
    char buf[96];
    std::snprintf(buf, sizeof buf, "katz(alpha=%.17g,l_max=%d)", alpha, l_max);
    s.stages.emplace_back(buf);
    return s;
}

SimilarityMatrix degree_normalize(const SimilarityMatrix& s, const DegreeVector& d) {
    if (d.values.size() != s.values.cols())
        throw Error("dimension mismatch: degree vector has " + std::to_string(d.values.size()) +
                    " entries, similarity has " + std::to_string(s.values.cols()) + " columns");
    SimilarityMatrix out{map_rows(s.values,
                                  [&](Index, SparseMatrix::Row r, std::vector<SparseEntry>& row) {
                                      for (std::size_t p = 0; p < r.size(); ++p) {
                                          double div = std::max<std::uint32_t>(d.values[r.cols[p]], 1);
                                          row.push_back({r.cols[p], r.values[p] / div});
                                      }
                                  }),
                         s.stages};
    static constexpr const char* names[] = {"degree_norm(in)", "degree_norm(out)",
                                            "degree_norm(combined)"};
    out.stages.emplace_back(names[static_cast<int>(d.mode)]);
    return out;
}

SimilarityMatrix row_normalize(const SimilarityMatrix& s, RowNorm norm) {
    if (norm == RowNorm::none) return s;
    SimilarityMatrix out{
        map_rows(s.values,
                 [&](Index, SparseMatrix::Row r, std::vector<SparseEntry>& row) {
                     if (r.empty()) return;
                     double scale = 0.0;
                     switch (norm) {
                         case RowNorm::l1:
                             for (double v : r.values) scale += std::abs(v);
                             break;
                         case RowNorm::l2:
                             for (double v : r.values) scale += v * v;
                             scale = std::sqrt(scale);
                             break;
                         case RowNorm::max:
                             for (double v : r.values) scale = std::max(scale, std::abs(v));
                             break;
                         case RowNorm::none: break;
                     }
                     for (std::size_t p = 0; p < r.size(); ++p)
                         row.push_back({r.cols[p], r.values[p] / scale});
                 }),
        s.stages};
    out.stages.push_back("row_norm(" + std::string(to_string(norm)) + ")");
    return out;
}

SimilarityMatrix zero_strong_ties(const SimilarityMatrix& s, const SparseMatrix& a) {
    require_same_shape(s.values, a);
    SimilarityMatrix out{map_rows(s.values,
                                  [&](Index i, SparseMatrix::Row r, std::vector<SparseEntry>& row) {
                                      auto strong = a.row(i).cols;
                                      auto q = strong.begin();
                                      for (std::size_t p = 0; p < r.size(); ++p) {
                                          while (q != strong.end() && *q < r.cols[p]) ++q;
                                          if (q != strong.end() && *q == r.cols[p]) continue;
                                          row.push_back({r.cols[p], r.values[p]});
                                      }
                                  }),
                         s.stages};
    out.stages.emplace_back("zero_strong_ties");
    return out;
}

SimilarityMatrix boost(const SimilarityMatrix& weak, const SparseMatrix& a) {
    require_same_shape(weak.values, a);
    SimilarityMatrix out{
        map_rows(weak.values,
                 [&](Index i, SparseMatrix::Row r, std::vector<SparseEntry>& row) {
                     auto strong = a.row(i);
                     std::size_t p = 0, q = 0;
                     while (p < r.size() || q < strong.size()) {
                         if (q == strong.size() || (p < r.size() && r.cols[p] < strong.cols[q])) {
                             if (r.cols[p] == i)
                                 throw Error("boost: weak similarity matrix has a diagonal entry at row " +
                                             std::to_string(i));
                             row.push_back({r.cols[p], r.values[p]});
                             ++p;
                         } else if (p == r.size() || strong.cols[q] < r.cols[p]) {
                             row.push_back({strong.cols[q], strong.values[q]});
                             ++q;
                         } else {
                             throw Error("boost: weak similarity matrix is nonzero at strong tie (" +
                                         std::to_string(i) + ", " + std::to_string(r.cols[p]) +
                                         "); strong ties must be removed before normalization");
                         }
                     }
                 }),
        weak.stages};
    out.stages.emplace_back("boost");
    return out;
}

SimilarityMatrix apply_pipeline(SimilarityMatrix s, const SparseMatrix& a, const PipelineConfig& cfg) {
    cfg.validate();
    switch (cfg.degree_norm) {
        case DegreeNorm::none: break;
        case DegreeNorm::in: s = degree_normalize(s, degrees(a, DegreeMode::in)); break;
        case DegreeNorm::out: s = degree_normalize(s, degrees(a, DegreeMode::out)); break;
        case DegreeNorm::combined: s = degree_normalize(s, degrees(a, DegreeMode::combined)); break;
    }
    if (cfg.boost) {
        s = zero_strong_ties(s, a);
        s = row_normalize(s, cfg.row_norm);
        s = boost(s, a);
    } else {
        s = row_normalize(s, cfg.row_norm);
    }
    return s;
}

SimilarityMatrix build_similarity(const SparseMatrix& a, const PipelineConfig& cfg,
                                  const ComputeOptions& opts) {
    cfg.validate();
    return apply_pipeline(katz_truncated(a, cfg.alpha, cfg.l_max, opts), a, cfg);
}

SimilarityMatrix jaccard_similarity(const SparseMatrix& a, const ComputeOptions& opts) {
    if (!a.square()) throw Error("adjacency matrix must be square");
    const SparseMatrix at = transpose(a);
    auto row_fn = [&](Index i, Accumulator& acc, std::vector<SparseEntry>& out) {
        auto mine = a.row(i);
        for (Index k : mine.cols)
            for (Index j : at.row(k).cols)
                if (j != i) acc.add(j, 1.0);
        acc.drain(out, i);
        for (auto& e : out) {
            double inter = e.value;
            double uni = static_cast<double>(mine.size() + a.row(e.col).size()) - inter;
            e.value = inter / uni;
        }
    };
    SimilarityMatrix s{compute_rows(a.rows(), opts, row_fn), {"jaccard"}};
    return s;
}

SimilarityMatrix adjacency_similarity(const SparseMatrix& a) {
    if (!a.square()) throw Error("adjacency matrix must be square");
    return {a, {"adjacency"}};
}

}  // namespace trustkatz

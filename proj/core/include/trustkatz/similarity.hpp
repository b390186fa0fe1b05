#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trustkatz/pipeline_config.hpp"
#include "trustkatz/sparse_matrix.hpp"
#include "trustkatz/trust_graph.hpp"
#include "trustkatz/types.hpp"

namespace trustkatz {

/// Pairwise user similarities plus the list of stages that produced them.
///
/// Always square with non-negative values and an empty diagonal.
struct SimilarityMatrix {
    SparseMatrix values;
    std::vector<std::string> stages;

    std::size_t dimension() const noexcept { return values.rows(); }
    std::string provenance() const;  // stages joined with " > "
};

/// Shared knobs for the row-wise similarity computations.
struct ComputeOptions {
    /// Worker threads; 0 selects the hardware concurrency.
    unsigned threads = 1;
    /// Upper bound on entries stored by the Katz accumulation.
    std::size_t max_stored_entries = 500'000'000;
    /// Rows handed to one worker at a time.
    std::size_t block_rows = 256;
    /// When set, only these rows are computed; every other row stays empty.
    /// Each stage is row-local, so a restricted matrix agrees with the full one on these rows.
    std::optional<std::vector<UserIndex>> rows;
};

/// Truncated Katz similarity: sum over l = 0..l_max of (alpha A)^l with the diagonal removed.
/// Off-diagonal entry (i, j) equals sum_l alpha^l times the number of directed walks of
/// length l from i to j. Throws on a non-square `a`, invalid arguments, or when the
/// stored-entry budget in `opts` is exceeded.
SimilarityMatrix katz_truncated(const SparseMatrix& a, double alpha, int l_max,
                                const ComputeOptions& opts = {});

/// Divides column j by max(d[j], 1).
SimilarityMatrix degree_normalize(const SimilarityMatrix& s, const DegreeVector& d);

/// Divides every non-empty row by its L1 sum, L2 norm or maximum. `RowNorm::none` is the
/// identity.
SimilarityMatrix row_normalize(const SimilarityMatrix& s, RowNorm norm);

/// Removes the entries at positions where `a` stores an edge.
SimilarityMatrix zero_strong_ties(const SimilarityMatrix& s, const SparseMatrix& a);

/// A + S. Requires S to be empty at every edge of `a` and on the diagonal; a violation
/// means the pipeline ran out of order and raises Error.
SimilarityMatrix boost(const SimilarityMatrix& weak_normalized, const SparseMatrix& a);

/// Runs the post-Katz stages in fixed order: degree normalization (unless none), then
/// either [zero strong ties, row normalization, boost] when boosting or the row
/// normalization alone.
SimilarityMatrix apply_pipeline(SimilarityMatrix katz, const SparseMatrix& a,
                                const PipelineConfig& cfg);

/// katz_truncated followed by apply_pipeline. Degrees are read off `a`.
SimilarityMatrix build_similarity(const SparseMatrix& a, const PipelineConfig& cfg,
                                  const ComputeOptions& opts = {});

/// Jaccard overlap of out-neighbor sets, diagonal excluded; pairs without a shared
/// out-neighbor are not stored.
SimilarityMatrix jaccard_similarity(const SparseMatrix& a, const ComputeOptions& opts = {});

/// The adjacency matrix reused as a similarity matrix.
SimilarityMatrix adjacency_similarity(const SparseMatrix& a);

}  // namespace trustkatz

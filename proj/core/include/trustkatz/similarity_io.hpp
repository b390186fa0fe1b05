#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "trustkatz/similarity.hpp"

namespace trustkatz {

// Text triplet cache format:
//
//   # trustkatz-similarity 1
//   # key <caller-supplied cache key>
//   # stages <provenance>
//   # shape <rows> <cols> <nnz>
//   <row> <col> <value>            one line per stored entry, row-major
//
// Values are written with 17 significant digits so a reload is bit-exact.

void write_similarity(std::ostream& out, const SimilarityMatrix& s, const std::string& key);

/// Returns nullopt when the header does not carry `key`. Throws ParseError on a corrupt file.
std::optional<SimilarityMatrix> read_similarity(std::istream& in, const std::string& key);

}  // namespace trustkatz

#include "trustkatz/similarity_io.hpp"

#include <cstdio>
#include <sstream>

#include "text_input.hpp"
#include "trustkatz/error.hpp"

namespace trustkatz {

namespace {

constexpr std::string_view kMagic = "# trustkatz-similarity 1";

std::string header_value(std::istream& in, std::string_view tag, std::size_t ln) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(ln, "truncated similarity header");
    std::string prefix = "# " + std::string(tag) + " ";
    if (line.rfind(prefix, 0) != 0) throw ParseError(ln, "expected '" + prefix + "' header line");
    return line.substr(prefix.size());
}

}  // namespace

void write_similarity(std::ostream& out, const SimilarityMatrix& s, const std::string& key) {
    out << kMagic << '\n'
        << "# key " << key << '\n'
        << "# stages " << s.provenance() << '\n'
        << "# shape " << s.values.rows() << ' ' << s.values.cols() << ' ' << s.values.nnz() << '\n';
    char buf[64];
    for (SparseMatrix::Index i = 0; i < s.values.rows(); ++i) {
        auto r = s.values.row(i);
        for (std::size_t p = 0; p < r.size(); ++p) {
            std::snprintf(buf, sizeof buf, "%.17g", r.values[p]);
            out << i << ' ' << r.cols[p] << ' ' << buf << '\n';
        }
    }
}

std::optional<SimilarityMatrix> read_similarity(std::istream& in, const std::string& key) {
    std::string line;
    if (!std::getline(in, line) || line != kMagic) throw ParseError(1, "not a similarity cache file");
    if (header_value(in, "key", 2) != key) return std::nullopt;
    std::string stages = header_value(in, "stages", 3);
    std::istringstream shape(header_value(in, "shape", 4));
    std::size_t rows = 0, cols = 0, nnz = 0;
    if (!(shape >> rows >> cols >> nnz)) throw ParseError(4, "malformed shape line");

    std::vector<std::size_t> ptr(rows + 1, 0);
    std::vector<SparseMatrix::Index> col_idx;
    std::vector<double> vals;
    col_idx.reserve(nnz);
    vals.reserve(nnz);
    detail::DataLines lines(in);
    std::vector<std::string_view> tok;
    std::size_t prev_row = 0;
    while (lines.next(tok)) {
        std::size_t ln = lines.line_number() + 4;
        auto r = detail::parse_id(tok.size() == 3 ? tok[0] : "");
        auto c = detail::parse_id(tok.size() == 3 ? tok[1] : "");
        auto v = detail::parse_real(tok.size() == 3 ? tok[2] : "");
        if (!r || !c || !v || *r < 0 || *c < 0 || static_cast<std::size_t>(*r) >= rows ||
            static_cast<std::size_t>(*r) < prev_row)
            throw ParseError(ln, "malformed similarity entry");
        prev_row = static_cast<std::size_t>(*r);
        ++ptr[prev_row + 1];
        col_idx.push_back(static_cast<SparseMatrix::Index>(*c));
        vals.push_back(*v);
    }
    if (col_idx.size() != nnz) throw ParseError(0, "similarity entry count does not match header");
    for (std::size_t i = 0; i < rows; ++i) ptr[i + 1] += ptr[i];

    SimilarityMatrix s{SparseMatrix::from_csr(static_cast<SparseMatrix::Index>(rows),
                                              static_cast<SparseMatrix::Index>(cols), std::move(ptr),
                                              std::move(col_idx), std::move(vals)),
                       {}};
    std::size_t b = 0;
    while (!stages.empty() && b != std::string::npos) {
        auto e = stages.find(" > ", b);
        s.stages.push_back(stages.substr(b, e == std::string::npos ? e : e - b));
        b = e == std::string::npos ? e : e + 3;
    }
    return s;
}

}  // namespace trustkatz

#pragma once

#include <istream>
#include <ostream>
#include <vector>

#include "trustkatz/evaluation.hpp"

namespace trustkatz {

// CSV outputs: comma separated, header row, LF line endings, fixed 10-digit decimals so
// identical inputs give byte-identical files.

/// approach,l_max,degree_norm,row_norm,boost,n,ndcg,recall,precision,users_evaluated
/// Baselines carry "na" in the pipeline columns.
void write_metrics_csv(std::ostream& out, const std::vector<MetricsReport>& reports);

/// Reads a file produced by write_metrics_csv. Rows of one approach must be consecutive
/// and cover n = 1..n_max. Throws ParseError with the line number on malformed rows.
std::vector<MetricsReport> read_metrics_csv(std::istream& in, double alpha = 0.5);

/// approach,n,recall,precision
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& rows);

/// approach,user,n,ndcg,recall,precision with external user ids.
void write_details_csv(std::ostream& out, const std::vector<MetricsReport>& reports,
                       const IdMaps& ids);

}  // namespace trustkatz

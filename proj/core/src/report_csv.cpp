#include "trustkatz/report_csv.hpp"

#include <cstdio>
#include <sstream>
#include <string>

#include "text_input.hpp"
#include "trustkatz/error.hpp"

namespace trustkatz {

namespace {

constexpr const char* kMetricsHeader =
    "approach,l_max,degree_norm,row_norm,boost,n,ndcg,recall,precision,users_evaluated";

std::string fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

void write_metrics_csv(std::ostream& out, const std::vector<MetricsReport>& reports) {
    out << kMetricsHeader << '\n';
    for (const auto& r : reports) {
        std::string meta = "na,na,na,na";
        if (r.approach.kind() == Approach::Kind::katz) {
            const auto& c = r.approach.pipeline();
            meta = std::to_string(c.l_max) + ',' + std::string(to_string(c.degree_norm)) + ',' +
                   std::string(to_string(c.row_norm)) + ',' + (c.boost ? "yes" : "no");
        }
        for (int n = 1; n <= r.n_max; ++n) {
            const auto& m = r.at_n(n);
            out << r.approach.name() << ',' << meta << ',' << n << ',' << fixed(m.ndcg) << ','
                << fixed(m.recall) << ',' << fixed(m.precision) << ',' << r.users_evaluated << '\n';
        }
    }
}

std::vector<MetricsReport> read_metrics_csv(std::istream& in, double alpha) {
    std::string line;
    std::size_t ln = 0;
    if (!std::getline(in, line)) throw ParseError(0, "empty metrics file");
    ++ln;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kMetricsHeader) throw ParseError(ln, "unexpected metrics header");

    std::vector<MetricsReport> reports;
    PipelineConfig defaults;
    defaults.alpha = alpha;
    while (std::getline(in, line)) {
        ++ln;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv(line);
        if (cells.size() != 10) throw ParseError(ln, "expected 10 columns");
        Approach approach = Approach::most_popular();
        try {
            approach = Approach::parse(cells[0], defaults);
        } catch (const Error& e) {
            throw ParseError(ln, e.what());
        }
        auto n = detail::parse_id(cells[5]);
        auto ndcg = detail::parse_real(cells[6]);
        auto recall = detail::parse_real(cells[7]);
        auto precision = detail::parse_real(cells[8]);
        auto users = detail::parse_id(cells[9]);
        if (!n || !ndcg || !recall || !precision || !users || *users < 0)
            throw ParseError(ln, "malformed numeric column");

        if (reports.empty() || !(reports.back().approach == approach)) {
            reports.emplace_back();
            reports.back().approach = approach;
            reports.back().users_evaluated = static_cast<std::size_t>(*users);
        }
        auto& r = reports.back();
        if (*n != r.n_max + 1) throw ParseError(ln, "rows of an approach must list n = 1, 2, ...");
        r.n_max = static_cast<int>(*n);
        r.at.push_back({*ndcg, *recall, *precision});
    }
    return reports;
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& rows) {
    out << "approach,n,recall,precision\n";
    for (const auto& p : rows)
        out << p.approach << ',' << p.n << ',' << fixed(p.recall) << ',' << fixed(p.precision) << '\n';
}

void write_details_csv(std::ostream& out, const std::vector<MetricsReport>& reports,
                       const IdMaps& ids) {
    out << "approach,user,n,ndcg,recall,precision\n";
    for (const auto& r : reports)
        for (const auto& um : r.details)
            for (std::size_t p = 0; p < um.at.size(); ++p)
                out << r.approach.name() << ',' << ids.user_id(um.user) << ',' << p + 1 << ','
                    << fixed(um.at[p].ndcg) << ',' << fixed(um.at[p].recall) << ','
                    << fixed(um.at[p].precision) << '\n';
}

}  // namespace trustkatz

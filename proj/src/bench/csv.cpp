#include "fp/bench/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fp::bench {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

void emit_trace_csv(const SolverTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write trace: " + path);
    if (trace.variant == TransformKind::matrix_extrapolated)
        out << "# extrapolated variant: objective not monotone by design\n";
    out << "iter,objective,surrogate,aux_norm,elapsed_ms\n";
    for (const TraceRecord& r : trace.records) {
        out << r.iter << ',' << format_full(r.objective) << ','
            << format_full(r.surrogate) << ',' << format_full(r.aux_norm) << ','
            << format_full(r.elapsed_ms) << '\n';
    }
    if (!out) throw IoError("trace write failed: " + path);
}

std::vector<TraceRecord> parse_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read trace: " + path);
    std::vector<TraceRecord> records;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            if (line != "iter,objective,surrogate,aux_norm,elapsed_ms")
                throw IoError("unexpected trace header: " + line);
            saw_header = true;
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        TraceRecord r;
        std::getline(row, cell, ',');
        r.iter = std::stoi(cell);
        std::getline(row, cell, ',');
        r.objective = std::stod(cell);
        std::getline(row, cell, ',');
        r.surrogate = std::stod(cell);
        std::getline(row, cell, ',');
        r.aux_norm = std::stod(cell);
        std::getline(row, cell, ',');
        r.elapsed_ms = std::stod(cell);
        records.push_back(r);
    }
    if (!saw_header) throw IoError("trace file has no header: " + path);
    return records;
}

namespace {

void sort_rows(std::vector<SummaryRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
        if (a.seed != b.seed) return a.seed < b.seed;
        return a.method < b.method;
    });
}

}  // namespace

void emit_summary_csv(std::vector<SummaryRow> rows, const std::string& path) {
    sort_rows(rows);
    std::ofstream out(path);
    if (!out) throw IoError("cannot write summary: " + path);
    out << "seed,method,value,iterations,status\n";
    for (const SummaryRow& r : rows)
        out << r.seed << ',' << r.method << ',' << format_full(r.value) << ','
            << r.iterations << ',' << r.status << '\n';
    if (!out) throw IoError("summary write failed: " + path);
}

void emit_summary_table(std::vector<SummaryRow> rows, const std::string& path) {
    sort_rows(rows);
    std::size_t method_width = 6;
    for (const SummaryRow& r : rows) method_width = std::max(method_width, r.method.size());
    std::ofstream out(path);
    if (!out) throw IoError("cannot write table: " + path);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%8s  %-*s  %22s  %6s  %s\n", "seed",
                  static_cast<int>(method_width), "method", "value", "iters", "status");
    out << buf;
    for (const SummaryRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%8llu  %-*s  %22.12g  %6d  %s\n",
                      static_cast<unsigned long long>(r.seed),
                      static_cast<int>(method_width), r.method.c_str(), r.value,
                      r.iterations, r.status.c_str());
        out << buf;
    }
    if (!out) throw IoError("table write failed: " + path);
}

}  // namespace fp::bench

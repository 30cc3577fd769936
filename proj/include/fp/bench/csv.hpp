#pragma once

#include <string>
#include <vector>

#include "fp/types.hpp"

namespace fp::bench {

// One row per iteration under the header
// "iter,objective,surrogate,aux_norm,elapsed_ms", values in full-precision
// scientific notation. Traces from the extrapolated variant carry a comment
// line flagging the non-monotone contract before the header.
void emit_trace_csv(const SolverTrace& trace, const std::string& path);

// Parses a file written by emit_trace_csv; numeric values round-trip
// bit-exactly. Comment lines are skipped.
std::vector<TraceRecord> parse_trace_csv(const std::string& path);

struct SummaryRow {
    std::uint64_t seed = 0;
    std::string method;
    double value = 0.0;
    int iterations = 0;
    std::string status;
};

// "seed,method,value,iterations,status", rows sorted by (seed, method).
void emit_summary_csv(std::vector<SummaryRow> rows, const std::string& path);

// Fixed-width plain-text rendering of the same rows.
void emit_summary_table(std::vector<SummaryRow> rows, const std::string& path);

std::string format_full(double v);

}  // namespace fp::bench

#pragma once

#include <string>

#include "pseudophase/analysis.hpp"
#include "pseudophase/detection.hpp"
#include "pseudophase/field.hpp"

namespace pseudophase {

// Shortest decimal form that parses back to the same double; keeps emitted
// files byte-stable across runs and platforms with the same FP behavior.
std::string format_number(double v);

// "field,mode,sequence,value" rows in canonical scan order.
std::string correlation_csv(const CorrelationTable& table);

// "field,sequence,up,right" rows with 0/1 presence flags.
std::string m_matrix_csv(const ModeMatrix& m);

// One term per line: bit pattern, then x=/f= register values when the state
// carries a split, then the witnessing sequence assignment.  Empty states
// render as a comment block explaining per-field candidate counts when a
// matrix is supplied.
std::string render_state(const SuperpositionState& s,
                         const ModeMatrix* matrix_for_diagnostics = nullptr);

std::string render_period(const PeriodReport& rep);

// "slot,mode,re,im" rows.
std::string field_csv(const OpticalField& f);

// "slot,i1,i2" rows for a balanced detector pair.
std::string trace_csv(const DetectorTrace& t1, const DetectorTrace& t2);

// Reads term bit patterns: one 0/1 string per line, '#' comments, optional
// trailing annotations after whitespace ignored.  All patterns must have
// the same width.  Throws std::runtime_error with line info.
std::vector<StateTerm> parse_state_terms(std::istream& in);
std::vector<StateTerm> parse_state_terms_file(const std::string& path);

// Binary-mode write; creates parent directories.  Throws std::runtime_error
// on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

}  // namespace pseudophase

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pseudophase/field.hpp"
#include "pseudophase/sequence.hpp"

namespace pseudophase {

// Square-law detector output: one intensity sample per slot, in units of
// the responsivity mu times |amplitude|^2.
struct DetectorTrace {
    std::vector<double> samples;
};

DetectorTrace photodetect(const OpticalField& f, double mu = 1.0);

// Feed signal and local oscillator through a 50/50 coupler onto two
// detectors.  Both fields must occupy a single common mode (at most one
// mode carries energy, and it is the same mode for both); a dark field is
// compatible with anything.
std::pair<DetectorTrace, DetectorTrace> balanced_pair(const OpticalField& signal,
                                                      const OpticalField& lo,
                                                      double mu = 1.0);

// C = sum_k t1[k] * t2[k] * tau_slot.
double correlate(const DetectorTrace& t1, const DetectorTrace& t2,
                 double tau_slot = 1.0);

struct CorrelationRecord {
    std::string field_label;
    ModeId mode;
    int lo_sequence;
    double value;
};

// Correlation values over the full (field, mode, LO sequence) grid, laid out
// row-major with mode fastest grouped per field: index = (f*2 + mode)*S + s.
struct CorrelationTable {
    std::vector<std::string> field_labels;
    std::vector<int> sequence_ids;
    double mu = 1.0;
    double tau_slot = 1.0;
    std::vector<double> values;

    std::size_t field_count() const { return field_labels.size(); }
    std::size_t sequence_count() const { return sequence_ids.size(); }
    double value(std::size_t field, ModeId mode, std::size_t seq) const;
    // All sequence values for one detection branch (field x mode).
    std::span<const double> branch(std::size_t field, ModeId mode) const;
    // Canonical enumeration: field-major, then mode (up, right), then sequence.
    std::vector<CorrelationRecord> records() const;
};

enum class ScanMode { Serial, Parallel };

// For every field, polarization branch and LO sequence: project the field
// onto the branch mode, beat it against a unit-amplitude local oscillator
// modulated with the sequence on that same mode, and correlate the two
// detector outputs.  Cells are independent; Parallel distributes them over
// OpenMP threads and is sample-for-sample identical to Serial.
CorrelationTable correlation_scan(const std::vector<OpticalField>& fields,
                                  const std::vector<PhaseSequence>& lo_family,
                                  double mu = 1.0, double tau_slot = 1.0,
                                  ScanMode mode = ScanMode::Parallel);

}  // namespace pseudophase

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pseudophase/detection.hpp"

namespace pseudophase {

// Peak picking on one detection branch (the per-sequence correlation values
// of one field x mode).  A branch is "flat" -- no sequence present -- when
// it carries no energy at all or when its relative spread (max-min)/max is
// below epsilon_flat.  Otherwise every value within the top (1-theta) band
// of the normalized range counts as present.
// Returns the indices of present sequences, ascending.
std::vector<std::size_t> classify_branch(std::span<const double> values,
                                         double epsilon_flat = 0.05,
                                         double theta = 0.5);

// Which modes of a field respond to a given local-oscillator sequence.
enum class MPresence : std::uint8_t { None = 0, UpOnly, RightOnly, Both };

// Presence matrix: rows are fields, columns local-oscillator sequences.
struct ModeMatrix {
    std::vector<std::string> row_labels;
    std::vector<int> col_ids;
    std::vector<MPresence> entries;  // row-major

    std::size_t rows() const { return row_labels.size(); }
    std::size_t cols() const { return col_ids.size(); }
    MPresence at(std::size_t r, std::size_t c) const {
        return entries[r * cols() + c];
    }
    MPresence& at(std::size_t r, std::size_t c) { return entries[r * cols() + c]; }
};

// Shape and entries (and column ids) match; row labels are cosmetic.
bool same_entries(const ModeMatrix& a, const ModeMatrix& b);

ModeMatrix extract_m_matrix(const CorrelationTable& table,
                            double epsilon_flat = 0.05, double theta = 0.5);

// Aligned text, one row per field: entries 0, (1,0), (0,1), (1,1).
std::string render_m_matrix(const ModeMatrix& m);
// Parse the same format ('#' comments allowed).  Columns get ids 0..n-1 and
// rows labels E1..En.  Throws std::runtime_error with line info.
ModeMatrix parse_m_matrix(std::istream& in);
ModeMatrix parse_m_matrix_file(const std::string& path);
// Human-readable cell-by-cell difference, empty string when equal.
std::string diff_m_matrices(const ModeMatrix& expected, const ModeMatrix& actual);

enum class BitOrder { MsbFirst, LsbFirst };

// One superposition term: bit i is the logical value read from field i
// (0 = up mode, 1 = right mode), plus the sequence assignment (one id per
// field, all distinct) that witnessed the term.
struct StateTerm {
    std::vector<std::uint8_t> bits;
    std::vector<int> witness_sequences;
};

struct RegisterSplit {
    std::vector<std::size_t> x_fields;
    std::vector<std::size_t> f_fields;
};

// First x_count fields form the x register, the rest the f register.
RegisterSplit make_register_split(std::size_t n_fields, std::size_t x_count);

struct SuperpositionState {
    std::vector<StateTerm> terms;  // deduplicated, lexicographic bit order
    std::optional<RegisterSplit> register_split;
    BitOrder bit_order = BitOrder::MsbFirst;
};

// Exhaustive distinct-sequence matching: a bit pattern (b_1..b_n) is a term
// iff fields can be assigned pairwise-distinct sequence columns such that
// field i's column shows presence of mode b_i.  All patterns with at least
// one witness are returned (first witness found in canonical enumeration
// order: bits 0 before 1, columns ascending).  No witness anywhere gives an
// empty term list, which is a valid result, not an error.
SuperpositionState reconstruct_terms(const ModeMatrix& m);

// Per field: how many columns support bit 0 (up) / bit 1 (right).  Used to
// explain empty reconstructions.
std::vector<std::array<int, 2>> presence_options(const ModeMatrix& m);

// Integer value of the given bit positions of a term under the bit order.
unsigned long register_value(const StateTerm& term,
                             const std::vector<std::size_t>& fields,
                             BitOrder order);

struct PeriodReport {
    int period = 0;                                      // # distinct f values
    std::map<unsigned long, std::vector<unsigned long>> groups;  // f -> sorted x
    BitOrder bit_order = BitOrder::MsbFirst;
};

// Requires a nonempty state with a register split covering valid field
// indices; throws std::invalid_argument otherwise.
PeriodReport extract_period(const SuperpositionState& s);

}  // namespace pseudophase

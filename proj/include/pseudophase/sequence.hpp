#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pseudophase {

// A phase sequence assigns one phase code to each time slot.  Codes are
// quarter turns: code q means a phase of q*pi/2 radians, q in 0..3.  The
// built-in family is binary (codes 0 and 1 only, i.e. phases 0 and pi/2).
struct PhaseSequence {
    int id = -1;  // family index, -1 for sequences not tied to a family
    std::vector<std::uint8_t> codes;

    std::size_t length() const { return codes.size(); }
    bool is_binary() const;              // all codes in {0, 1}
    double phase_at(std::size_t k) const;  // radians
};

bool operator==(const PhaseSequence& a, const PhaseSequence& b);

// The eight built-in length-8 sequences.  Sequence 0 is all-zero; 1..7 are
// balanced (four 0s, four pi/2s) with pairwise agreement 4 on every pair.
const std::vector<PhaseSequence>& builtin_family();

// Number of slots where the two sequences carry the same code.
int agreement_count(const PhaseSequence& a, const PhaseSequence& b);

// Slotwise XOR of two binary sequences.  The built-in family is closed
// under this: composing two modulations from the family acts like a single
// modulation by another family member.
PhaseSequence xor_compose(const PhaseSequence& a, const PhaseSequence& b);

struct FamilyReport {
    std::vector<bool> balanced;          // per sequence: equal 0 / pi/2 counts
    std::vector<std::vector<int>> pairwise_agreements;
    bool closed_under_xor = false;

    // Family is usable for correlation discrimination: every sequence that is
    // not all-zero is balanced, every distinct pair agrees on exactly half the
    // slots, and the family is XOR-closed.
    bool all_pass(const std::vector<PhaseSequence>& seqs) const;
};

FamilyReport verify_family(const std::vector<PhaseSequence>& seqs);

// Closed-form correlation of the balanced-detection pipeline for two
// unit-amplitude fields modulated with a and b, in units of mu^2 A^4 tau_slot:
// sum over slots of (1 + cos 2(phi_a - phi_b))/2.  For quarter-turn codes each
// slot contributes exactly 1 (even code difference) or 0 (odd), so the result
// is an integer: 8 for equal built-in sequences, 4 for distinct ones.
double analytic_correlation(const PhaseSequence& a, const PhaseSequence& b);

// Text format: one sequence per line, comma-separated quarter-turn codes,
// '#' starts a comment.  Ids are assigned in file order starting at 0.
// Throws std::runtime_error with line information on malformed input
// (bad token, code out of 0..3, unequal lengths, no sequences).
std::vector<PhaseSequence> load_family(std::istream& in);
std::vector<PhaseSequence> load_family_file(const std::string& path);
void save_family(std::ostream& out, const std::vector<PhaseSequence>& seqs);

}  // namespace pseudophase

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pseudophase/analysis.hpp"
#include "pseudophase/field.hpp"

namespace pseudophase {

// A canned bench setup: prepared fields plus the presence matrix the
// correlation scan is expected to produce under default thresholds.
struct Scenario {
    std::string name;
    std::vector<OpticalField> fields;
    ModeMatrix expected_m;
    std::vector<int> sequence_ids;  // family members used in the construction
    std::optional<RegisterSplit> register_split;
    // Idealized target terms, where the construction encodes a known
    // superposition independently of what reconstruction recovers.
    std::optional<std::vector<StateTerm>> reference_terms;
};

// Three independent fields, field i carrying both modes at 1/sqrt2 amplitude
// and modulated with its own sequence: every field beats against exactly one
// sequence, on both modes.
Scenario build_product(const std::array<int, 3>& ids = {1, 2, 3},
                       const std::vector<PhaseSequence>& family = builtin_family());

// Cyclic two-mode entanglement analogue: field i carries sequence ids[i] on
// up and ids[(i+1)%3] on right (amplitudes 1/sqrt2).  Reconstruction yields
// the two all-equal bit patterns.
Scenario build_ghz(const std::array<int, 3>& ids = {1, 2, 3},
                   const std::vector<PhaseSequence>& family = builtin_family());

// Three identical fields, each the unit-amplitude sum of ids[0] on up and
// ids[1], ids[2] on right.  Reconstruction yields the weight-2 patterns.
Scenario build_w(const std::array<int, 3>& ids = {1, 2, 3},
                 const std::vector<PhaseSequence>& family = builtin_family());

// Order-finding bench for f(x) = 7^x mod 15 on a 4+4 bit register pair:
// eight fields, each a unit-amplitude sum over the sequences listed in a
// fixed up/right term table.  Carries the idealized 16-term target state and
// the 4/4 register split.  Needs a family of at least 8 sequences.
Scenario build_shor15(const std::vector<PhaseSequence>& family = builtin_family());

// The idealized order-finding superposition: one term per x in 0..15 with
// f = 7^x mod 15, both registers most-significant-bit first.
std::vector<StateTerm> modexp_target_terms();

// Dispatch by name ("product", "ghz", "w", "shor15"); throws
// std::invalid_argument on unknown names.
Scenario build_scenario(const std::string& name,
                        const std::vector<PhaseSequence>& family = builtin_family());

const std::vector<std::string>& scenario_names();

}  // namespace pseudophase

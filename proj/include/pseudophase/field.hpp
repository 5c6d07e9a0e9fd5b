#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "pseudophase/sequence.hpp"

namespace pseudophase {

using Phasor = std::complex<double>;

// Two orthogonal polarization modes; Up plays the role of the logical 0
// basis state and Right the logical 1.
enum class ModeId : int { Up = 0, Right = 1 };

constexpr std::array<ModeId, 2> kModes{ModeId::Up, ModeId::Right};

const char* mode_name(ModeId m);  // "up" / "right"

// Slotted baseband field: one complex amplitude per (slot, mode).  The
// optical carrier is divided out, so a steady source is a constant phasor
// and modulation is a per-slot unit-phasor multiply.
struct OpticalField {
    std::string label;
    std::vector<std::array<Phasor, 2>> slots;

    std::size_t slot_count() const { return slots.size(); }
    Phasor& at(std::size_t k, ModeId m) { return slots[k][static_cast<int>(m)]; }
    const Phasor& at(std::size_t k, ModeId m) const {
        return slots[k][static_cast<int>(m)];
    }
};

// Steady source with nonnegative real amplitude on each mode.
// Throws std::invalid_argument on negative/non-finite amplitude or length 0.
OpticalField make_source(double amp_up, double amp_right, std::size_t length,
                         std::string label = "");

// Multiply slot k of both modes by exp(-i * code_k * pi/2).  Quarter-turn
// rotations are applied as exact unit phasors (1, -i, -1, i), so composing
// modulations is exact code addition mod 4.  For binary sequences the
// composite differs from the XOR-composed modulation only by per-slot signs
// (where both codes are 1), which no intensity or correlation can see.
OpticalField modulate(const OpticalField& f, const PhaseSequence& s);

// Slotwise sum; lengths must match.
OpticalField superpose(const OpticalField& a, const OpticalField& b);

OpticalField scale(const OpticalField& f, Phasor factor);

// Keep one mode, zero the other.
OpticalField mode_project(const OpticalField& f, ModeId m);

// Total energy: sum of |amplitude|^2 over slots and modes.
double field_energy(const OpticalField& f);

bool approx_equal(const OpticalField& a, const OpticalField& b, double tol);

}  // namespace pseudophase

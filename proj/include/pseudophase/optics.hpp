#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pseudophase/field.hpp"

namespace pseudophase {

// Lossless 50/50 coupler, transfer matrix (1, i; i, 1)/sqrt(2):
//   out0 = (a + i b)/sqrt2,  out1 = (i a + b)/sqrt2.
// Unitary, so energy in == energy out.
std::pair<OpticalField, OpticalField> coupler2(const OpticalField& a,
                                               const OpticalField& b);

// Polarizing splitter/combiner: out0 carries the Up part of a plus the
// Right part of b; out1 the Up part of b plus the Right part of a.
std::pair<OpticalField, OpticalField> pbs(const OpticalField& a,
                                          const OpticalField& b);

// Polarization rotation by angle_deg degrees:
//   up'    = cos(t) up - sin(t) right
//   right' = sin(t) up + cos(t) right
// Multiples of 90 degrees are applied with exact constants.
OpticalField rotator(const OpticalField& f, double angle_deg);

enum class ModeFilterPass { All, UpOnly, RightOnly };

OpticalField mode_filter(const OpticalField& f, ModeFilterPass pass);

// n identical copies at 1/sqrt(n) amplitude (energy preserving in total).
std::vector<OpticalField> splitter(const OpticalField& f, int n);

// Adjoint of splitter: sum of n inputs at 1/sqrt(n) amplitude.
OpticalField combiner(std::span<const OpticalField> inputs);

}  // namespace pseudophase

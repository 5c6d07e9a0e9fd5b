#include "pseudophase/field.hpp"

#include <cmath>
#include <stdexcept>

namespace pseudophase {

const char* mode_name(ModeId m) {
    return m == ModeId::Up ? "up" : "right";
}

OpticalField make_source(double amp_up, double amp_right, std::size_t length,
                         std::string label) {
    if (length == 0)
        throw std::invalid_argument("make_source: length must be positive");
    for (double a : {amp_up, amp_right})
        if (!std::isfinite(a) || a < 0.0)
            throw std::invalid_argument("make_source: amplitudes must be finite and >= 0");
    OpticalField f;
    f.label = std::move(label);
    f.slots.assign(length, {Phasor(amp_up, 0.0), Phasor(amp_right, 0.0)});
    return f;
}

// exp(-i q pi/2) for q = 0..3, exact.
static constexpr Phasor kQuarterPhasor[4] = {
    {1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};

OpticalField modulate(const OpticalField& f, const PhaseSequence& s) {
    if (f.slot_count() != s.length())
        throw std::invalid_argument(
            "modulate: field has " + std::to_string(f.slot_count()) +
            " slots but sequence has " + std::to_string(s.length()));
    OpticalField r = f;
    for (std::size_t k = 0; k < r.slots.size(); ++k) {
        if (s.codes[k] > 3)
            throw std::invalid_argument("modulate: code out of range 0..3");
        Phasor p = kQuarterPhasor[s.codes[k]];
        r.slots[k][0] *= p;
        r.slots[k][1] *= p;
    }
    return r;
}

OpticalField superpose(const OpticalField& a, const OpticalField& b) {
    if (a.slot_count() != b.slot_count())
        throw std::invalid_argument(
            "superpose: slot counts differ (" + std::to_string(a.slot_count()) +
            " vs " + std::to_string(b.slot_count()) + ")");
    OpticalField r = a;
    for (std::size_t k = 0; k < r.slots.size(); ++k) {
        r.slots[k][0] += b.slots[k][0];
        r.slots[k][1] += b.slots[k][1];
    }
    return r;
}

OpticalField scale(const OpticalField& f, Phasor factor) {
    OpticalField r = f;
    for (auto& slot : r.slots) {
        slot[0] *= factor;
        slot[1] *= factor;
    }
    return r;
}

OpticalField mode_project(const OpticalField& f, ModeId m) {
    OpticalField r = f;
    const int keep = static_cast<int>(m);
    for (auto& slot : r.slots) slot[1 - keep] = Phasor(0.0, 0.0);
    return r;
}

double field_energy(const OpticalField& f) {
    double e = 0.0;
    for (const auto& slot : f.slots)
        e += std::norm(slot[0]) + std::norm(slot[1]);
    return e;
}

bool approx_equal(const OpticalField& a, const OpticalField& b, double tol) {
    if (a.slot_count() != b.slot_count()) return false;
    for (std::size_t k = 0; k < a.slots.size(); ++k)
        for (int m = 0; m < 2; ++m)
            if (std::abs(a.slots[k][m] - b.slots[k][m]) > tol) return false;
    return true;
}

}  // namespace pseudophase

#include "pseudophase/optics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pseudophase {

static void require_same_length(const OpticalField& a, const OpticalField& b,
                                const char* what) {
    if (a.slot_count() != b.slot_count())
        throw std::invalid_argument(
            std::string(what) + ": slot counts differ (" +
            std::to_string(a.slot_count()) + " vs " +
            std::to_string(b.slot_count()) + ")");
}

std::pair<OpticalField, OpticalField> coupler2(const OpticalField& a,
                                               const OpticalField& b) {
    require_same_length(a, b, "coupler2");
    const double s = 1.0 / std::numbers::sqrt2;
    const Phasor i(0.0, 1.0);
    OpticalField o1 = a, o2 = b;
    for (std::size_t k = 0; k < a.slots.size(); ++k)
        for (int m = 0; m < 2; ++m) {
            Phasor x = a.slots[k][m], y = b.slots[k][m];
            o1.slots[k][m] = (x + i * y) * s;
            o2.slots[k][m] = (i * x + y) * s;
        }
    return {std::move(o1), std::move(o2)};
}

std::pair<OpticalField, OpticalField> pbs(const OpticalField& a,
                                          const OpticalField& b) {
    require_same_length(a, b, "pbs");
    OpticalField o1 = a, o2 = b;
    for (std::size_t k = 0; k < a.slots.size(); ++k) {
        o1.slots[k][0] = a.slots[k][0];
        o1.slots[k][1] = b.slots[k][1];
        o2.slots[k][0] = b.slots[k][0];
        o2.slots[k][1] = a.slots[k][1];
    }
    return {std::move(o1), std::move(o2)};
}

OpticalField rotator(const OpticalField& f, double angle_deg) {
    if (!std::isfinite(angle_deg))
        throw std::invalid_argument("rotator: angle must be finite");
    double c, s;
    // Right angles hit exact zeros that trig functions only approximate.
    if (std::fmod(angle_deg, 90.0) == 0.0) {
        int q = static_cast<int>(std::fmod(angle_deg / 90.0, 4.0));
        if (q < 0) q += 4;
        static constexpr double cs[4] = {1.0, 0.0, -1.0, 0.0};
        static constexpr double sn[4] = {0.0, 1.0, 0.0, -1.0};
        c = cs[q];
        s = sn[q];
    } else {
        double rad = angle_deg * std::numbers::pi / 180.0;
        c = std::cos(rad);
        s = std::sin(rad);
    }
    OpticalField r = f;
    for (auto& slot : r.slots) {
        Phasor u = slot[0], v = slot[1];
        slot[0] = c * u - s * v;
        slot[1] = s * u + c * v;
    }
    return r;
}

OpticalField mode_filter(const OpticalField& f, ModeFilterPass pass) {
    switch (pass) {
        case ModeFilterPass::All:
            return f;
        case ModeFilterPass::UpOnly:
            return mode_project(f, ModeId::Up);
        case ModeFilterPass::RightOnly:
            return mode_project(f, ModeId::Right);
    }
    throw std::invalid_argument("mode_filter: bad pass value");
}

std::vector<OpticalField> splitter(const OpticalField& f, int n) {
    if (n < 2)
        throw std::invalid_argument("splitter: need n >= 2, got " +
                                    std::to_string(n));
    OpticalField one = scale(f, Phasor(1.0 / std::sqrt(double(n)), 0.0));
    return std::vector<OpticalField>(static_cast<std::size_t>(n), one);
}

OpticalField combiner(std::span<const OpticalField> inputs) {
    if (inputs.size() < 2)
        throw std::invalid_argument("combiner: need at least 2 inputs, got " +
                                    std::to_string(inputs.size()));
    OpticalField sum = inputs[0];
    for (std::size_t i = 1; i < inputs.size(); ++i)
        sum = superpose(sum, inputs[i]);
    return scale(sum, Phasor(1.0 / std::sqrt(double(inputs.size())), 0.0));
}

}  // namespace pseudophase

#include "pseudophase/detection.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace pseudophase {

DetectorTrace photodetect(const OpticalField& f, double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("photodetect: mu must be positive");
    DetectorTrace t;
    t.samples.reserve(f.slot_count());
    for (const auto& slot : f.slots)
        t.samples.push_back(mu * (std::norm(slot[0]) + std::norm(slot[1])));
    return t;
}

// Mode carrying any energy, or nothing for a dark field.  Two active modes
// is an error: the balanced pair mixes a single polarization.
static std::optional<ModeId> active_mode(const OpticalField& f, const char* who) {
    bool up = false, right = false;
    for (const auto& slot : f.slots) {
        if (std::norm(slot[0]) > 0.0) up = true;
        if (std::norm(slot[1]) > 0.0) right = true;
    }
    if (up && right)
        throw std::invalid_argument(std::string("balanced_pair: ") + who +
                                    " field carries both modes; project first");
    if (up) return ModeId::Up;
    if (right) return ModeId::Right;
    return std::nullopt;
}

std::pair<DetectorTrace, DetectorTrace> balanced_pair(const OpticalField& signal,
                                                      const OpticalField& lo,
                                                      double mu) {
    if (signal.slot_count() != lo.slot_count())
        throw std::invalid_argument("balanced_pair: slot counts differ (" +
                                    std::to_string(signal.slot_count()) + " vs " +
                                    std::to_string(lo.slot_count()) + ")");
    auto ms = active_mode(signal, "signal");
    auto ml = active_mode(lo, "local oscillator");
    if (ms && ml && *ms != *ml)
        throw std::invalid_argument(
            "balanced_pair: signal and local oscillator occupy different modes");

    const double s = 1.0 / std::numbers::sqrt2;
    const Phasor i(0.0, 1.0);
    DetectorTrace t1, t2;
    t1.samples.reserve(signal.slot_count());
    t2.samples.reserve(signal.slot_count());
    for (std::size_t k = 0; k < signal.slots.size(); ++k) {
        double i1 = 0.0, i2 = 0.0;
        for (int m = 0; m < 2; ++m) {
            Phasor x = signal.slots[k][m], y = lo.slots[k][m];
            i1 += std::norm((x + i * y) * s);
            i2 += std::norm((i * x + y) * s);
        }
        t1.samples.push_back(mu * i1);
        t2.samples.push_back(mu * i2);
    }
    return {std::move(t1), std::move(t2)};
}

double correlate(const DetectorTrace& t1, const DetectorTrace& t2,
                 double tau_slot) {
    if (t1.samples.size() != t2.samples.size())
        throw std::invalid_argument("correlate: trace lengths differ (" +
                                    std::to_string(t1.samples.size()) + " vs " +
                                    std::to_string(t2.samples.size()) + ")");
    if (!(tau_slot > 0.0) || !std::isfinite(tau_slot))
        throw std::invalid_argument("correlate: tau_slot must be positive");
    double c = 0.0;
    for (std::size_t k = 0; k < t1.samples.size(); ++k)
        c += t1.samples[k] * t2.samples[k];
    return c * tau_slot;
}

double CorrelationTable::value(std::size_t field, ModeId mode,
                               std::size_t seq) const {
    return values[(field * 2 + static_cast<std::size_t>(mode)) * sequence_count() +
                  seq];
}

std::span<const double> CorrelationTable::branch(std::size_t field,
                                                 ModeId mode) const {
    const std::size_t s = sequence_count();
    return {values.data() + (field * 2 + static_cast<std::size_t>(mode)) * s, s};
}

std::vector<CorrelationRecord> CorrelationTable::records() const {
    std::vector<CorrelationRecord> out;
    out.reserve(values.size());
    for (std::size_t f = 0; f < field_count(); ++f)
        for (ModeId m : kModes)
            for (std::size_t s = 0; s < sequence_count(); ++s)
                out.push_back({field_labels[f], m, sequence_ids[s], value(f, m, s)});
    return out;
}

// One grid cell, built from the public pipeline ops so that the scan is the
// same arithmetic as a hand-assembled bench: project, beat against a unit
// LO on the same mode, correlate.
static double scan_cell(const OpticalField& field, ModeId mode,
                        const PhaseSequence& seq, double mu, double tau_slot) {
    OpticalField sig = mode_project(field, mode);
    OpticalField lo = make_source(mode == ModeId::Up ? 1.0 : 0.0,
                                  mode == ModeId::Right ? 1.0 : 0.0,
                                  field.slot_count());
    lo = modulate(lo, seq);
    auto [t1, t2] = balanced_pair(sig, lo, mu);
    return correlate(t1, t2, tau_slot);
}

CorrelationTable correlation_scan(const std::vector<OpticalField>& fields,
                                  const std::vector<PhaseSequence>& lo_family,
                                  double mu, double tau_slot, ScanMode mode) {
    if (fields.empty() || lo_family.empty())
        throw std::invalid_argument("correlation_scan: fields and family must be nonempty");
    const std::size_t len = lo_family[0].length();
    for (const auto& s : lo_family)
        if (s.length() != len)
            throw std::invalid_argument("correlation_scan: family lengths differ");
    for (const auto& f : fields)
        if (f.slot_count() != len)
            throw std::invalid_argument(
                "correlation_scan: field '" + f.label + "' has " +
                std::to_string(f.slot_count()) + " slots, family has " +
                std::to_string(len));

    CorrelationTable table;
    table.mu = mu;
    table.tau_slot = tau_slot;
    for (const auto& f : fields) table.field_labels.push_back(f.label);
    for (const auto& s : lo_family) table.sequence_ids.push_back(s.id);

    const std::size_t nf = fields.size();
    const std::size_t ns = lo_family.size();
    const std::size_t ncells = nf * 2 * ns;
    table.values.assign(ncells, 0.0);

    // Each cell writes one distinct element, so the schedule cannot change
    // the result; Serial is kept as the reference path.
    if (mode == ScanMode::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long idx = 0; idx < static_cast<long long>(ncells); ++idx) {
            const std::size_t f = static_cast<std::size_t>(idx) / (2 * ns);
            const std::size_t m = (static_cast<std::size_t>(idx) / ns) % 2;
            const std::size_t s = static_cast<std::size_t>(idx) % ns;
            table.values[static_cast<std::size_t>(idx)] =
                scan_cell(fields[f], static_cast<ModeId>(m), lo_family[s], mu,
                          tau_slot);
        }
    } else {
        for (std::size_t idx = 0; idx < ncells; ++idx) {
            const std::size_t f = idx / (2 * ns);
            const std::size_t m = (idx / ns) % 2;
            const std::size_t s = idx % ns;
            table.values[idx] = scan_cell(fields[f], static_cast<ModeId>(m),
                                          lo_family[s], mu, tau_slot);
        }
    }
    return table;
}

}  // namespace pseudophase

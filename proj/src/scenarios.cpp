#include "pseudophase/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pseudophase {

namespace {

void check_ids(std::span<const int> ids, const std::vector<PhaseSequence>& family,
               std::size_t need) {
    if (family.size() < need)
        throw std::invalid_argument("scenario needs a family of at least " +
                                    std::to_string(need) + " sequences, got " +
                                    std::to_string(family.size()));
    for (int id : ids)
        if (id < 0 || static_cast<std::size_t>(id) >= family.size())
            throw std::invalid_argument("sequence id " + std::to_string(id) +
                                        " outside family of size " +
                                        std::to_string(family.size()));
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            if (ids[i] == ids[j])
                throw std::invalid_argument("sequence ids must be distinct");
}

// Unit-amplitude sum of single-mode modulated carriers, then scaled.
OpticalField term_sum(const std::vector<PhaseSequence>& family,
                      std::span<const int> up_ids, std::span<const int> right_ids,
                      double amp, std::string label) {
    const std::size_t len = family[0].length();
    OpticalField acc = make_source(0.0, 0.0, len, std::move(label));
    for (int id : up_ids)
        acc = superpose(acc, modulate(make_source(amp, 0.0, len), family[id]));
    for (int id : right_ids)
        acc = superpose(acc, modulate(make_source(0.0, amp, len), family[id]));
    return acc;
}

ModeMatrix empty_matrix(std::size_t rows, const std::vector<PhaseSequence>& family) {
    ModeMatrix m;
    for (std::size_t r = 0; r < rows; ++r)
        m.row_labels.push_back("E" + std::to_string(r + 1));
    for (const auto& s : family) m.col_ids.push_back(s.id);
    m.entries.assign(rows * family.size(), MPresence::None);
    return m;
}

void mark(ModeMatrix& m, std::size_t row, int id, bool up) {
    auto it = std::find(m.col_ids.begin(), m.col_ids.end(), id);
    std::size_t c = static_cast<std::size_t>(it - m.col_ids.begin());
    MPresence& e = m.at(row, c);
    MPresence add = up ? MPresence::UpOnly : MPresence::RightOnly;
    if (e == MPresence::None)
        e = add;
    else if (e != add)
        e = MPresence::Both;
}

}  // namespace

Scenario build_product(const std::array<int, 3>& ids,
                       const std::vector<PhaseSequence>& family) {
    check_ids(ids, family, 2);
    const double a = 1.0 / std::numbers::sqrt2;
    Scenario sc;
    sc.name = "product";
    sc.sequence_ids.assign(ids.begin(), ids.end());
    sc.expected_m = empty_matrix(3, family);
    for (std::size_t i = 0; i < 3; ++i) {
        int one[] = {ids[i]};
        OpticalField f = term_sum(family, one, one, a, "E" + std::to_string(i + 1));
        f.label = "E" + std::to_string(i + 1);
        sc.fields.push_back(std::move(f));
        mark(sc.expected_m, i, ids[i], true);
        mark(sc.expected_m, i, ids[i], false);
    }
    return sc;
}

Scenario build_ghz(const std::array<int, 3>& ids,
                   const std::vector<PhaseSequence>& family) {
    check_ids(ids, family, 2);
    const double a = 1.0 / std::numbers::sqrt2;
    Scenario sc;
    sc.name = "ghz";
    sc.sequence_ids.assign(ids.begin(), ids.end());
    sc.expected_m = empty_matrix(3, family);
    for (std::size_t i = 0; i < 3; ++i) {
        int up = ids[i], right = ids[(i + 1) % 3];
        int ups[] = {up}, rights[] = {right};
        OpticalField f = term_sum(family, ups, rights, a, "");
        f.label = "E" + std::to_string(i + 1);
        sc.fields.push_back(std::move(f));
        mark(sc.expected_m, i, up, true);
        mark(sc.expected_m, i, right, false);
    }
    return sc;
}

Scenario build_w(const std::array<int, 3>& ids,
                 const std::vector<PhaseSequence>& family) {
    check_ids(ids, family, 2);
    Scenario sc;
    sc.name = "w";
    sc.sequence_ids.assign(ids.begin(), ids.end());
    sc.expected_m = empty_matrix(3, family);
    for (std::size_t i = 0; i < 3; ++i) {
        int ups[] = {ids[0]};
        int rights[] = {ids[1], ids[2]};
        OpticalField f = term_sum(family, ups, rights, 1.0, "");
        f.label = "E" + std::to_string(i + 1);
        sc.fields.push_back(std::move(f));
        mark(sc.expected_m, i, ids[0], true);
        mark(sc.expected_m, i, ids[1], false);
        mark(sc.expected_m, i, ids[2], false);
    }
    return sc;
}

// Which family members modulate the up / right part of each of the eight
// fields in the order-finding construction.  The eighth label wraps to the
// all-zero sequence (id 0).
static const std::vector<std::vector<int>> kShorUp = {
    {1, 2, 3, 4}, {2, 3, 4, 5}, {3, 4},    {4, 6},
    {5, 6, 7},    {6},          {7, 1, 2}, {0, 2}};
static const std::vector<std::vector<int>> kShorRight = {
    {1, 2, 3, 4}, {2, 3, 4, 5}, {5, 6},    {5, 7},
    {0},          {7, 0, 1},    {0},       {1, 3}};

Scenario build_shor15(const std::vector<PhaseSequence>& family) {
    Scenario sc;
    sc.name = "shor15";
    for (int id = 0; id < 8; ++id) sc.sequence_ids.push_back(id);
    check_ids(sc.sequence_ids, family, 8);
    sc.expected_m = empty_matrix(8, family);
    for (std::size_t i = 0; i < 8; ++i) {
        OpticalField f = term_sum(family, kShorUp[i], kShorRight[i], 1.0, "");
        f.label = "E" + std::to_string(i + 1);
        sc.fields.push_back(std::move(f));
        for (int id : kShorUp[i]) mark(sc.expected_m, i, id, true);
        for (int id : kShorRight[i]) mark(sc.expected_m, i, id, false);
    }
    sc.register_split = make_register_split(8, 4);
    sc.reference_terms = modexp_target_terms();
    return sc;
}

std::vector<StateTerm> modexp_target_terms() {
    std::vector<StateTerm> terms;
    for (unsigned x = 0; x < 16; ++x) {
        unsigned f = 1;
        for (unsigned k = 0; k < x; ++k) f = (f * 7) % 15;
        StateTerm t;
        for (int b = 3; b >= 0; --b)
            t.bits.push_back(static_cast<std::uint8_t>((x >> b) & 1));
        for (int b = 3; b >= 0; --b)
            t.bits.push_back(static_cast<std::uint8_t>((f >> b) & 1));
        terms.push_back(std::move(t));
    }
    return terms;
}

Scenario build_scenario(const std::string& name,
                        const std::vector<PhaseSequence>& family) {
    if (name == "product") return build_product({1, 2, 3}, family);
    if (name == "ghz") return build_ghz({1, 2, 3}, family);
    if (name == "w") return build_w({1, 2, 3}, family);
    if (name == "shor15") return build_shor15(family);
    throw std::invalid_argument("unknown scenario '" + name +
                                "' (want product, ghz, w or shor15)");
}

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {"product", "ghz", "w", "shor15"};
    return names;
}

}  // namespace pseudophase

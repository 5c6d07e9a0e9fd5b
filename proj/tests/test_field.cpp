#include <cmath>

#include "doctest.h"
#include "pseudophase/field.hpp"

using namespace pseudophase;

TEST_CASE("source fields are constant phasors") {
    OpticalField f = make_source(2.0, 0.5, 4, "src");
    CHECK(f.label == "src");
    REQUIRE(f.slot_count() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(f.at(k, ModeId::Up) == Phasor(2.0, 0.0));
        CHECK(f.at(k, ModeId::Right) == Phasor(0.5, 0.0));
    }
    CHECK(field_energy(f) == doctest::Approx(4 * (4.0 + 0.25)));
}

TEST_CASE("source validation") {
    CHECK_THROWS_AS(make_source(1.0, 0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_source(-1.0, 0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_source(0.0, std::nan(""), 4), std::invalid_argument);
}

TEST_CASE("modulation applies exact quarter-turn phasors to both modes") {
    OpticalField f = make_source(1.0, 2.0, 4);
    PhaseSequence s{-1, {0, 1, 2, 3}};
    OpticalField g = modulate(f, s);
    CHECK(g.at(0, ModeId::Up) == Phasor(1.0, 0.0));
    CHECK(g.at(1, ModeId::Up) == Phasor(0.0, -1.0));   // times -i
    CHECK(g.at(2, ModeId::Up) == Phasor(-1.0, 0.0));
    CHECK(g.at(3, ModeId::Up) == Phasor(0.0, 1.0));
    CHECK(g.at(1, ModeId::Right) == Phasor(0.0, -2.0));
    CHECK(field_energy(g) == field_energy(f));
}

TEST_CASE("composed modulations add codes mod 4 exactly") {
    const auto& fam = builtin_family();
    OpticalField f = make_source(1.0, 1.0, 8);
    for (const auto& a : fam)
        for (const auto& b : fam) {
            OpticalField twice = modulate(modulate(f, a), b);
            PhaseSequence sum{-1, {}};
            for (std::size_t k = 0; k < 8; ++k)
                sum.codes.push_back(
                    static_cast<std::uint8_t>((a.codes[k] + b.codes[k]) % 4));
            OpticalField once = modulate(f, sum);
            for (std::size_t k = 0; k < 8; ++k)
                for (ModeId m : kModes)
                    CHECK(twice.at(k, m) == once.at(k, m));  // bit-exact
        }
}

TEST_CASE("composed binary modulations act like the xor member per slot") {
    // The mod-4 sum differs from the xor only where both codes are 1, i.e.
    // by a factor of -1; slot intensities and code-difference parities (all
    // the detection pipeline sees) are identical.
    const auto& fam = builtin_family();
    OpticalField f = make_source(1.0, 0.0, 8);
    for (const auto& a : fam)
        for (const auto& b : fam) {
            OpticalField twice = modulate(modulate(f, a), b);
            OpticalField once = modulate(f, xor_compose(a, b));
            for (std::size_t k = 0; k < 8; ++k) {
                double sign = (a.codes[k] == 1 && b.codes[k] == 1) ? -1.0 : 1.0;
                CHECK(twice.at(k, ModeId::Up) ==
                      sign * once.at(k, ModeId::Up));  // bit-exact
            }
        }
}

TEST_CASE("modulate rejects length mismatch") {
    OpticalField f = make_source(1.0, 0.0, 4);
    CHECK_THROWS_AS(modulate(f, builtin_family()[1]), std::invalid_argument);
}

TEST_CASE("superpose, scale and projection") {
    OpticalField a = make_source(1.0, 0.0, 2);
    OpticalField b = make_source(0.0, 3.0, 2);
    OpticalField s = superpose(a, b);
    CHECK(s.at(0, ModeId::Up) == Phasor(1.0, 0.0));
    CHECK(s.at(0, ModeId::Right) == Phasor(3.0, 0.0));

    OpticalField half = scale(s, Phasor(0.5, 0.0));
    CHECK(half.at(1, ModeId::Right) == Phasor(1.5, 0.0));

    OpticalField up = mode_project(s, ModeId::Up);
    CHECK(up.at(0, ModeId::Right) == Phasor(0.0, 0.0));
    CHECK(up.at(0, ModeId::Up) == Phasor(1.0, 0.0));
    OpticalField right = mode_project(s, ModeId::Right);
    CHECK(right.at(0, ModeId::Up) == Phasor(0.0, 0.0));

    CHECK(field_energy(up) + field_energy(right) ==
          doctest::Approx(field_energy(s)));

    OpticalField c = make_source(1.0, 0.0, 3);
    CHECK_THROWS_AS(superpose(a, c), std::invalid_argument);
}

TEST_CASE("approx_equal compares slotwise") {
    OpticalField a = make_source(1.0, 0.0, 2);
    OpticalField b = make_source(1.0, 1e-13, 2);
    CHECK(approx_equal(a, b, 1e-12));
    CHECK_FALSE(approx_equal(a, b, 1e-14));
    CHECK_FALSE(approx_equal(a, make_source(1.0, 0.0, 3), 1.0));
}

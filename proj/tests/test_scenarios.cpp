#include <set>
#include <string>

#include "doctest.h"
#include "pseudophase/io.hpp"
#include "pseudophase/scenarios.hpp"

using namespace pseudophase;

namespace {

const std::string kData = PSEUDOPHASE_DATA_DIR;

std::set<std::string> bit_strings(const std::vector<StateTerm>& terms) {
    std::set<std::string> out;
    for (const auto& t : terms) {
        std::string b;
        for (auto bit : t.bits) b += char('0' + bit);
        out.insert(b);
    }
    return out;
}

void check_branch(const CorrelationTable& t, std::size_t field, ModeId mode,
                  const std::vector<double>& expect) {
    auto b = t.branch(field, mode);
    REQUIRE(b.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(b[i] == doctest::Approx(expect[i]).epsilon(1e-12));
}

}  // namespace

TEST_CASE("product scenario: every field answers to exactly one sequence") {
    Scenario sc = build_product();
    REQUIRE(sc.fields.size() == 3);
    CHECK(sc.fields[0].label == "E1");

    CorrelationTable t = correlation_scan(sc.fields, builtin_family());
    // half-amplitude two-mode fields: peak 4.5, floor 2.5 on both branches
    check_branch(t, 0, ModeId::Up, {2.5, 4.5, 2.5, 2.5, 2.5, 2.5, 2.5, 2.5});
    check_branch(t, 0, ModeId::Right, {2.5, 4.5, 2.5, 2.5, 2.5, 2.5, 2.5, 2.5});
    check_branch(t, 2, ModeId::Up, {2.5, 2.5, 2.5, 4.5, 2.5, 2.5, 2.5, 2.5});

    ModeMatrix m = extract_m_matrix(t);
    CHECK(same_entries(m, sc.expected_m));

    SuperpositionState s = reconstruct_terms(m);
    CHECK(s.terms.size() == 8);  // independent fields: all bit patterns
}

TEST_CASE("ghz scenario: cyclic mode structure gives the two aligned terms") {
    Scenario sc = build_ghz();
    CorrelationTable t = correlation_scan(sc.fields, builtin_family());
    check_branch(t, 0, ModeId::Up, {2.5, 4.5, 2.5, 2.5, 2.5, 2.5, 2.5, 2.5});
    check_branch(t, 0, ModeId::Right, {2.5, 2.5, 4.5, 2.5, 2.5, 2.5, 2.5, 2.5});
    check_branch(t, 2, ModeId::Up, {2.5, 2.5, 2.5, 4.5, 2.5, 2.5, 2.5, 2.5});
    check_branch(t, 2, ModeId::Right, {2.5, 4.5, 2.5, 2.5, 2.5, 2.5, 2.5, 2.5});

    ModeMatrix m = extract_m_matrix(t);
    CHECK(same_entries(m, sc.expected_m));
    CHECK(bit_strings(reconstruct_terms(m).terms) ==
          std::set<std::string>{"000", "111"});
}

TEST_CASE("w scenario: one up peak, two right peaks, weight-two terms") {
    Scenario sc = build_w();
    CorrelationTable t = correlation_scan(sc.fields, builtin_family());
    for (std::size_t f = 0; f < 3; ++f) {
        check_branch(t, f, ModeId::Up, {4, 8, 4, 4, 4, 4, 4, 4});
        check_branch(t, f, ModeId::Right, {22, 22, 30, 30, 22, 22, 22, 22});
    }
    ModeMatrix m = extract_m_matrix(t);
    CHECK(same_entries(m, sc.expected_m));
    CHECK(bit_strings(reconstruct_terms(m).terms) ==
          std::set<std::string>{"011", "101", "110"});
}

TEST_CASE("scenario builders accept permuted distinct ids") {
    Scenario sc = build_ghz({3, 5, 7});
    CorrelationTable t = correlation_scan(sc.fields, builtin_family());
    ModeMatrix m = extract_m_matrix(t);
    CHECK(same_entries(m, sc.expected_m));
    CHECK(m.at(0, 3) == MPresence::UpOnly);
    CHECK(m.at(0, 5) == MPresence::RightOnly);
    CHECK(m.at(2, 7) == MPresence::UpOnly);
    CHECK(m.at(2, 3) == MPresence::RightOnly);

    CHECK_THROWS_AS(build_product({1, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(build_w({1, 2, 9}), std::invalid_argument);
    CHECK_THROWS_AS(build_scenario("nonsense"), std::invalid_argument);
}

TEST_CASE("order-finding scenario reproduces the published presence matrix") {
    Scenario sc = build_shor15();
    REQUIRE(sc.fields.size() == 8);

    CorrelationTable t = correlation_scan(sc.fields, builtin_family());
    // spot checks against hand-computed two-level tables
    check_branch(t, 0, ModeId::Up, {214, 230, 230, 230, 230, 214, 214, 214});
    check_branch(t, 4, ModeId::Up, {80, 80, 80, 80, 80, 92, 92, 92});
    check_branch(t, 4, ModeId::Right, {8, 4, 4, 4, 4, 4, 4, 4});
    check_branch(t, 5, ModeId::Right, {92, 92, 80, 80, 80, 80, 80, 92});

    ModeMatrix m = extract_m_matrix(t);
    CHECK(same_entries(m, sc.expected_m));

    ModeMatrix golden = parse_m_matrix_file(kData + "/shor15.m");
    CHECK(same_entries(m, golden));
}

TEST_CASE("order-finding reconstruction matches the frozen matching fixture") {
    Scenario sc = build_shor15();
    CorrelationTable t = correlation_scan(sc.fields, builtin_family());
    SuperpositionState s = reconstruct_terms(extract_m_matrix(t));
    s.register_split = sc.register_split;

    auto fixture = parse_state_terms_file(kData + "/shor15_matching_terms.txt");
    REQUIRE(s.terms.size() == fixture.size());  // 156 patterns
    for (std::size_t i = 0; i < fixture.size(); ++i)
        CHECK(s.terms[i].bits == fixture[i].bits);  // both lexicographic

    s.bit_order = BitOrder::MsbFirst;
    CHECK(extract_period(s).period == 11);
    s.bit_order = BitOrder::LsbFirst;
    CHECK(extract_period(s).period == 11);
}

TEST_CASE("idealized order-finding target has period four") {
    auto terms = modexp_target_terms();
    REQUIRE(terms.size() == 16);

    auto fixture = parse_state_terms_file(kData + "/shor15_target_state.txt");
    REQUIRE(fixture.size() == 16);
    for (std::size_t i = 0; i < 16; ++i) CHECK(terms[i].bits == fixture[i].bits);

    SuperpositionState s;
    s.terms = terms;
    s.register_split = make_register_split(8, 4);
    s.bit_order = BitOrder::MsbFirst;
    PeriodReport rep = extract_period(s);
    CHECK(rep.period == 4);
    std::set<unsigned long> fvals;
    for (const auto& [f, xs] : rep.groups) fvals.insert(f);
    CHECK(fvals == std::set<unsigned long>{1, 4, 7, 13});
    CHECK(rep.groups.at(1) == std::vector<unsigned long>{0, 4, 8, 12});
    CHECK(rep.groups.at(7) == std::vector<unsigned long>{1, 5, 9, 13});

    // the idealized terms are not all reachable by distinct-sequence matching
    Scenario sc = build_shor15();
    CorrelationTable t = correlation_scan(sc.fields, builtin_family());
    auto matched = bit_strings(reconstruct_terms(extract_m_matrix(t)).terms);
    std::size_t covered = 0;
    for (const auto& term : terms) {
        std::string b;
        for (auto bit : term.bits) b += char('0' + bit);
        if (matched.count(b)) ++covered;
    }
    CHECK(covered == 12);  // the four f=0001 patterns admit no witness
}

TEST_CASE("order-finding scenario carries its register split and reference") {
    Scenario sc = build_shor15();
    REQUIRE(sc.register_split.has_value());
    CHECK(sc.register_split->x_fields == std::vector<std::size_t>{0, 1, 2, 3});
    REQUIRE(sc.reference_terms.has_value());
    CHECK(sc.reference_terms->size() == 16);
    CHECK(sc.sequence_ids == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});

    std::vector<PhaseSequence> tiny(builtin_family().begin(),
                                    builtin_family().begin() + 4);
    CHECK_THROWS_AS(build_shor15(tiny), std::invalid_argument);
}

TEST_CASE("scenario name dispatch") {
    for (const auto& name : scenario_names()) {
        Scenario sc = build_scenario(name);
        CHECK(sc.name == name);
        CHECK_FALSE(sc.fields.empty());
    }
}

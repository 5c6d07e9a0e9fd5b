#include <set>
#include <sstream>

#include "doctest.h"
#include "pseudophase/analysis.hpp"
#include "pseudophase/io.hpp"

using namespace pseudophase;

TEST_CASE("branch classification: peaks, flat and dark branches") {
    std::vector<double> peaked = {8, 4, 4, 4, 4, 4, 4, 4};
    CHECK(classify_branch(peaked) == std::vector<std::size_t>{0});

    std::vector<double> two = {22, 22, 30, 30, 22, 22, 22, 22};
    CHECK(classify_branch(two) == std::vector<std::size_t>{2, 3});

    std::vector<double> dark(8, 0.0);
    CHECK(classify_branch(dark).empty());

    std::vector<double> flat(8, 5.5);
    CHECK(classify_branch(flat).empty());

    // spread below epsilon_flat counts as flat, above does not
    std::vector<double> barely = {1.0, 0.96};
    CHECK(classify_branch(barely, 0.05, 0.5).empty());
    std::vector<double> enough = {1.0, 0.94};
    CHECK(classify_branch(enough, 0.05, 0.5) == std::vector<std::size_t>{0});

    // threshold is strict: exactly theta is not present
    std::vector<double> mid = {1.0, 0.5, 0.0};
    CHECK(classify_branch(mid, 0.05, 0.5) == std::vector<std::size_t>{0});
}

TEST_CASE("branch classification is scale invariant") {
    std::vector<double> v = {230, 214, 214, 230, 214, 214, 230, 214};
    auto base = classify_branch(v);
    for (double s : {0.125, 3.0, 1e6}) {
        std::vector<double> scaled;
        for (double x : v) scaled.push_back(x * s);
        CHECK(classify_branch(scaled) == base);
    }
    CHECK(base == std::vector<std::size_t>{0, 3, 6});
}

TEST_CASE("branch classification validates inputs") {
    std::vector<double> v = {1.0, 2.0};
    CHECK_THROWS_AS(classify_branch({}, 0.05, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(classify_branch(v, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(classify_branch(v, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(classify_branch(v, 0.05, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(classify_branch(v, 0.05, 1.0), std::invalid_argument);
    std::vector<double> neg = {1.0, -0.5};
    CHECK_THROWS_AS(classify_branch(neg, 0.05, 0.5), std::invalid_argument);
}

namespace {

// 2 fields x 3 sequences with hand-placed peaks.
CorrelationTable toy_table() {
    CorrelationTable t;
    t.field_labels = {"E1", "E2"};
    t.sequence_ids = {0, 1, 2};
    t.values = {
        8, 4, 4,  // E1 up: peak at 0
        4, 4, 8,  // E1 right: peak at 2
        0, 0, 0,  // E2 up: dark
        4, 8, 8,  // E2 right: peaks at 1 and 2
    };
    return t;
}

}  // namespace

TEST_CASE("presence matrix extraction merges the two mode branches") {
    ModeMatrix m = extract_m_matrix(toy_table());
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 3);
    CHECK(m.at(0, 0) == MPresence::UpOnly);
    CHECK(m.at(0, 1) == MPresence::None);
    CHECK(m.at(0, 2) == MPresence::RightOnly);
    CHECK(m.at(1, 0) == MPresence::None);
    CHECK(m.at(1, 1) == MPresence::RightOnly);
    CHECK(m.at(1, 2) == MPresence::RightOnly);

    // same sequence peaking on both branches shows as Both
    CorrelationTable t = toy_table();
    t.values = {8, 4, 4, 8, 4, 4, 4, 8, 4, 4, 8, 4};
    ModeMatrix b = extract_m_matrix(t);
    CHECK(b.at(0, 0) == MPresence::Both);
    CHECK(b.at(1, 1) == MPresence::Both);
}

TEST_CASE("presence matrix text form round-trips") {
    ModeMatrix m = extract_m_matrix(toy_table());
    std::string text = render_m_matrix(m);
    std::istringstream in(text);
    ModeMatrix back = parse_m_matrix(in);
    CHECK(same_entries(m, back));
    CHECK(diff_m_matrices(m, back).empty());
}

TEST_CASE("presence matrix parser rejects malformed input") {
    auto parse = [](const char* text) {
        std::istringstream in(text);
        return parse_m_matrix(in);
    };
    CHECK_THROWS_WITH_AS(parse("0 (1,0) banana\n"), doctest::Contains("line 1"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse("0 0\n0\n"), doctest::Contains("line 2"),
                         std::runtime_error);
    CHECK_THROWS_AS(parse("# only a comment\n"), std::runtime_error);
}

TEST_CASE("matrix diff pinpoints the first mismatch") {
    ModeMatrix a = extract_m_matrix(toy_table());
    ModeMatrix b = a;
    b.at(1, 1) = MPresence::Both;
    std::string d = diff_m_matrices(a, b);
    CHECK(d.find("row 2") != std::string::npos);
    CHECK(d.find("(0,1)") != std::string::npos);
    CHECK(d.find("(1,1)") != std::string::npos);
    CHECK_FALSE(same_entries(a, b));
}

namespace {

ModeMatrix matrix_from(const char* text) {
    std::istringstream in(text);
    return parse_m_matrix(in);
}

std::set<std::string> bit_strings(const SuperpositionState& s) {
    std::set<std::string> out;
    for (const auto& t : s.terms) {
        std::string b;
        for (auto bit : t.bits) b += char('0' + bit);
        out.insert(b);
    }
    return out;
}

}  // namespace

TEST_CASE("reconstruction of the cyclic matrix yields the two aligned terms") {
    ModeMatrix m = matrix_from(
        "0 (1,0) (0,1) 0\n"
        "0 0     (1,0) (0,1)\n"
        "0 (0,1) 0     (1,0)\n");
    SuperpositionState s = reconstruct_terms(m);
    CHECK(bit_strings(s) == std::set<std::string>{"000", "111"});
    for (const auto& t : s.terms) {
        std::set<int> distinct(t.witness_sequences.begin(),
                               t.witness_sequences.end());
        CHECK(distinct.size() == t.witness_sequences.size());
    }
}

TEST_CASE("reconstruction of the shared-column matrix yields weight-two terms") {
    ModeMatrix m = matrix_from(
        "0 (1,0) (0,1) (0,1)\n"
        "0 (1,0) (0,1) (0,1)\n"
        "0 (1,0) (0,1) (0,1)\n");
    SuperpositionState s = reconstruct_terms(m);
    CHECK(bit_strings(s) == std::set<std::string>{"011", "101", "110"});
}

TEST_CASE("reconstruction of a diagonal both-mode matrix is unconstrained") {
    ModeMatrix m = matrix_from(
        "(1,1) 0 0\n"
        "0 (1,1) 0\n"
        "0 0 (1,1)\n");
    SuperpositionState s = reconstruct_terms(m);
    CHECK(s.terms.size() == 8);
    CHECK(bit_strings(s).count("000") == 1);
    CHECK(bit_strings(s).count("111") == 1);
    // lexicographic order
    CHECK(s.terms.front().bits == std::vector<std::uint8_t>{0, 0, 0});
    CHECK(s.terms.back().bits == std::vector<std::uint8_t>{1, 1, 1});
}

TEST_CASE("reconstruction can be empty, with per-field diagnostics") {
    // two fields but only one usable column
    ModeMatrix m = matrix_from(
        "(1,1) 0 0\n"
        "(1,1) 0 0\n");
    SuperpositionState s = reconstruct_terms(m);
    CHECK(s.terms.empty());
    auto opts = presence_options(m);
    CHECK(opts[0][0] == 1);
    CHECK(opts[0][1] == 1);
    std::string text = render_state(s, &m);
    CHECK(text.find("terms: 0") != std::string::npos);
    CHECK(text.find("candidate") != std::string::npos);

    // a fully dark row blocks everything
    ModeMatrix dark = matrix_from(
        "0 0\n"
        "(1,1) (1,1)\n");
    CHECK(reconstruct_terms(dark).terms.empty());
    CHECK(presence_options(dark)[0][0] == 0);
}

TEST_CASE("register values respect bit order") {
    StateTerm t;
    t.bits = {1, 0, 1, 1};  // msb: 11, lsb: 13
    std::vector<std::size_t> all = {0, 1, 2, 3};
    CHECK(register_value(t, all, BitOrder::MsbFirst) == 11);
    CHECK(register_value(t, all, BitOrder::LsbFirst) == 13);
    std::vector<std::size_t> out_of_range = {9};
    CHECK_THROWS_AS(register_value(t, out_of_range, BitOrder::MsbFirst),
                    std::invalid_argument);
}

TEST_CASE("register split helper") {
    RegisterSplit s = make_register_split(8, 4);
    CHECK(s.x_fields == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(s.f_fields == std::vector<std::size_t>{4, 5, 6, 7});
    CHECK_THROWS_AS(make_register_split(8, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_register_split(8, 8), std::invalid_argument);
}

TEST_CASE("period extraction groups terms by the f register") {
    SuperpositionState s;
    s.bit_order = BitOrder::MsbFirst;
    s.register_split = make_register_split(4, 2);
    for (auto bits : {std::vector<std::uint8_t>{0, 0, 0, 1},
                      std::vector<std::uint8_t>{0, 1, 1, 0},
                      std::vector<std::uint8_t>{1, 0, 0, 1},
                      std::vector<std::uint8_t>{1, 1, 1, 0}}) {
        StateTerm t;
        t.bits = bits;
        s.terms.push_back(t);
    }
    PeriodReport rep = extract_period(s);
    CHECK(rep.period == 2);
    REQUIRE(rep.groups.count(1) == 1);
    REQUIRE(rep.groups.count(2) == 1);
    CHECK(rep.groups.at(1) == std::vector<unsigned long>{0, 2});
    CHECK(rep.groups.at(2) == std::vector<unsigned long>{1, 3});

    std::string text = render_period(rep);
    CHECK(text.find("period r = 2") != std::string::npos);
    CHECK(text.find("f=1: x=0,2") != std::string::npos);
}

TEST_CASE("period extraction rejects unusable states") {
    SuperpositionState empty;
    empty.register_split = make_register_split(4, 2);
    CHECK_THROWS_AS(extract_period(empty), std::invalid_argument);

    SuperpositionState no_split;
    StateTerm t;
    t.bits = {0, 1};
    no_split.terms.push_back(t);
    CHECK_THROWS_AS(extract_period(no_split), std::invalid_argument);
}

TEST_CASE("state terms parse from fixture text") {
    std::istringstream in(
        "# comment\n"
        "0101  x=1 f=1  via 2,3\n"
        "1010\n");
    auto terms = parse_state_terms(in);
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].bits == std::vector<std::uint8_t>{0, 1, 0, 1});
    CHECK(terms[1].bits == std::vector<std::uint8_t>{1, 0, 1, 0});

    std::istringstream bad("01x1\n");
    CHECK_THROWS_AS(parse_state_terms(bad), std::runtime_error);
    std::istringstream ragged("01\n011\n");
    CHECK_THROWS_AS(parse_state_terms(ragged), std::runtime_error);
}

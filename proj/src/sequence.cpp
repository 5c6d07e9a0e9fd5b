#include "pseudophase/sequence.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pseudophase {

bool PhaseSequence::is_binary() const {
    return std::all_of(codes.begin(), codes.end(),
                       [](std::uint8_t c) { return c <= 1; });
}

double PhaseSequence::phase_at(std::size_t k) const {
    if (k >= codes.size())
        throw std::out_of_range("phase_at: slot " + std::to_string(k) +
                                " out of range (length " +
                                std::to_string(codes.size()) + ")");
    return codes[k] * (std::numbers::pi / 2.0);
}

bool operator==(const PhaseSequence& a, const PhaseSequence& b) {
    return a.codes == b.codes;
}

const std::vector<PhaseSequence>& builtin_family() {
    static const std::vector<PhaseSequence> family = {
        {0, {0, 0, 0, 0, 0, 0, 0, 0}},
        {1, {1, 0, 0, 1, 0, 1, 1, 0}},
        {2, {1, 1, 0, 0, 1, 0, 1, 0}},
        {3, {1, 1, 1, 0, 0, 1, 0, 0}},
        {4, {0, 1, 1, 1, 0, 0, 1, 0}},
        {5, {1, 0, 1, 1, 1, 0, 0, 0}},
        {6, {0, 1, 0, 1, 1, 1, 0, 0}},
        {7, {0, 0, 1, 0, 1, 1, 1, 0}},
    };
    return family;
}

static void require_same_length(const PhaseSequence& a, const PhaseSequence& b,
                                const char* what) {
    if (a.codes.size() != b.codes.size())
        throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                    std::to_string(a.codes.size()) + " vs " +
                                    std::to_string(b.codes.size()) + ")");
}

int agreement_count(const PhaseSequence& a, const PhaseSequence& b) {
    require_same_length(a, b, "agreement_count");
    int n = 0;
    for (std::size_t k = 0; k < a.codes.size(); ++k)
        if (a.codes[k] == b.codes[k]) ++n;
    return n;
}

PhaseSequence xor_compose(const PhaseSequence& a, const PhaseSequence& b) {
    require_same_length(a, b, "xor_compose");
    if (!a.is_binary() || !b.is_binary())
        throw std::invalid_argument("xor_compose: inputs must be binary (codes 0/1)");
    PhaseSequence r;
    r.codes.resize(a.codes.size());
    for (std::size_t k = 0; k < a.codes.size(); ++k)
        r.codes[k] = a.codes[k] ^ b.codes[k];
    return r;
}

FamilyReport verify_family(const std::vector<PhaseSequence>& seqs) {
    if (seqs.empty())
        throw std::invalid_argument("verify_family: empty family");
    const std::size_t len = seqs[0].codes.size();
    for (const auto& s : seqs)
        if (s.codes.size() != len)
            throw std::invalid_argument("verify_family: sequences have unequal lengths");

    FamilyReport rep;
    rep.balanced.reserve(seqs.size());
    for (const auto& s : seqs) {
        std::size_t zeros = std::count(s.codes.begin(), s.codes.end(), 0);
        rep.balanced.push_back(s.is_binary() && 2 * zeros == len);
    }

    rep.pairwise_agreements.assign(seqs.size(), std::vector<int>(seqs.size(), 0));
    for (std::size_t i = 0; i < seqs.size(); ++i)
        for (std::size_t j = 0; j < seqs.size(); ++j)
            rep.pairwise_agreements[i][j] = agreement_count(seqs[i], seqs[j]);

    rep.closed_under_xor = true;
    for (std::size_t i = 0; i < seqs.size() && rep.closed_under_xor; ++i) {
        if (!seqs[i].is_binary()) {
            rep.closed_under_xor = false;
            break;
        }
        for (std::size_t j = 0; j < seqs.size(); ++j) {
            PhaseSequence x = xor_compose(seqs[i], seqs[j]);
            bool found = std::any_of(seqs.begin(), seqs.end(),
                                     [&](const PhaseSequence& s) { return s == x; });
            if (!found) {
                rep.closed_under_xor = false;
                break;
            }
        }
    }
    return rep;
}

bool FamilyReport::all_pass(const std::vector<PhaseSequence>& seqs) const {
    if (seqs.empty() || seqs.size() != balanced.size()) return false;
    const std::size_t len = seqs[0].codes.size();
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        bool all_zero = std::all_of(seqs[i].codes.begin(), seqs[i].codes.end(),
                                    [](std::uint8_t c) { return c == 0; });
        if (!all_zero && !balanced[i]) return false;
    }
    for (std::size_t i = 0; i < seqs.size(); ++i)
        for (std::size_t j = 0; j < seqs.size(); ++j) {
            int want = (i == j) ? static_cast<int>(len)
                                : static_cast<int>(len) / 2;
            if (pairwise_agreements[i][j] != want) return false;
        }
    return closed_under_xor;
}

double analytic_correlation(const PhaseSequence& a, const PhaseSequence& b) {
    require_same_length(a, b, "analytic_correlation");
    // Phase difference per slot is a multiple of pi/2; cos of twice that is
    // +1 for even code difference, -1 for odd, so each slot adds 1 or 0.
    int sum = 0;
    for (std::size_t k = 0; k < a.codes.size(); ++k) {
        if (a.codes[k] > 3 || b.codes[k] > 3)
            throw std::invalid_argument("analytic_correlation: code out of range 0..3");
        int diff = (4 + a.codes[k] - b.codes[k]) % 4;
        if (diff % 2 == 0) ++sum;
    }
    return static_cast<double>(sum);
}

std::vector<PhaseSequence> load_family(std::istream& in) {
    std::vector<PhaseSequence> seqs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos)
            line.erase(pos);
        // skip blank lines
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

        PhaseSequence s;
        s.id = static_cast<int>(seqs.size());
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            std::size_t b = tok.find_first_not_of(" \t\r");
            std::size_t e = tok.find_last_not_of(" \t\r");
            if (b == std::string::npos)
                throw std::runtime_error("family line " + std::to_string(lineno) +
                                         ": empty code");
            tok = tok.substr(b, e - b + 1);
            int v;
            try {
                std::size_t used = 0;
                v = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw std::runtime_error("family line " + std::to_string(lineno) +
                                         ": bad code '" + tok + "'");
            }
            if (v < 0 || v > 3)
                throw std::runtime_error("family line " + std::to_string(lineno) +
                                         ": code " + std::to_string(v) +
                                         " out of range 0..3");
            s.codes.push_back(static_cast<std::uint8_t>(v));
        }
        if (s.codes.empty())
            throw std::runtime_error("family line " + std::to_string(lineno) +
                                     ": no codes");
        if (!seqs.empty() && s.codes.size() != seqs[0].codes.size())
            throw std::runtime_error("family line " + std::to_string(lineno) +
                                     ": length " + std::to_string(s.codes.size()) +
                                     " differs from first sequence (" +
                                     std::to_string(seqs[0].codes.size()) + ")");
        seqs.push_back(std::move(s));
    }
    if (seqs.empty())
        throw std::runtime_error("family file contains no sequences");
    return seqs;
}

std::vector<PhaseSequence> load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open family file: " + path);
    return load_family(in);
}

void save_family(std::ostream& out, const std::vector<PhaseSequence>& seqs) {
    for (const auto& s : seqs) {
        for (std::size_t k = 0; k < s.codes.size(); ++k) {
            if (k) out << ',';
            out << int(s.codes[k]);
        }
        out << '\n';
    }
}

}  // namespace pseudophase

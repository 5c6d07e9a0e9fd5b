#include "pseudophase/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pseudophase {

std::vector<std::size_t> classify_branch(std::span<const double> values,
                                         double epsilon_flat, double theta) {
    if (values.empty())
        throw std::invalid_argument("classify_branch: empty value list");
    if (!(epsilon_flat > 0.0 && epsilon_flat < 1.0))
        throw std::invalid_argument("classify_branch: epsilon_flat must be in (0,1)");
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("classify_branch: theta must be in (0,1)");

    double lo = values[0], hi = values[0];
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("classify_branch: values must be finite and >= 0");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::vector<std::size_t> present;
    if (hi == 0.0) return present;                 // dark branch
    if ((hi - lo) / hi < epsilon_flat) return present;  // flat branch
    for (std::size_t i = 0; i < values.size(); ++i)
        if ((values[i] - lo) / (hi - lo) > theta) present.push_back(i);
    return present;
}

bool same_entries(const ModeMatrix& a, const ModeMatrix& b) {
    return a.col_ids == b.col_ids && a.entries == b.entries &&
           a.rows() == b.rows();
}

ModeMatrix extract_m_matrix(const CorrelationTable& table, double epsilon_flat,
                            double theta) {
    ModeMatrix m;
    m.row_labels = table.field_labels;
    m.col_ids = table.sequence_ids;
    m.entries.assign(table.field_count() * table.sequence_count(),
                     MPresence::None);
    for (std::size_t f = 0; f < table.field_count(); ++f) {
        auto up = classify_branch(table.branch(f, ModeId::Up), epsilon_flat, theta);
        auto right =
            classify_branch(table.branch(f, ModeId::Right), epsilon_flat, theta);
        for (std::size_t s : up) m.at(f, s) = MPresence::UpOnly;
        for (std::size_t s : right)
            m.at(f, s) = (m.at(f, s) == MPresence::UpOnly) ? MPresence::Both
                                                           : MPresence::RightOnly;
    }
    return m;
}

static const char* presence_text(MPresence p) {
    switch (p) {
        case MPresence::None: return "0";
        case MPresence::UpOnly: return "(1,0)";
        case MPresence::RightOnly: return "(0,1)";
        case MPresence::Both: return "(1,1)";
    }
    return "?";
}

std::string render_m_matrix(const ModeMatrix& m) {
    std::ostringstream out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            std::string cell = presence_text(m.at(r, c));
            out << cell << std::string(5 - cell.size(), ' ');
        }
        out << '\n';
    }
    return out.str();
}

ModeMatrix parse_m_matrix(std::istream& in) {
    ModeMatrix m;
    std::string line;
    int lineno = 0;
    std::size_t ncols = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ss(line);
        std::vector<MPresence> row;
        std::string tok;
        while (ss >> tok) {
            if (tok == "0")
                row.push_back(MPresence::None);
            else if (tok == "(1,0)")
                row.push_back(MPresence::UpOnly);
            else if (tok == "(0,1)")
                row.push_back(MPresence::RightOnly);
            else if (tok == "(1,1)")
                row.push_back(MPresence::Both);
            else
                throw std::runtime_error("m-matrix line " + std::to_string(lineno) +
                                         ": bad entry '" + tok +
                                         "' (want 0, (1,0), (0,1) or (1,1))");
        }
        if (row.empty()) continue;
        if (ncols == 0)
            ncols = row.size();
        else if (row.size() != ncols)
            throw std::runtime_error("m-matrix line " + std::to_string(lineno) +
                                     ": row has " + std::to_string(row.size()) +
                                     " entries, expected " + std::to_string(ncols));
        m.entries.insert(m.entries.end(), row.begin(), row.end());
        m.row_labels.push_back("E" + std::to_string(m.row_labels.size() + 1));
    }
    if (m.row_labels.empty())
        throw std::runtime_error("m-matrix file contains no rows");
    m.col_ids.resize(ncols);
    for (std::size_t c = 0; c < ncols; ++c) m.col_ids[c] = static_cast<int>(c);
    return m;
}

ModeMatrix parse_m_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open m-matrix file: " + path);
    return parse_m_matrix(in);
}

std::string diff_m_matrices(const ModeMatrix& expected, const ModeMatrix& actual) {
    std::ostringstream out;
    if (expected.rows() != actual.rows() || expected.cols() != actual.cols()) {
        out << "shape mismatch: expected " << expected.rows() << "x"
            << expected.cols() << ", got " << actual.rows() << "x"
            << actual.cols() << '\n';
        return out.str();
    }
    for (std::size_t r = 0; r < expected.rows(); ++r)
        for (std::size_t c = 0; c < expected.cols(); ++c)
            if (expected.at(r, c) != actual.at(r, c))
                out << "row " << (r + 1) << " (field "
                    << (r < actual.row_labels.size() ? actual.row_labels[r]
                                                     : std::to_string(r + 1))
                    << "), sequence " << expected.col_ids[c] << ": expected "
                    << presence_text(expected.at(r, c)) << ", got "
                    << presence_text(actual.at(r, c)) << '\n';
    return out.str();
}

RegisterSplit make_register_split(std::size_t n_fields, std::size_t x_count) {
    if (x_count == 0 || x_count >= n_fields)
        throw std::invalid_argument(
            "make_register_split: x register must take between 1 and n-1 fields");
    RegisterSplit s;
    for (std::size_t i = 0; i < x_count; ++i) s.x_fields.push_back(i);
    for (std::size_t i = x_count; i < n_fields; ++i) s.f_fields.push_back(i);
    return s;
}

static bool bit_supported(MPresence p, int bit) {
    if (p == MPresence::Both) return true;
    return bit == 0 ? p == MPresence::UpOnly : p == MPresence::RightOnly;
}

std::vector<std::array<int, 2>> presence_options(const ModeMatrix& m) {
    std::vector<std::array<int, 2>> opts(m.rows(), {0, 0});
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            for (int bit : {0, 1})
                if (bit_supported(m.at(r, c), bit)) ++opts[r][bit];
    return opts;
}

namespace {

// Backtracking search for the lexicographically smallest distinct-column
// assignment realizing a fixed bit pattern (field i gets a column whose
// entry supports bit i).  Columns are tried in ascending order.
struct WitnessSearch {
    const ModeMatrix& m;
    const std::vector<std::uint8_t>& bits;
    std::vector<bool> used;
    std::vector<int> cols;

    bool assign(std::size_t field) {
        if (field == m.rows()) return true;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (used[c] || !bit_supported(m.at(field, c), bits[field])) continue;
            used[c] = true;
            cols.push_back(static_cast<int>(c));
            if (assign(field + 1)) return true;
            cols.pop_back();
            used[c] = false;
        }
        return false;
    }
};

}  // namespace

SuperpositionState reconstruct_terms(const ModeMatrix& m) {
    SuperpositionState state;
    if (m.rows() == 0 || m.cols() == 0) return state;
    // A field whose row supports neither bit kills every pattern.
    for (auto opts = presence_options(m); const auto& o : opts)
        if (o[0] == 0 && o[1] == 0) return state;

    // Walk all bit patterns in lexicographic order (bits[0] most significant).
    std::vector<std::uint8_t> bits(m.rows(), 0);
    for (;;) {
        WitnessSearch search{m, bits, std::vector<bool>(m.cols(), false), {}};
        if (search.assign(0)) {
            StateTerm t;
            t.bits = bits;
            for (int c : search.cols) t.witness_sequences.push_back(m.col_ids[c]);
            state.terms.push_back(std::move(t));
        }
        std::size_t i = m.rows();
        while (i > 0 && bits[i - 1] == 1) bits[--i] = 0;
        if (i == 0) break;
        bits[i - 1] = 1;
    }
    return state;
}

unsigned long register_value(const StateTerm& term,
                             const std::vector<std::size_t>& fields,
                             BitOrder order) {
    unsigned long v = 0;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        std::size_t f = fields[i];
        if (f >= term.bits.size())
            throw std::invalid_argument("register_value: field index " +
                                        std::to_string(f) + " out of range");
        std::size_t weight =
            order == BitOrder::MsbFirst ? fields.size() - 1 - i : i;
        if (term.bits[f]) v |= 1ul << weight;
    }
    return v;
}

PeriodReport extract_period(const SuperpositionState& s) {
    if (s.terms.empty())
        throw std::invalid_argument("extract_period: state has no terms");
    if (!s.register_split)
        throw std::invalid_argument("extract_period: state has no register split");
    PeriodReport rep;
    rep.bit_order = s.bit_order;
    for (const auto& t : s.terms) {
        unsigned long x = register_value(t, s.register_split->x_fields, s.bit_order);
        unsigned long f = register_value(t, s.register_split->f_fields, s.bit_order);
        rep.groups[f].push_back(x);
    }
    for (auto& [f, xs] : rep.groups) std::sort(xs.begin(), xs.end());
    rep.period = static_cast<int>(rep.groups.size());
    return rep;
}

}  // namespace pseudophase

#include "pseudophase/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pseudophase {

std::string format_number(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

std::string correlation_csv(const CorrelationTable& table) {
    std::ostringstream out;
    out << "field,mode,sequence,value\n";
    for (const CorrelationRecord& r : table.records())
        out << r.field_label << ',' << mode_name(r.mode) << ',' << r.lo_sequence
            << ',' << format_number(r.value) << '\n';
    return out.str();
}

std::string m_matrix_csv(const ModeMatrix& m) {
    std::ostringstream out;
    out << "field,sequence,up,right\n";
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            MPresence p = m.at(r, c);
            int up = (p == MPresence::UpOnly || p == MPresence::Both) ? 1 : 0;
            int right = (p == MPresence::RightOnly || p == MPresence::Both) ? 1 : 0;
            out << m.row_labels[r] << ',' << m.col_ids[c] << ',' << up << ','
                << right << '\n';
        }
    return out.str();
}

std::string render_state(const SuperpositionState& s,
                         const ModeMatrix* matrix_for_diagnostics) {
    std::ostringstream out;
    out << "# terms: " << s.terms.size() << '\n';
    if (s.terms.empty()) {
        out << "# no bit pattern admits a distinct-sequence assignment\n";
        if (matrix_for_diagnostics) {
            auto opts = presence_options(*matrix_for_diagnostics);
            for (std::size_t r = 0; r < opts.size(); ++r)
                out << "# field " << matrix_for_diagnostics->row_labels[r]
                    << ": " << opts[r][0] << " candidate column(s) for bit 0, "
                    << opts[r][1] << " for bit 1\n";
        }
        return out.str();
    }
    for (const StateTerm& t : s.terms) {
        for (std::uint8_t b : t.bits) out << char('0' + b);
        if (s.register_split) {
            out << "  x=" << register_value(t, s.register_split->x_fields, s.bit_order)
                << " f=" << register_value(t, s.register_split->f_fields, s.bit_order);
        }
        if (!t.witness_sequences.empty()) {
            out << "  via ";
            for (std::size_t i = 0; i < t.witness_sequences.size(); ++i) {
                if (i) out << ',';
                out << t.witness_sequences[i];
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string render_period(const PeriodReport& rep) {
    std::ostringstream out;
    out << "period r = " << rep.period << '\n';
    out << "bit order: "
        << (rep.bit_order == BitOrder::MsbFirst ? "msb" : "lsb") << " first\n";
    for (const auto& [f, xs] : rep.groups) {
        out << "f=" << f << ": x=";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) out << ',';
            out << xs[i];
        }
        out << '\n';
    }
    return out.str();
}

std::string field_csv(const OpticalField& f) {
    std::ostringstream out;
    out << "slot,mode,re,im\n";
    for (std::size_t k = 0; k < f.slot_count(); ++k)
        for (ModeId m : kModes) {
            const Phasor& p = f.at(k, m);
            out << k << ',' << mode_name(m) << ',' << format_number(p.real())
                << ',' << format_number(p.imag()) << '\n';
        }
    return out.str();
}

std::string trace_csv(const DetectorTrace& t1, const DetectorTrace& t2) {
    std::ostringstream out;
    out << "slot,i1,i2\n";
    for (std::size_t k = 0; k < t1.samples.size(); ++k)
        out << k << ',' << format_number(t1.samples[k]) << ','
            << format_number(t2.samples[k]) << '\n';
    return out.str();
}

std::vector<StateTerm> parse_state_terms(std::istream& in) {
    std::vector<StateTerm> terms;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) continue;  // blank
        StateTerm t;
        for (char c : tok) {
            if (c != '0' && c != '1')
                throw std::runtime_error("terms line " + std::to_string(lineno) +
                                         ": bad bit pattern '" + tok + "'");
            t.bits.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        if (!terms.empty() && t.bits.size() != terms[0].bits.size())
            throw std::runtime_error("terms line " + std::to_string(lineno) +
                                     ": pattern width differs from first term");
        terms.push_back(std::move(t));
    }
    return terms;
}

std::vector<StateTerm> parse_state_terms_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open terms file: " + path);
    return parse_state_terms(in);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace pseudophase

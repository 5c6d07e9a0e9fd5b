#include "pseudophase/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pseudophase {

const char* component_kind_name(ComponentKind k) {
    switch (k) {
        case ComponentKind::Source: return "source";
        case ComponentKind::PhaseMod: return "phase_mod";
        case ComponentKind::Coupler2: return "coupler2";
        case ComponentKind::Pbs: return "pbs";
        case ComponentKind::Rotator: return "rotator";
        case ComponentKind::ModeFilter: return "mode_filter";
        case ComponentKind::Splitter: return "splitter";
        case ComponentKind::Combiner: return "combiner";
        case ComponentKind::Sink: return "sink";
    }
    return "?";
}

int Component::output_count() const {
    switch (kind) {
        case ComponentKind::Coupler2:
        case ComponentKind::Pbs: return 2;
        case ComponentKind::Splitter: return fanout;
        case ComponentKind::Sink: return 0;
        default: return 1;
    }
}

int Component::input_count() const {
    switch (kind) {
        case ComponentKind::Source: return 0;
        case ComponentKind::Coupler2:
        case ComponentKind::Pbs: return 2;
        case ComponentKind::Combiner: return -1;  // variadic, >= 2
        default: return 1;
    }
}

const Component* Network::find(const std::string& id) const {
    for (const auto& c : components)
        if (c.id == id) return &c;
    return nullptr;
}

bool structurally_equal(const Network& a, const Network& b) {
    if (a.components.size() != b.components.size()) return false;
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        const Component& x = a.components[i];
        const Component& y = b.components[i];
        if (x.id != y.id || x.kind != y.kind || x.amp_up != y.amp_up ||
            x.amp_right != y.amp_right || x.seq_id != y.seq_id ||
            x.angle_deg != y.angle_deg || x.pass != y.pass ||
            x.fanout != y.fanout || x.inputs != y.inputs)
            return false;
    }
    return true;
}

std::string Diagnostic::format(const std::string& filename) const {
    std::ostringstream out;
    out << filename << ':' << line << ':' << col << ": "
        << (severity == Severity::Error ? "error" : "warning") << ": " << message;
    return out.str();
}

bool ParseResult::ok() const {
    return std::none_of(diagnostics.begin(), diagnostics.end(),
                        [](const Diagnostic& d) {
                            return d.severity == Diagnostic::Severity::Error;
                        });
}

namespace {

struct Token {
    std::string text;
    int col = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
               line[i] != '\r')
            ++i;
        toks.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return toks;
}

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin() + 1, s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

bool lookup_kind(const std::string& s, ComponentKind& out) {
    static const std::map<std::string, ComponentKind> kinds = {
        {"source", ComponentKind::Source},
        {"phase_mod", ComponentKind::PhaseMod},
        {"coupler2", ComponentKind::Coupler2},
        {"pbs", ComponentKind::Pbs},
        {"rotator", ComponentKind::Rotator},
        {"mode_filter", ComponentKind::ModeFilter},
        {"splitter", ComponentKind::Splitter},
        {"combiner", ComponentKind::Combiner},
        {"sink", ComponentKind::Sink},
    };
    auto it = kinds.find(s);
    if (it == kinds.end()) return false;
    out = it->second;
    return true;
}

struct Parser {
    ParseResult& res;

    void error(int line, int col, std::string msg) {
        res.diagnostics.push_back(
            {Diagnostic::Severity::Error, line, col, std::move(msg)});
    }
    void warn(int line, int col, std::string msg) {
        res.diagnostics.push_back(
            {Diagnostic::Severity::Warning, line, col, std::move(msg)});
    }

    bool parse_double(const std::string& s, double& out) {
        const char* end = s.data() + s.size();
        auto [p, ec] = std::from_chars(s.data(), end, out);
        return ec == std::errc() && p == end;
    }
    bool parse_int(const std::string& s, int& out) {
        const char* end = s.data() + s.size();
        auto [p, ec] = std::from_chars(s.data(), end, out);
        return ec == std::errc() && p == end;
    }

    // `id` or `id.out_k`
    bool parse_port_ref(const std::string& text, int line, int col, PortRef& ref) {
        std::string base = text;
        int port = 0;
        if (auto dot = text.find('.'); dot != std::string::npos) {
            base = text.substr(0, dot);
            std::string suffix = text.substr(dot + 1);
            if (suffix.rfind("out_", 0) != 0 ||
                !parse_int(suffix.substr(4), port) || port < 0) {
                error(line, col, "bad port reference '" + text +
                                     "' (want id or id.out_<k>)");
                return false;
            }
        }
        if (!is_identifier(base)) {
            error(line, col, "bad port reference '" + text +
                                 "' (component id must be an identifier)");
            return false;
        }
        ref = {base, port};
        return true;
    }

    void parse_inputs(const std::string& value, int line, int value_col,
                      Component& comp) {
        std::size_t pos = 0;
        while (pos <= value.size()) {
            std::size_t comma = value.find(',', pos);
            std::size_t end = (comma == std::string::npos) ? value.size() : comma;
            std::string ref_text = value.substr(pos, end - pos);
            int ref_col = value_col + static_cast<int>(pos);
            if (ref_text.empty()) {
                error(line, ref_col, "empty port reference in in= list");
            } else {
                PortRef ref;
                if (parse_port_ref(ref_text, line, ref_col, ref))
                    comp.inputs.push_back(ref);
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }

    void parse_component_line(const std::vector<Token>& toks, int line) {
        ComponentKind kind;
        if (!lookup_kind(toks[0].text, kind)) {
            error(line, toks[0].col,
                  "unknown component kind '" + toks[0].text + "'");
            return;
        }
        if (toks.size() < 2) {
            error(line, toks[0].col + static_cast<int>(toks[0].text.size()),
                  "missing component id after '" + toks[0].text + "'");
            return;
        }
        if (!is_identifier(toks[1].text)) {
            error(line, toks[1].col,
                  "invalid component id '" + toks[1].text + "'");
            return;
        }

        Component comp;
        comp.id = toks[1].text;
        comp.kind = kind;
        comp.line = line;
        comp.col = toks[0].col;

        std::vector<std::string> seen;
        bool bad = false;
        for (std::size_t t = 2; t < toks.size(); ++t) {
            const Token& tok = toks[t];
            auto eq = tok.text.find('=');
            if (eq == std::string::npos || eq == 0) {
                error(line, tok.col, "expected key=value, got '" + tok.text + "'");
                bad = true;
                continue;
            }
            std::string key = tok.text.substr(0, eq);
            std::string value = tok.text.substr(eq + 1);
            int value_col = tok.col + static_cast<int>(eq) + 1;
            if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
                error(line, tok.col, "duplicate key '" + key + "'");
                bad = true;
                continue;
            }
            seen.push_back(key);

            if (key == "in") {
                parse_inputs(value, line, value_col, comp);
                continue;
            }
            bool known = false;
            switch (kind) {
                case ComponentKind::Source:
                    if (key == "amp_up" || key == "amp_right") {
                        known = true;
                        double v;
                        if (!parse_double(value, v) || v < 0.0) {
                            error(line, value_col,
                                  "bad value '" + value + "' for " + key +
                                      " (want a number >= 0)");
                            bad = true;
                        } else {
                            (key == "amp_up" ? comp.amp_up : comp.amp_right) = v;
                        }
                    }
                    break;
                case ComponentKind::PhaseMod:
                    if (key == "seq") {
                        known = true;
                        int v;
                        if (!parse_int(value, v) || v < 0) {
                            error(line, value_col,
                                  "bad value '" + value +
                                      "' for seq (want an integer >= 0)");
                            bad = true;
                        } else {
                            comp.seq_id = v;
                        }
                    }
                    break;
                case ComponentKind::Rotator:
                    if (key == "angle") {
                        known = true;
                        double v;
                        if (!parse_double(value, v)) {
                            error(line, value_col,
                                  "bad value '" + value +
                                      "' for angle (want degrees)");
                            bad = true;
                        } else {
                            comp.angle_deg = v;
                        }
                    }
                    break;
                case ComponentKind::ModeFilter:
                    if (key == "pass") {
                        known = true;
                        if (value == "all")
                            comp.pass = ModeFilterPass::All;
                        else if (value == "up")
                            comp.pass = ModeFilterPass::UpOnly;
                        else if (value == "right")
                            comp.pass = ModeFilterPass::RightOnly;
                        else {
                            error(line, value_col,
                                  "bad value '" + value +
                                      "' for pass (want all, up or right)");
                            bad = true;
                        }
                    }
                    break;
                case ComponentKind::Splitter:
                    if (key == "n") {
                        known = true;
                        int v;
                        if (!parse_int(value, v) || v < 2) {
                            error(line, value_col,
                                  "bad value '" + value +
                                      "' for n (want an integer >= 2)");
                            bad = true;
                        } else {
                            comp.fanout = v;
                        }
                    }
                    break;
                default:
                    break;
            }
            if (!known) {
                error(line, tok.col, std::string(component_kind_name(kind)) +
                                         " has no parameter '" + key + "'");
                bad = true;
            }
        }

        auto missing = [&](const char* key) {
            error(line, toks[0].col, std::string(component_kind_name(kind)) +
                                         " '" + comp.id + "' requires " + key);
            bad = true;
        };
        if (kind == ComponentKind::PhaseMod && comp.seq_id < 0 &&
            std::find(seen.begin(), seen.end(), "seq") == seen.end())
            missing("seq=");
        if (kind == ComponentKind::Rotator &&
            std::find(seen.begin(), seen.end(), "angle") == seen.end())
            missing("angle=");
        if (kind == ComponentKind::ModeFilter &&
            std::find(seen.begin(), seen.end(), "pass") == seen.end())
            missing("pass=");
        if (kind == ComponentKind::Splitter && comp.fanout < 2 &&
            std::find(seen.begin(), seen.end(), "n") == seen.end())
            missing("n=");

        if (res.net.find(comp.id)) {
            error(line, toks[1].col, "duplicate component id '" + comp.id + "'");
            return;
        }
        if (!bad) res.net.components.push_back(std::move(comp));
    }

    void validate() {
        Network& net = res.net;
        if (net.components.empty()) {
            if (res.diagnostics.empty())
                error(1, 1, "netlist is empty");
            return;
        }
        if (!res.ok()) return;  // line-level problems first; skip graph checks

        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < net.components.size(); ++i)
            index[net.components[i].id] = i;

        bool have_sink = false;
        std::vector<int> consumers(net.components.size(), 0);
        for (const Component& c : net.components) {
            if (c.kind == ComponentKind::Sink) have_sink = true;
            if (c.kind == ComponentKind::Source) {
                if (!c.inputs.empty())
                    error(c.line, c.col, "source '" + c.id + "' takes no inputs");
            } else {
                int want = c.input_count();
                if (want < 0) {
                    if (c.inputs.size() < 2)
                        error(c.line, c.col,
                              "combiner '" + c.id + "' needs at least 2 inputs, got " +
                                  std::to_string(c.inputs.size()));
                } else if (static_cast<int>(c.inputs.size()) != want) {
                    error(c.line, c.col,
                          std::string(component_kind_name(c.kind)) + " '" + c.id +
                              "' expects " + std::to_string(want) +
                              " input(s), got " + std::to_string(c.inputs.size()));
                }
            }
            for (const PortRef& ref : c.inputs) {
                auto it = index.find(ref.component_id);
                if (it == index.end()) {
                    error(c.line, c.col, "reference to undeclared component '" +
                                             ref.component_id + "'");
                    continue;
                }
                const Component& target = net.components[it->second];
                if (ref.port >= target.output_count())
                    error(c.line, c.col,
                          std::string(component_kind_name(target.kind)) + " '" +
                              target.id + "' has no output port out_" +
                              std::to_string(ref.port));
                ++consumers[it->second];
            }
        }
        if (!have_sink)
            error(net.components.back().line, 1, "netlist declares no sink components");
        if (!res.ok()) return;

        // cycle check: depth-first, 0 = new, 1 = on stack, 2 = done
        std::vector<char> state(net.components.size(), 0);
        std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
            state[i] = 1;
            for (const PortRef& ref : net.components[i].inputs) {
                std::size_t j = index[ref.component_id];
                if (state[j] == 1) {
                    const Component& c = net.components[i];
                    error(c.line, c.col, "dependency cycle through '" +
                                             net.components[j].id + "' and '" +
                                             c.id + "'");
                    return false;
                }
                if (state[j] == 0 && !dfs(j)) return false;
            }
            state[i] = 2;
            return true;
        };
        for (std::size_t i = 0; i < net.components.size(); ++i)
            if (state[i] == 0 && !dfs(i)) break;

        for (std::size_t i = 0; i < net.components.size(); ++i) {
            const Component& c = net.components[i];
            if (c.kind != ComponentKind::Sink && consumers[i] == 0)
                warn(c.line, c.col, "outputs of '" + c.id + "' are never used");
        }
    }
};

}  // namespace

ParseResult parse_netlist(std::istream& in) {
    ParseResult res;
    Parser parser{res};
    std::string line;
    int lineno = 0;
    bool first_meaningful = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::vector<Token> toks = tokenize(line);
        if (toks.empty()) continue;
        if (first_meaningful && toks[0].text == "pseudophase-net") {
            first_meaningful = false;
            if (toks.size() != 2 || toks[1].text != "v1")
                parser.error(lineno, toks[0].col,
                             "unsupported netlist version (expected 'pseudophase-net v1')");
            continue;
        }
        first_meaningful = false;
        parser.parse_component_line(toks, lineno);
    }
    parser.validate();
    return res;
}

ParseResult parse_netlist(const std::string& text) {
    std::istringstream in(text);
    return parse_netlist(in);
}

ParseResult parse_netlist_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open netlist: " + path);
    return parse_netlist(in);
}

static std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

std::string pretty_print(const Network& net) {
    std::ostringstream out;
    out << "pseudophase-net v1\n";
    for (const Component& c : net.components) {
        out << component_kind_name(c.kind) << ' ' << c.id;
        switch (c.kind) {
            case ComponentKind::Source:
                out << " amp_up=" << format_double(c.amp_up)
                    << " amp_right=" << format_double(c.amp_right);
                break;
            case ComponentKind::PhaseMod:
                out << " seq=" << c.seq_id;
                break;
            case ComponentKind::Rotator:
                out << " angle=" << format_double(c.angle_deg);
                break;
            case ComponentKind::ModeFilter:
                out << " pass="
                    << (c.pass == ModeFilterPass::All
                            ? "all"
                            : c.pass == ModeFilterPass::UpOnly ? "up" : "right");
                break;
            case ComponentKind::Splitter:
                out << " n=" << c.fanout;
                break;
            default:
                break;
        }
        if (!c.inputs.empty()) {
            out << " in=";
            for (std::size_t i = 0; i < c.inputs.size(); ++i) {
                if (i) out << ',';
                out << c.inputs[i].component_id;
                if (c.inputs[i].port != 0) out << ".out_" << c.inputs[i].port;
            }
        }
        out << '\n';
    }
    return out.str();
}

std::vector<OpticalField> evaluate_network(const Network& net,
                                           const std::vector<PhaseSequence>& family) {
    if (family.empty())
        throw std::runtime_error("evaluate_network: empty sequence family");
    const std::size_t len = family[0].length();

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < net.components.size(); ++i)
        index[net.components[i].id] = i;

    std::vector<std::vector<OpticalField>> outputs(net.components.size());
    std::vector<char> state(net.components.size(), 0);

    std::function<void(std::size_t)> eval = [&](std::size_t i) {
        if (state[i] == 2) return;
        if (state[i] == 1)
            throw std::runtime_error("evaluate_network: dependency cycle at '" +
                                     net.components[i].id + "'");
        state[i] = 1;
        const Component& c = net.components[i];
        std::vector<OpticalField> ins;
        for (const PortRef& ref : c.inputs) {
            auto it = index.find(ref.component_id);
            if (it == index.end())
                throw std::runtime_error("evaluate_network: undeclared component '" +
                                         ref.component_id + "'");
            eval(it->second);
            const auto& outs = outputs[it->second];
            if (ref.port < 0 || static_cast<std::size_t>(ref.port) >= outs.size())
                throw std::runtime_error("evaluate_network: '" + ref.component_id +
                                         "' has no output port out_" +
                                         std::to_string(ref.port));
            ins.push_back(outs[static_cast<std::size_t>(ref.port)]);
        }
        switch (c.kind) {
            case ComponentKind::Source:
                outputs[i] = {make_source(c.amp_up, c.amp_right, len, c.id)};
                break;
            case ComponentKind::PhaseMod:
                if (c.seq_id < 0 || static_cast<std::size_t>(c.seq_id) >= family.size())
                    throw std::runtime_error(
                        "phase_mod '" + c.id + "': seq " + std::to_string(c.seq_id) +
                        " outside family of size " + std::to_string(family.size()));
                outputs[i] = {modulate(ins[0], family[static_cast<std::size_t>(c.seq_id)])};
                break;
            case ComponentKind::Coupler2: {
                auto [o1, o2] = coupler2(ins[0], ins[1]);
                outputs[i] = {std::move(o1), std::move(o2)};
                break;
            }
            case ComponentKind::Pbs: {
                auto [o1, o2] = pbs(ins[0], ins[1]);
                outputs[i] = {std::move(o1), std::move(o2)};
                break;
            }
            case ComponentKind::Rotator:
                outputs[i] = {rotator(ins[0], c.angle_deg)};
                break;
            case ComponentKind::ModeFilter:
                outputs[i] = {mode_filter(ins[0], c.pass)};
                break;
            case ComponentKind::Splitter:
                outputs[i] = splitter(ins[0], c.fanout);
                break;
            case ComponentKind::Combiner:
                outputs[i] = {combiner(ins)};
                break;
            case ComponentKind::Sink:
                ins[0].label = c.id;
                outputs[i] = {std::move(ins[0])};
                break;
        }
        state[i] = 2;
    };

    std::vector<OpticalField> sinks;
    for (std::size_t i = 0; i < net.components.size(); ++i) {
        eval(i);
        if (net.components[i].kind == ComponentKind::Sink)
            sinks.push_back(outputs[i][0]);
    }
    return sinks;
}

}  // namespace pseudophase

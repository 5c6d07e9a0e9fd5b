// Command-line front end: family inspection, canned demos, netlist runs and
// offline reconstruction.  Exit codes: 0 success / expectation met,
// 1 analysis mismatch (expected matrix differs, family check fails, period
// requested on an empty state), 2 usage, config, parse or I/O errors.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pseudophase/analysis.hpp"
#include "pseudophase/detection.hpp"
#include "pseudophase/io.hpp"
#include "pseudophase/netlist.hpp"
#include "pseudophase/scenarios.hpp"
#include "pseudophase/sequence.hpp"

namespace pp = pseudophase;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string family_path;
    double mu = 1.0;
    double tau_slot = 1.0;
    double epsilon_flat = 0.05;
    double theta = 0.5;
    std::string bit_order = "msb";
    std::string out_dir;
    bool dump_fields = false;
    bool traces = false;
    std::string expect_path;
    int split = 0;  // x-register size for period extraction, 0 = off
};

pp::BitOrder bit_order_of(const Options& opt) {
    return opt.bit_order == "lsb" ? pp::BitOrder::LsbFirst
                                  : pp::BitOrder::MsbFirst;
}

std::vector<pp::PhaseSequence> resolve_family(const Options& opt) {
    if (opt.family_path.empty()) return pp::builtin_family();
    return pp::load_family_file(opt.family_path);
}

ordered_json family_json(const Options& opt,
                         const std::vector<pp::PhaseSequence>& family) {
    ordered_json j;
    j["source"] = opt.family_path.empty() ? "builtin" : opt.family_path;
    ordered_json rows = ordered_json::array();
    for (const auto& s : family) {
        ordered_json row = ordered_json::array();
        for (auto c : s.codes) row.push_back(int(c));
        rows.push_back(row);
    }
    j["sequences"] = rows;
    return j;
}

ordered_json config_json(const std::string& command, const Options& opt,
                         const std::vector<pp::PhaseSequence>& family) {
    ordered_json j;
    j["tool"] = "pseudophase";
    j["format"] = 1;
    j["command"] = command;
    j["family"] = family_json(opt, family);
    j["mu"] = opt.mu;
    j["tau_slot"] = opt.tau_slot;
    j["epsilon_flat"] = opt.epsilon_flat;
    j["theta"] = opt.theta;
    j["bit_order"] = opt.bit_order;
    return j;
}

std::string path_join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

// Everything written under --out is a pure function of the inputs echoed in
// config.json; two identical invocations produce identical bytes.
void write_analysis_bundle(const Options& opt, ordered_json config,
                           const std::vector<pp::OpticalField>& fields,
                           const pp::CorrelationTable& table,
                           const pp::ModeMatrix& m,
                           const pp::SuperpositionState& state,
                           const std::string& period_text,
                           const std::vector<pp::PhaseSequence>& family) {
    const std::string& dir = opt.out_dir;
    pp::write_text_file(path_join(dir, "config.json"), config.dump(2) + "\n");
    pp::write_text_file(path_join(dir, "correlation.csv"),
                        pp::correlation_csv(table));
    pp::write_text_file(path_join(dir, "m_matrix.txt"), pp::render_m_matrix(m));
    pp::write_text_file(path_join(dir, "m_matrix.csv"), pp::m_matrix_csv(m));
    pp::write_text_file(path_join(dir, "state.txt"), pp::render_state(state, &m));
    if (!period_text.empty())
        pp::write_text_file(path_join(dir, "period.txt"), period_text);
    if (opt.dump_fields)
        for (const auto& f : fields)
            pp::write_text_file(path_join(dir, "fields/" + f.label + ".csv"),
                                pp::field_csv(f));
    if (opt.traces) {
        for (const auto& f : fields)
            for (pp::ModeId mode : pp::kModes)
                for (const auto& seq : family) {
                    pp::OpticalField sig = pp::mode_project(f, mode);
                    pp::OpticalField lo = pp::make_source(
                        mode == pp::ModeId::Up ? 1.0 : 0.0,
                        mode == pp::ModeId::Right ? 1.0 : 0.0, f.slot_count());
                    lo = pp::modulate(lo, seq);
                    auto [t1, t2] = pp::balanced_pair(sig, lo, opt.mu);
                    std::string name = "traces/" + f.label + "_" +
                                       pp::mode_name(mode) + "_lo" +
                                       std::to_string(seq.id) + ".csv";
                    pp::write_text_file(path_join(dir, name),
                                        pp::trace_csv(t1, t2));
                }
    }
}

int run_sequences(const Options& opt) {
    auto family = resolve_family(opt);
    for (const auto& s : family) {
        std::cout << s.id << ": ";
        for (std::size_t k = 0; k < s.codes.size(); ++k) {
            if (k) std::cout << ',';
            std::cout << int(s.codes[k]);
        }
        std::cout << '\n';
    }
    return 0;
}

int run_check_family(const Options& opt) {
    auto family = resolve_family(opt);
    pp::FamilyReport rep = pp::verify_family(family);
    for (std::size_t i = 0; i < family.size(); ++i)
        std::cout << "sequence " << family[i].id << ": "
                  << (rep.balanced[i] ? "balanced" : "not balanced") << '\n';
    std::cout << "pairwise agreements:\n";
    for (const auto& row : rep.pairwise_agreements) {
        for (std::size_t j = 0; j < row.size(); ++j)
            std::cout << (j ? " " : "  ") << row[j];
        std::cout << '\n';
    }
    std::cout << "closed under xor: " << (rep.closed_under_xor ? "yes" : "no")
              << '\n';
    bool pass = rep.all_pass(family);
    std::cout << "family check: " << (pass ? "pass" : "fail") << '\n';
    return pass ? 0 : 1;
}

// Scan prepared fields, extract the presence matrix, reconstruct, report.
// Shared by demo and run; `expected` drives the exit code when present.
int analyze_fields(const Options& opt,
                   const std::vector<pp::PhaseSequence>& family,
                   const std::vector<pp::OpticalField>& fields,
                   const pp::ModeMatrix* expected,
                   const std::optional<pp::RegisterSplit>& split,
                   const std::vector<pp::StateTerm>* reference_terms,
                   ordered_json config) {
    pp::CorrelationTable table =
        pp::correlation_scan(fields, family, opt.mu, opt.tau_slot);
    pp::ModeMatrix m = pp::extract_m_matrix(table, opt.epsilon_flat, opt.theta);

    pp::SuperpositionState state = pp::reconstruct_terms(m);
    state.bit_order = bit_order_of(opt);
    state.register_split = split;

    std::cout << "m matrix:\n" << pp::render_m_matrix(m);
    std::cout << "reconstructed terms: " << state.terms.size() << '\n';
    std::cout << pp::render_state(state, &m);

    std::string period_text;
    if (split) {
        std::ostringstream ptext;
        if (!state.terms.empty()) {
            pp::PeriodReport rep = pp::extract_period(state);
            if (reference_terms) ptext << "== reconstructed state ==\n";
            ptext << pp::render_period(rep);
        }
        if (reference_terms) {
            pp::SuperpositionState ref;
            ref.terms = *reference_terms;
            ref.register_split = split;
            ref.bit_order = bit_order_of(opt);
            ptext << "== reference target state ==\n"
                  << pp::render_period(pp::extract_period(ref));
        }
        period_text = ptext.str();
        std::cout << period_text;
    }

    if (!opt.out_dir.empty())
        write_analysis_bundle(opt, std::move(config), fields, table, m, state,
                              period_text, family);

    if (expected) {
        std::string diff = pp::diff_m_matrices(*expected, m);
        if (!diff.empty()) {
            std::cout << "m matrix mismatch:\n" << diff;
            return 1;
        }
        std::cout << "m matrix matches expected\n";
    }
    return 0;
}

int run_demo(const std::string& name, const Options& opt) {
    auto family = resolve_family(opt);
    pp::Scenario sc = pp::build_scenario(name, family);

    std::optional<pp::RegisterSplit> split = sc.register_split;
    if (opt.split > 0)
        split = pp::make_register_split(sc.fields.size(),
                                        static_cast<std::size_t>(opt.split));

    ordered_json config = config_json("demo", opt, family);
    config["scenario"] = name;
    ordered_json ids = ordered_json::array();
    for (int id : sc.sequence_ids) ids.push_back(id);
    config["sequence_ids"] = ids;

    std::cout << "scenario: " << name << '\n';
    return analyze_fields(opt, family, sc.fields, &sc.expected_m, split,
                          sc.reference_terms ? &*sc.reference_terms : nullptr,
                          std::move(config));
}

int run_netlist(const std::string& path, const Options& opt) {
    pp::ParseResult parsed = pp::parse_netlist_file(path);
    for (const auto& d : parsed.diagnostics)
        std::cerr << d.format(path) << '\n';
    if (!parsed.ok()) return 2;

    auto family = resolve_family(opt);
    std::vector<pp::OpticalField> fields =
        pp::evaluate_network(parsed.net, family);

    std::optional<pp::ModeMatrix> expected;
    if (!opt.expect_path.empty())
        expected = pp::parse_m_matrix_file(opt.expect_path);

    std::optional<pp::RegisterSplit> split;
    if (opt.split > 0)
        split = pp::make_register_split(fields.size(),
                                        static_cast<std::size_t>(opt.split));

    ordered_json config = config_json("run", opt, family);
    config["netlist"] = path;

    if (!opt.out_dir.empty())
        pp::write_text_file(path_join(opt.out_dir, "network.net"),
                            pp::pretty_print(parsed.net));

    return analyze_fields(opt, family, fields,
                          expected ? &*expected : nullptr, split, nullptr,
                          std::move(config));
}

int run_reconstruct(const std::string& path, const Options& opt) {
    pp::ModeMatrix m = pp::parse_m_matrix_file(path);
    pp::SuperpositionState state = pp::reconstruct_terms(m);
    state.bit_order = bit_order_of(opt);
    if (opt.split > 0)
        state.register_split =
            pp::make_register_split(m.rows(), static_cast<std::size_t>(opt.split));

    std::cout << pp::render_state(state, &m);
    std::string period_text;
    if (opt.split > 0) {
        if (state.terms.empty()) {
            std::cerr << "period unavailable: reconstruction produced no terms\n";
            return 1;
        }
        period_text = pp::render_period(pp::extract_period(state));
        std::cout << period_text;
    }
    if (!opt.out_dir.empty()) {
        auto family = resolve_family(opt);
        ordered_json config = config_json("reconstruct", opt, family);
        config["m_matrix"] = path;
        pp::write_text_file(path_join(opt.out_dir, "config.json"),
                            config.dump(2) + "\n");
        pp::write_text_file(path_join(opt.out_dir, "state.txt"),
                            pp::render_state(state, &m));
        if (!period_text.empty())
            pp::write_text_file(path_join(opt.out_dir, "period.txt"), period_text);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optical correlation bench with pseudorandom phase sequences"};
    app.require_subcommand(1);

    Options opt;
    std::string demo_name, netlist_path, matrix_path;

    auto open01 = CLI::Validator(
        [](std::string& s) -> std::string {
            double v;
            try {
                v = std::stod(s);
            } catch (const std::exception&) {
                return "not a number";
            }
            return (v > 0.0 && v < 1.0) ? "" : "must be strictly between 0 and 1";
        },
        "FRACTION");
    auto positive = CLI::Validator(
        [](std::string& s) -> std::string {
            double v;
            try {
                v = std::stod(s);
            } catch (const std::exception&) {
                return "not a number";
            }
            return v > 0.0 ? "" : "must be > 0";
        },
        "POSITIVE");

    auto add_common = [&](CLI::App* sub, bool analysis) {
        sub->add_option("--family", opt.family_path,
                        "sequence family file (default: built-in table)");
        if (!analysis) return;
        sub->add_option("--mu", opt.mu, "detector responsivity")->check(positive);
        sub->add_option("--tau-slot", opt.tau_slot, "slot duration")
            ->check(positive);
        sub->add_option("--epsilon-flat", opt.epsilon_flat,
                        "relative spread below which a branch counts as flat")
            ->check(open01);
        sub->add_option("--theta", opt.theta,
                        "normalized threshold for peak picking")
            ->check(open01);
        sub->add_option("--bit-order", opt.bit_order,
                        "register bit significance (msb|lsb)")
            ->check(CLI::IsMember({"msb", "lsb"}));
        sub->add_option("--out", opt.out_dir, "write a result bundle here");
        sub->add_flag("--dump-fields", opt.dump_fields,
                      "include per-slot field amplitudes in the bundle");
        sub->add_flag("--traces", opt.traces,
                      "include detector traces in the bundle");
        sub->add_option("--split", opt.split,
                        "x-register size for period extraction")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* sequences = app.add_subcommand("sequences", "print the family table");
    add_common(sequences, false);

    CLI::App* check = app.add_subcommand(
        "check-family", "verify balance, pairwise agreement and xor closure");
    add_common(check, false);

    CLI::App* demo = app.add_subcommand("demo", "run a canned scenario");
    demo->add_option("name", demo_name, "product, ghz, w or shor15")->required();
    add_common(demo, true);

    CLI::App* run = app.add_subcommand("run", "evaluate a netlist and analyze it");
    run->add_option("netlist", netlist_path, "netlist file")->required();
    add_common(run, true);
    run->add_option("--expect", opt.expect_path,
                    "presence matrix the scan must reproduce");

    CLI::App* rec = app.add_subcommand(
        "reconstruct", "reconstruct superposition terms from a presence matrix");
    rec->add_option("matrix", matrix_path, "presence matrix file")->required();
    add_common(rec, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(sequences)) return run_sequences(opt);
        if (app.got_subcommand(check)) return run_check_family(opt);
        if (app.got_subcommand(demo)) return run_demo(demo_name, opt);
        if (app.got_subcommand(run)) return run_netlist(netlist_path, opt);
        if (app.got_subcommand(rec)) return run_reconstruct(matrix_path, opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;  // unreachable with require_subcommand(1)
}

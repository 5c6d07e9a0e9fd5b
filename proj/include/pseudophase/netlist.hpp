#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pseudophase/field.hpp"
#include "pseudophase/optics.hpp"
#include "pseudophase/sequence.hpp"

namespace pseudophase {

// Text bench description, one component per line:
//
//   pseudophase-net v1            # optional version header
//   source      s1 amp_up=1 amp_right=0
//   phase_mod   m1 seq=1 in=s1
//   rotator     r1 angle=45 in=m1
//   splitter    sp n=2 in=r1
//   coupler2    c  in=sp.out_0,sp.out_1
//   sink        E1 in=c.out_0
//
// '#' starts a comment.  Inputs refer to an upstream component's output
// port: bare `id` means its first output, `id.out_k` selects port k.
// Components may be declared in any order; the graph must be acyclic.

enum class ComponentKind {
    Source,      // emits a steady two-mode field;   amp_up=, amp_right=
    PhaseMod,    // per-slot phase modulation;       seq=<family id>
    Coupler2,    // 50/50 coupler, 2 in / 2 out
    Pbs,         // polarizing splitter/combiner, 2 in / 2 out
    Rotator,     // polarization rotation;           angle=<degrees>
    ModeFilter,  // pass=all|up|right
    Splitter,    // 1 in / n out at 1/sqrt(n);       n=<fanout>
    Combiner,    // n in / 1 out at 1/sqrt(n)
    Sink,        // names a network output, 1 in / 0 out
};

const char* component_kind_name(ComponentKind k);

struct PortRef {
    std::string component_id;
    int port = 0;
    bool operator==(const PortRef&) const = default;
};

struct Component {
    std::string id;
    ComponentKind kind = ComponentKind::Source;
    double amp_up = 0.0, amp_right = 0.0;        // source
    int seq_id = -1;                             // phase_mod
    double angle_deg = 0.0;                      // rotator
    ModeFilterPass pass = ModeFilterPass::All;   // mode_filter
    int fanout = 0;                              // splitter
    std::vector<PortRef> inputs;
    int line = 0, col = 0;  // of the kind token, for diagnostics

    int output_count() const;
    int input_count() const;  // -1 for combiner (variadic, >= 2)
};

struct Network {
    std::vector<Component> components;
    const Component* find(const std::string& id) const;
};

// Parameters, wiring and declaration order match (diagnostic positions may
// differ).
bool structurally_equal(const Network& a, const Network& b);

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    int line = 0, col = 0;
    std::string message;

    // "file:line:col: severity: message"
    std::string format(const std::string& filename) const;
};

struct ParseResult {
    Network net;
    std::vector<Diagnostic> diagnostics;
    bool ok() const;  // no error-severity diagnostics
};

// Parse plus full structural validation (arity, undeclared/absent ports,
// duplicate ids, cycles, missing sinks).  Never throws on bad input; all
// problems are reported as diagnostics.
ParseResult parse_netlist(std::istream& in);
ParseResult parse_netlist(const std::string& text);
ParseResult parse_netlist_file(const std::string& path);  // throws if unreadable

// Canonical text form: version header, declaration order preserved, params
// in fixed order, inputs last.  parse(pretty_print(parse(t))) is
// structurally equal to parse(t).
std::string pretty_print(const Network& net);

// Sink fields in declaration order, labeled with the sink ids.  The slot
// count comes from the family.  Requires a validated network; throws
// std::runtime_error on evaluation problems (e.g. seq= outside the family).
std::vector<OpticalField> evaluate_network(const Network& net,
                                           const std::vector<PhaseSequence>& family);

}  // namespace pseudophase

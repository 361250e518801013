#pragma once

#include "szczarba/homology_ss.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace sz {

using Json = nlohmann::json;

// A fully wired verification scenario: base presentation, structure group,
// twisting function and fibre, as described by a presentation file.
struct Scenario {
    std::string name;
    PresentationPtr base;
    GroupPtr group;
    TwistPtr twist;
    FibrePtr fibre;
};

// Builds a scenario from a parsed document.  `generators` is an array of
// name arrays indexed by dimension; `faces` maps "gen.i" to a simplex
// expression; `group` is {"finite": {elements, table, unit}} or
// {"loopgroup_of": ..., "truncation": N}; `twist` is a generator -> group
// word map or the string "canonical"/"trivial"; `fibre` is "group" (default)
// or an embedded presentation with an optional `action` table.
Scenario scenario_from_json(const Json& doc, int default_truncation = 5);
Scenario load_scenario(const std::string& path, int default_truncation = 5);

// The fibre has a finite basis in every degree (so twisted tensor complexes
// and products over it can be enumerated).
bool fibre_finite(const Scenario& sc);

// Chain <-> JSON codecs.  Coefficients travel as decimal strings so values
// beyond the machine range survive the round trip.
Json chain_to_json(const SimplicialGroup& G, const ChainG& c);
ChainG group_chain_from_json(const SimplicialGroup& G, const Json& j);
Json chain_to_json(const TwistedProduct& T, const ChainT& c);
ChainT twisted_chain_from_json(const TwistedProduct& T, const Json& j);
Json chain_to_json(const Presentation& P, const TenOmegaOmega& c);
TenOmegaOmega cobar_tensor_from_json(const Presentation& P, const Json& j);

// One cobar word in the bracket format produced by CobarWord::str.
CobarWord parse_cobar_word(const Presentation& P, const std::string& expr);

struct SuiteOutcome {
    std::string suite;
    bool passed = false;
    int checked = 0;
    std::string detail;  // first failing element with both sides, or empty
};

// twisting, comultiplicativity, psi-dgc, baues, degeneracies.
std::vector<std::string> suite_names();

// Runs one named suite against the scenario; "all" runs every suite that
// applies (psi-dgc needs a degreewise finite fibre, baues a 1-reduced base).
// Unknown names raise ParseError; a named suite whose preconditions fail
// raises the corresponding error instead of reporting a failure.
std::vector<SuiteOutcome> run_suites(const Scenario& sc, const std::string& which,
                                     int bound);

}  // namespace sz

#pragma once

// The fatlab command line: check, cohomology, roundtrip and examples.
// Exit codes: 0 pass, 1 a property failed, 2 bad input or usage.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fatlab/io.hpp"
#include "fatlab/report.hpp"

namespace fatlab {

struct CheckResult {
  std::string name;         // "suite/check", with a "[source]"/"[target]" tag for morphism ends
  std::string proposition;  // the statement being tested, in words
  Report report;
};

struct CheckOptions {
  std::string suite = "all";  // groupoid, ruth, fat, glpb, corext, lie or all
  std::uint64_t seed = 0;
  int trials = 200;
};

// Runs every check of the selected suites that applies to the document,
// sorted by name. Each check draws from its own seed derived from the
// master seed and the check name.
std::vector<CheckResult> run_checks(const Document& doc, const CheckOptions& opt);

struct RouteResult {
  Report report;
  std::string note;  // e.g. where a fault was injected
};
// Throws Error(BadParams) when the route does not apply to the document kind.
RouteResult run_route(const Document& doc, const std::string& route, bool inject_fault, std::uint64_t seed,
                      int trials);
std::vector<std::string> route_names();

std::vector<std::string> cli_example_names();
Json example_document(const std::string& name);  // throws BadParams on unknown names

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fatlab

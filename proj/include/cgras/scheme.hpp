// Scheme files: JSON description of a network, its rate-splitting matrix and
// the chain graph of the coding scheme, plus the built-in fixture corpus.
#pragma once

#include "cgras/polyhedra.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cgras {

// Malformed input. `location` is "line N" for syntax errors or a JSON field path.
struct SchemeError : std::runtime_error {
    SchemeError(const std::string& loc, const std::string& msg)
        : std::runtime_error(loc.empty() ? msg : loc + ": " + msg), location(loc) {}
    std::string location;
};

// Well-formed input describing a scheme that violates a structural rule.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Scheme {
    std::string name;
    std::string description;
    Cgras graph;
    SplitMatrix split;
    AssembleOptions options;

    friend bool operator==(const Scheme& a, const Scheme& b);
};

// Parses and validates. Assumption failures raise ValidationError unless
// auto_close is set, in which case the graph is closed first.
Scheme parse_scheme(const std::string& text, bool auto_close = false);
std::string serialize_scheme(const Scheme& s);

std::vector<std::string> fixture_names();
// Scheme JSON text of a built-in fixture; throws KeyError for unknown names.
std::string fixture_text(const std::string& name);
Scheme load_fixture(const std::string& name);

}  // namespace cgras

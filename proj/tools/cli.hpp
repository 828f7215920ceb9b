#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "flatctc/groups.hpp"

namespace flatctc::cli {

enum ExitCode : int {
    kOk = 0,
    kNoWitness = 1,
    kParseError = 2,
    kNotLorentz = 3,
    kNotTimelike = 4,
};

struct BuiltinParams {
    double tau = 1.0;
    double theta = 1.5707963267948966;
    double t = 1.0;
};

/// Named fixtures. Single isometries come back as one-generator groups;
/// "torus" is the two-generator example. Throws ParseError for unknown names.
GroupPresentation builtin(const std::string& name, const BuiltinParams& params = {});
std::vector<std::string> builtin_names();

/// Runs the command line; data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flatctc::cli

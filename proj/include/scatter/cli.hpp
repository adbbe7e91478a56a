#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scatter::cli {

/// Runs `scatterquery <subcommand> ...`. Returns the process exit code;
/// engine failures print "<error-code>: <message>" on `err` and return
/// exit_code() of that code.
///
///   build <csv> (--pairwise [--measures a,b,..] | --category x,y,cat) --out <dir>
///   query <dir> (--region <polygon> | --like <spec id> | --points <json>) [--k N|all] [--json]
///   serve [--port N] [--host H] [--data-dir D]
///
/// Every subcommand accepts --config <file>; otherwise SCATTERQUERY_CONFIG is read.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scatter::cli

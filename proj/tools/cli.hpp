#ifndef PNSPACE_CLI_HPP
#define PNSPACE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pnspace::cli {

//! Exit codes: 0 pass, 1 usage or parse error, 2 numerical non-convergence,
//! 3 hypothesis or admissibility violation.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

} // namespace pnspace::cli

#endif

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace blc::cli {

/// Runs one CLI command (eval, convert, coarsen, plot) against the given
/// streams. Returns 0 on success, 1 on domain errors (reported with source
/// spans on err), 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace blc::cli

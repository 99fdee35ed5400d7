#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gromov::cli {

/// Exit codes: 0 success, 1 domain error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Default bounded-search radius: $GROMOV_SEARCH_RADIUS when set, else 10.
std::size_t default_search_radius();

}  // namespace gromov::cli

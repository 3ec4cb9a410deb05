// Command-line front end, kept in the library so tests can drive it.
#ifndef COBORD_CLI_HPP
#define COBORD_CLI_HPP

#include "cobord/complex.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cobord::cli {

/// Exit codes: 0 success, 1 domain error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "catalog:<name>" (connected sums of surfaces as "catalog:T2#T2") or a
/// triangulation file path.
complex::Triangulation load_manifold(const std::string& ref);

/// Largest group order verified exhaustively; COBORD_EXHAUSTIVE_BOUND overrides.
std::uint64_t exhaustive_bound();

} // namespace cobord::cli

#endif

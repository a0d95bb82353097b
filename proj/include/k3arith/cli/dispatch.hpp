#ifndef K3ARITH_CLI_DISPATCH_HPP
#define K3ARITH_CLI_DISPATCH_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace k3::cli {

enum ExitCode : int { kOk = 0, kVerificationFailure = 1, kUsage = 2 };

/// Parses and runs one subcommand (count, zeta, picard, bqf, inose, kuwata,
/// modularity, sieve). The JSON report goes to `out` unless --out is given;
/// diagnostics go to `err`.
int dispatch(int argc, char const * const * argv, std::ostream & out, std::ostream & err);

/// Same, for an argument list without the program name.
int dispatch(std::vector<std::string> const & args, std::ostream & out, std::ostream & err);

} // namespace k3::cli

#endif // K3ARITH_CLI_DISPATCH_HPP

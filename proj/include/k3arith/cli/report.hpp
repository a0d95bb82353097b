#ifndef K3ARITH_CLI_REPORT_HPP
#define K3ARITH_CLI_REPORT_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "k3arith/numtheory.hpp"
#include "k3arith/poly.hpp"

namespace k3::cli {

constexpr int kSchemaVersion = 1;
constexpr const char * kToolVersion = "0.1.0";

/// JSON number when |n| <= 2^53, decimal string otherwise.
nlohmann::json exact(BigInt const & n);
nlohmann::json exact(Rational const & x);
nlohmann::json exact(poly::IntPoly const & f);

struct CacheStats {
    std::string path;
    std::size_t hits = 0;
    std::size_t misses = 0;
    std::size_t records = 0;
};

/*
 * {"schema_version", "tool", "version", "command", "config", "results",
 *  "timing": {"seconds"}, "cache"?}
 * Only "timing" varies between identical runs.
 */
nlohmann::json make_report(std::string const & command, nlohmann::json config, nlohmann::json results,
                           double seconds, std::optional<CacheStats> const & cache = std::nullopt);

} // namespace k3::cli

#endif // K3ARITH_CLI_REPORT_HPP

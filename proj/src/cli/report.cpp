#include "k3arith/cli/report.hpp"

namespace k3::cli {

using nlohmann::json;

json exact(BigInt const & n)
{
    static const BigInt limit = BigInt(1) << 53;
    if (abs(n) <= limit)
        return static_cast<std::int64_t>(n);
    return to_string(n);
}

json exact(Rational const & x)
{
    if (denominator(x) == 1)
        return exact(numerator(x));
    return to_string(x);
}

json exact(poly::IntPoly const & f)
{
    json out = json::array();
    for (auto const & c : f)
        out.push_back(exact(c));
    return out;
}

json make_report(std::string const & command, json config, json results, double seconds,
                 std::optional<CacheStats> const & cache)
{
    json r;
    r["schema_version"] = kSchemaVersion;
    r["tool"] = "k3";
    r["version"] = kToolVersion;
    r["command"] = command;
    r["config"] = std::move(config);
    r["results"] = std::move(results);
    r["timing"] = {{"seconds", seconds}};
    if (cache) {
        r["cache"] = {{"path", cache->path},
                      {"hits", cache->hits},
                      {"misses", cache->misses},
                      {"records", cache->records}};
    }
    return r;
}

} // namespace k3::cli

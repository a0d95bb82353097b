#include "k3arith/cli/cache_io.hpp"

#include <fstream>

#include <json.hpp>

#include "k3arith/error.hpp"

namespace k3::cli {

using nlohmann::json;

std::string to_json_line(count::CountRecord const & rec)
{
    json j;
    j["surface"] = rec.surface;
    j["p"] = rec.p;
    j["r"] = rec.r;
    j["count"] = rec.count;
    return j.dump();
}

count::CountRecord from_json_line(std::string const & line)
{
    try {
        auto j = json::parse(line);
        count::CountRecord rec;
        rec.surface = j.at("surface").get<std::string>();
        rec.p = j.at("p").get<std::int64_t>();
        rec.r = j.at("r").get<int>();
        rec.count = j.at("count").get<std::int64_t>();
        if (rec.p < 2 || rec.r < 1 || rec.count < 0)
            throw DataError("cache record out of range: " + line);
        return rec;
    }
    catch (json::exception const & e) {
        throw DataError("malformed cache record '" + line + "': " + e.what());
    }
}

void load_cache(std::filesystem::path const & path, count::CountCache & cache)
{
    std::ifstream in(path);
    if (!in)
        return;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        auto rec = from_json_line(line);
        try {
            cache.insert(rec);
        }
        catch (IntegrityError const & e) {
            throw IntegrityError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void append_records(std::filesystem::path const & path, std::vector<count::CountRecord> const & records)
{
    if (records.empty())
        return;
    std::ofstream out(path, std::ios::app);
    if (!out)
        throw UsageError("cannot open cache file " + path.string() + " for writing");
    for (auto const & rec : records)
        out << to_json_line(rec) << '\n';
    if (!out)
        throw UsageError("failed writing cache file " + path.string());
}

} // namespace k3::cli

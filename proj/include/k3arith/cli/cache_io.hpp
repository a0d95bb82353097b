#ifndef K3ARITH_CLI_CACHE_IO_HPP
#define K3ARITH_CLI_CACHE_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "k3arith/count.hpp"

namespace k3::cli {

// One record per line: {"surface": "<hex>", "p": P, "r": R, "count": N}
std::string to_json_line(count::CountRecord const & rec);
/// DataError on malformed lines.
count::CountRecord from_json_line(std::string const & line);

/// Loads every record of an append-only cache file into `cache`. A missing
/// or empty file loads nothing; duplicates are merged; a second, different
/// count for the same (surface, p, r) is an IntegrityError naming the key.
void load_cache(std::filesystem::path const & path, count::CountCache & cache);

/// Appends records, one line each, creating the file if needed.
void append_records(std::filesystem::path const & path, std::vector<count::CountRecord> const & records);

} // namespace k3::cli

#endif // K3ARITH_CLI_CACHE_IO_HPP

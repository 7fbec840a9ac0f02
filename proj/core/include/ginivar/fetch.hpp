#pragma once

#include <filesystem>
#include <string>

#include "ginivar/macro.hpp"

namespace ginivar {

struct FetchResult {
    RawSeries series;
    std::string bytes;   // raw CSV payload as cached on disk
    bool from_cache = false;
};

/// Parses a two-column date,value CSV payload. A header row is skipped when
/// its first field is not a date label; rows with the value "." (missing)
/// are dropped.
RawSeries parse_two_column_csv(const std::string& body, const std::string& origin);

/// Retrieves `base_url + source_id` over HTTP(S) and caches the payload as
/// <cache_dir>/<source_id>.csv (atomic write-then-rename). A cache hit is
/// served without touching the network.
FetchResult fetch_remote_series(const std::string& source_id,
                                const std::filesystem::path& cache_dir,
                                const std::string& base_url);

} // namespace ginivar

#include "ginivar/fetch.hpp"

#include <sstream>

#include <httplib.h>

#include "ginivar/csv.hpp"
#include "ginivar/errors.hpp"

namespace ginivar {

namespace fs = std::filesystem;

RawSeries parse_two_column_csv(const std::string& body, const std::string& origin) {
    RawSeries out;
    std::istringstream in(body);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ValidationError(origin + ": line " + std::to_string(lineno) + " is not date,value");
        std::string date = line.substr(0, comma);
        std::string value = line.substr(comma + 1);
        if (lineno == 1) {
            // Header row, e.g. "DATE,SERIES".
            try {
                Period::parse(date);
            } catch (const ValidationError&) {
                continue;
            }
        }
        if (value == "." || value.empty()) continue;
        out.dates.push_back(Period::parse(date));
        out.values.push_back(parse_double(value, origin + " line " + std::to_string(lineno)));
    }
    if (out.dates.empty()) throw ValidationError(origin + ": no usable rows in payload");
    return out;
}

namespace {

struct UrlParts {
    std::string host_port; // scheme://host[:port]
    std::string path;      // /path?query
};

UrlParts split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw ValidationError("fetch: URL must include a scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string http_get(const std::string& url) {
    UrlParts parts = split_url(url);
    httplib::Client client(parts.host_port);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    client.set_follow_location(true);
    auto res = client.Get(parts.path);
    if (!res)
        throw IoError("fetch: request to " + url + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw IoError("fetch: " + url + " returned HTTP " + std::to_string(res->status));
    return res->body;
}

} // namespace

FetchResult fetch_remote_series(const std::string& source_id, const fs::path& cache_dir,
                                const std::string& base_url) {
    if (source_id.empty() || source_id.find('/') != std::string::npos)
        throw ValidationError("fetch: source id must be a plain identifier, got '" + source_id + "'");
    fs::create_directories(cache_dir);
    const fs::path cache_file = cache_dir / (source_id + ".csv");

    FetchResult result;
    if (fs::exists(cache_file)) {
        result.bytes = read_file(cache_file);
        result.from_cache = true;
    } else {
        result.bytes = http_get(base_url + source_id);
        atomic_write_file(cache_file, result.bytes);
    }
    result.series = parse_two_column_csv(result.bytes, source_id);
    return result;
}

} // namespace ginivar

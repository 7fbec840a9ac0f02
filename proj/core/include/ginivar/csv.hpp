#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ginivar {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const; // -1 if absent
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text, const std::string& origin);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Round-trip formatting for doubles ("%.17g"), used by every writer so
/// reruns stay byte identical.
std::string fmt_double(double v);

double parse_double(const std::string& field, const std::string& context);
long long parse_count(const std::string& field, const std::string& context);

/// Writes `content` to a temporary file in the target directory and renames
/// it into place, so concurrent readers never observe a partial file.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

} // namespace ginivar

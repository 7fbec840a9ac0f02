#include "ginivar/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ginivar/errors.hpp"

namespace ginivar {

namespace fs = std::filesystem;

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

static std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    out.push_back(field);
    return out;
}

CsvTable parse_csv(const std::string& text, const std::string& origin) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto fields = split_line(line);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size())
            throw ValidationError(origin + ": line " + std::to_string(lineno) + " has " +
                                  std::to_string(fields.size()) + " fields, header has " +
                                  std::to_string(table.header.size()));
        table.rows.push_back(std::move(fields));
    }
    if (!have_header) throw ValidationError(origin + ": empty file, no header");
    return table;
}

CsvTable read_csv(const fs::path& path) {
    return parse_csv(read_file(path), path.string());
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    auto append_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += row[i];
        }
        out.push_back('\n');
    };
    if (!header.empty()) append_row(header);
    for (const auto& r : rows) append_row(r);
    atomic_write_file(path, out);
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& field, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0' || errno == ERANGE)
        throw ValidationError(context + ": cannot parse number '" + field + "'");
    return v;
}

long long parse_count(const std::string& field, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(field.c_str(), &end, 10);
    if (end == field.c_str() || *end != '\0' || errno == ERANGE)
        throw ValidationError(context + ": cannot parse count '" + field + "'");
    if (v < 0) throw ValidationError(context + ": counts must be nonnegative, got '" + field + "'");
    return v;
}

std::string read_file(const fs::path& path) {
    std::error_code ec;
    if (fs::exists(path, ec) && !fs::is_regular_file(path, ec))
        throw IoError("not a regular file: " + path.string());
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path.string());
    return ss.str();
}

void atomic_write_file(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open file for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("rename failed for " + path.string() + ": " + ec.message());
}

} // namespace ginivar

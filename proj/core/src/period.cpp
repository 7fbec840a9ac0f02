#include "ginivar/period.hpp"

#include <cctype>
#include <cstdio>

#include "ginivar/errors.hpp"

namespace ginivar {

namespace {
bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to || to > s.size()) return false;
    for (std::size_t i = from; i < to; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}
} // namespace

Period Period::parse(const std::string& label) {
    // "2002Q1" or "2002q1"
    if (label.size() == 6 && (label[4] == 'Q' || label[4] == 'q') &&
        all_digits(label, 0, 4) && all_digits(label, 5, 6)) {
        int q = label[5] - '0';
        if (q < 1 || q > 4) throw ValidationError("Period: quarter out of range in '" + label + "'");
        return Period{Freq::quarterly, std::stoi(label.substr(0, 4)), q};
    }
    // "2002-01" (a trailing day, "2002-01-15", is tolerated and dropped)
    if (label.size() >= 7 && label[4] == '-' && all_digits(label, 0, 4) && all_digits(label, 5, 7)) {
        int m = std::stoi(label.substr(5, 2));
        if (m < 1 || m > 12) throw ValidationError("Period: month out of range in '" + label + "'");
        return Period{Freq::monthly, std::stoi(label.substr(0, 4)), m};
    }
    throw ValidationError("Period: cannot parse date label '" + label + "' (expected YYYYQn or YYYY-MM)");
}

std::string Period::str() const {
    char buf[16];
    if (freq == Freq::quarterly)
        std::snprintf(buf, sizeof buf, "%04dQ%d", year, index);
    else
        std::snprintf(buf, sizeof buf, "%04d-%02d", year, index);
    return buf;
}

Period Period::next() const {
    const int wrap = freq == Freq::quarterly ? 4 : 12;
    if (index < wrap) return Period{freq, year, index + 1};
    return Period{freq, year + 1, 1};
}

Period Period::quarter() const {
    if (freq == Freq::quarterly) return *this;
    return Period{Freq::quarterly, year, (index - 1) / 3 + 1};
}

int Period::month_in_quarter() const {
    if (freq != Freq::monthly) throw ValidationError("Period: month_in_quarter on a quarterly period");
    return (index - 1) % 3 + 1;
}

bool period_less(const Period& a, const Period& b) {
    if (a.freq != b.freq)
        throw ValidationError("Period: cannot order periods of different frequency");
    if (a.year != b.year) return a.year < b.year;
    return a.index < b.index;
}

} // namespace ginivar

#pragma once

#include <string>

namespace ginivar {

enum class Freq { monthly, quarterly };

/// Calendar period label, either "YYYYQn" (quarterly) or "YYYY-MM" (monthly).
struct Period {
    Freq freq = Freq::quarterly;
    int year = 0;
    int index = 1; // 1..4 for quarterly, 1..12 for monthly

    static Period parse(const std::string& label);
    std::string str() const;

    Period next() const;
    /// Containing quarter (identity for quarterly periods).
    Period quarter() const;
    /// 1..3 position of a monthly period inside its quarter.
    int month_in_quarter() const;

    friend bool operator==(const Period& a, const Period& b) {
        return a.freq == b.freq && a.year == b.year && a.index == b.index;
    }
    friend bool operator!=(const Period& a, const Period& b) { return !(a == b); }
};

/// Calendar order; both periods must share the same frequency.
bool period_less(const Period& a, const Period& b);

} // namespace ginivar

#pragma once

#include <cstdio>
#include <string>

#include "parden/common/errors.hpp"

namespace parden {

// Civil <-> serial-day conversion (days since 1970-01-01), Gregorian calendar.

inline int days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int>(doe) - 719468;
}

inline void civil_from_days(int z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const int era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<int>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

/// Parses a strict ISO-8601 date (YYYY-MM-DD) into a serial day.
inline int parse_iso_date(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d-%2u-%2u%c", &y, &m, &d, &extra) != 3 ||
        text.size() != 10 || m < 1 || m > 12 || d < 1 || d > 31) {
        throw IngestionError("invalid ISO-8601 date: '" + text + "'");
    }
    return days_from_civil(y, m, d);
}

inline std::string format_iso_date(int serial_day) {
    int y;
    unsigned m, d;
    civil_from_days(serial_day, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", y, m, d);
    return buf;
}

}  // namespace parden

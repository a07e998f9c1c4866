#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace rnldpc {

// Plain fixed-notation decimal, trailing zeros trimmed; never scientific.
inline std::string fmt_plain(double v) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    std::string s(buf);
    std::size_t dot = s.find('.');
    if (dot != std::string::npos) {
        std::size_t last = s.find_last_not_of('0');
        if (last == dot) last -= 1;
        s.erase(last + 1);
    }
    if (s == "-0") s = "0";
    return s;
}

inline double parse_double(const std::string& text, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("invalid ") + what + ": \"" + text + "\"");
    }
}

}  // namespace rnldpc

#pragma once

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "greencell/types.hpp"

namespace greencell {

inline std::string format_double(double v, int decimals = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

// Append-only audit trail: one line per event, key=value pairs, written in
// simulation order so identical runs produce identical bytes.
class EventLog {
public:
    using Kv = std::pair<std::string_view, std::string>;

    void emit(double t_s, std::string_view kind, std::initializer_list<Kv> fields) {
        std::string line = "t=" + format_double(t_s, 0);
        line += " kind=";
        line += kind;
        for (const auto& [k, v] : fields) {
            line += ' ';
            line += k;
            line += '=';
            line += v;
        }
        lines_.push_back(std::move(line));
    }

    const std::vector<std::string>& lines() const { return lines_; }
    void clear() { lines_.clear(); }

    void write(const std::string& path, const std::string& header = "") const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw SimError("cannot open events file: " + path);
        if (!header.empty()) out << header << '\n';
        for (const auto& l : lines_) out << l << '\n';
    }

private:
    std::vector<std::string> lines_;
};

}  // namespace greencell

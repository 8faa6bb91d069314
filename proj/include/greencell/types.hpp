#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace greencell {

using UserId = std::int64_t;
using FlowId = std::int64_t;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

enum class BsMode { Omni, TriSectorized, Off };

inline const char* to_string(BsMode m) {
    switch (m) {
        case BsMode::Omni: return "omni";
        case BsMode::TriSectorized: return "tri";
        case BsMode::Off: return "off";
    }
    return "?";
}

enum class Service { VoIP, Web, Video };

inline const char* to_string(Service s) {
    switch (s) {
        case Service::VoIP: return "voip";
        case Service::Web: return "web";
        case Service::Video: return "video";
    }
    return "?";
}

// Delay requirement of each service class, in milliseconds.
inline double delay_bound_ms(Service s) {
    switch (s) {
        case Service::VoIP: return 100.0;
        case Service::Web: return 500.0;
        case Service::Video: return 250.0;
    }
    return 0.0;
}

enum class Mechanism { UserCentric, NetworkCentric };

inline const char* to_string(Mechanism m) {
    return m == Mechanism::UserCentric ? "uc" : "nc";
}

// Network element handle: cellular base station or Wi-Fi access point.
struct ElementKey {
    enum class Kind { Bs, Ap };
    Kind kind = Kind::Bs;
    int id = 0;

    auto operator<=>(const ElementKey&) const = default;

    static ElementKey bs(int id) { return {Kind::Bs, id}; }
    static ElementKey ap(int id) { return {Kind::Ap, id}; }
    bool is_bs() const { return kind == Kind::Bs; }
    bool is_ap() const { return kind == Kind::Ap; }
    std::string str() const {
        return (is_bs() ? "bs:" : "ap:") + std::to_string(id);
    }
};

// Invalid scenario configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Violated runtime invariant (CLI exit code 3).
class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace greencell

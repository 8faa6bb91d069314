#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "greencell/rng.hpp"
#include "greencell/types.hpp"

namespace greencell {

struct ServiceParams {
    double on_rate_mbps = 0.0;
    double mean_on_s = 1.0;
    double mean_off_s = 1.0;
};

inline ServiceParams default_service_params(Service s) {
    switch (s) {
        case Service::VoIP: return {0.0122, 1.0, 1.35};
        case Service::Web: return {0.5, 5.0, 30.0};
        case Service::Video: return {2.0, 60.0, 5.0};
    }
    return {};
}

// Hourly mean number of active users. Tables are stored fully scaled; the
// busy hour is simply the maximum entry.
struct TrafficProfile {
    std::array<double, 24> hourly_mean{};

    double busy_hour_load() const {
        return *std::max_element(hourly_mean.begin(), hourly_mean.end());
    }
};

// Day-night shape: sinusoidal hump between 05:00 and 21:00 with a 0.1 floor
// overnight, normalized so the busy hour is 1.
inline std::array<double, 24> default_daily_shape() {
    std::array<double, 24> shape{};
    for (int h = 0; h < 24; ++h) {
        if (h >= 5 && h <= 21)
            shape[h] = std::max(0.1, std::sin(std::numbers::pi * (h - 5) / 16.0));
        else
            shape[h] = 0.1;
    }
    return shape;
}

inline std::array<double, 24> shifted_shape(const std::array<double, 24>& shape,
                                            int hours_later) {
    std::array<double, 24> out{};
    for (int h = 0; h < 24; ++h) out[h] = shape[(h - hours_later % 24 + 24) % 24];
    return out;
}

// Scale a non-negative shape so its maximum equals the busy-hour mean.
inline TrafficProfile scaled_profile(const std::array<double, 24>& shape,
                                     double busy_hour_mean) {
    double peak = *std::max_element(shape.begin(), shape.end());
    if (!(peak > 0.0)) throw ConfigError("traffic profile: peak of shape must be > 0");
    if (busy_hour_mean < 0.0) throw ConfigError("traffic profile: busy-hour mean < 0");
    TrafficProfile p;
    for (int h = 0; h < 24; ++h) p.hourly_mean[h] = shape[h] / peak * busy_hour_mean;
    return p;
}

inline int sample_active_users(const TrafficProfile& profile, int hour,
                               std::uint64_t rng_seed) {
    if (hour < 0 || hour > 23)
        throw std::invalid_argument("sample_active_users: hour out of range");
    RngStream rng(rng_seed);
    return rng.poisson(profile.hourly_mean[hour]);
}

inline Service assign_service(UserId user_id, std::uint64_t rng_seed) {
    RngStream rng(derive_seed(rng_seed, "traffic.service", static_cast<std::uint64_t>(user_id)));
    switch (rng.uniform_int(3)) {
        case 0: return Service::VoIP;
        case 1: return Service::Web;
        default: return Service::Video;
    }
}

struct Session {
    FlowId flow_id = 0;
    UserId user_id = 0;
    Service service = Service::VoIP;
    bool on = true;
    double on_rate_mbps = 0.0;
    double delay_bound_ms = 0.0;
    double mean_on_s = 1.0;
    double mean_off_s = 1.0;
    double residual_s = 0.0;  // time left in the current ON/OFF period
    bool draining = false;    // ends at the close of its current ON period
};

inline Session make_session(FlowId flow, UserId user, Service service,
                            const ServiceParams& params, RngStream& rng) {
    Session s;
    s.flow_id = flow;
    s.user_id = user;
    s.service = service;
    s.on = true;
    s.on_rate_mbps = params.on_rate_mbps;
    s.delay_bound_ms = delay_bound_ms(service);
    s.mean_on_s = params.mean_on_s;
    s.mean_off_s = params.mean_off_s;
    s.residual_s = rng.exponential(params.mean_on_s);
    return s;
}

// Advance the ON/OFF renewal process by dt. Exponential holding times keep
// the process exact under arbitrary step sizes. Returns the number of
// ON->OFF transitions, which is what session draining needs to observe.
inline int step_session(Session& s, double dt_s, RngStream& rng) {
    if (!(dt_s > 0.0)) throw std::invalid_argument("step_session: dt must be positive");
    int on_to_off = 0;
    while (s.residual_s <= dt_s) {
        dt_s -= s.residual_s;
        if (s.on) ++on_to_off;
        s.on = !s.on;
        s.residual_s = rng.exponential(s.on ? s.mean_on_s : s.mean_off_s);
    }
    s.residual_s -= dt_s;
    return on_to_off;
}

struct OfferedLoad {
    ElementKey element;
    double t_s = 0.0;
    double aggregate_rate_mbps = 0.0;
    int active_user_count = 0;
};

// Per-element sums of ON-session rates. OFF sessions contribute zero rate
// but still count as attached users.
inline std::vector<OfferedLoad> offered_load(const std::vector<Session>& sessions,
                                             const std::map<FlowId, ElementKey>& attachment,
                                             double t_s) {
    std::map<ElementKey, OfferedLoad> agg;
    std::map<ElementKey, std::vector<UserId>> users;
    for (const auto& s : sessions) {
        auto it = attachment.find(s.flow_id);
        if (it == attachment.end())
            throw SimError("offered_load: flow " + std::to_string(s.flow_id) +
                           " is not attached to any element");
        auto& rec = agg[it->second];
        rec.element = it->second;
        rec.t_s = t_s;
        if (s.on) rec.aggregate_rate_mbps += s.on_rate_mbps;
        users[it->second].push_back(s.user_id);
    }
    std::vector<OfferedLoad> out;
    out.reserve(agg.size());
    for (auto& [key, rec] : agg) {
        auto& u = users[key];
        std::sort(u.begin(), u.end());
        rec.active_user_count = static_cast<int>(std::unique(u.begin(), u.end()) - u.begin());
        out.push_back(rec);
    }
    return out;
}

}  // namespace greencell

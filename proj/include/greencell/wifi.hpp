#pragma once

#include <cmath>
#include <stdexcept>

#include "greencell/types.hpp"

namespace greencell {

enum class QosClass { Conversational, Streaming, Interactive, Background };

// Set of 3GPP traffic classes an access point can serve. Built from a delay
// value, so it is downward closed by construction: supporting a stricter
// class implies supporting every laxer one.
struct QosClassSet {
    bool conversational = false;
    bool streaming = false;
    bool interactive = false;
    bool background = false;

    bool operator==(const QosClassSet&) const = default;

    bool contains(QosClass c) const {
        switch (c) {
            case QosClass::Conversational: return conversational;
            case QosClass::Streaming: return streaming;
            case QosClass::Interactive: return interactive;
            case QosClass::Background: return background;
        }
        return false;
    }
    int count() const {
        return (conversational ? 1 : 0) + (streaming ? 1 : 0) + (interactive ? 1 : 0) +
               (background ? 1 : 0);
    }
    bool downward_closed() const {
        return (!conversational || streaming) && (!streaming || interactive) &&
               (!interactive || background);
    }
};

// Wi-Fi access delay as a function of utilization: flat 50 ms floor up to
// 50% utilization, then exponential growth reaching 600 ms at full load.
inline double delay_curve(double utilization) {
    if (!(utilization >= 0.0 && utilization <= 1.0))
        throw std::domain_error("delay_curve: utilization must be in [0,1]");
    if (utilization <= 0.5) return 50.0;
    return 50.0 * std::pow(12.0, 2.0 * (utilization - 0.5));
}

// Delay thresholds reuse the per-service delay bounds; background traffic
// is always supported.
inline QosClassSet classify_qos(double predicted_delay_ms) {
    if (predicted_delay_ms < 0.0)
        throw std::domain_error("classify_qos: delay must be non-negative");
    QosClassSet s;
    s.conversational = predicted_delay_ms <= 100.0;
    s.streaming = predicted_delay_ms <= 250.0;
    s.interactive = predicted_delay_ms <= 500.0;
    s.background = true;
    return s;
}

inline bool supports_service(const QosClassSet& qos, Service service) {
    switch (service) {
        case Service::VoIP: return qos.conversational;
        case Service::Video: return qos.streaming;
        case Service::Web: return qos.interactive;
    }
    return false;
}

// Runtime view of one access point. Admission reserves a flow's ON rate for
// its whole attachment (an OFF flow may switch ON at any time); monitored
// utilization counts currently-ON traffic only, so utilization never
// exceeds the reservation and stays within [0,1].
struct ApState {
    int ap_id = 0;
    double capacity_mbps = 10.0;
    double reserved_mbps = 0.0;
    double on_rate_mbps = 0.0;
    int attached_user_count = 0;

    double utilization() const {
        if (capacity_mbps <= 0.0) return 0.0;
        double u = on_rate_mbps / capacity_mbps;
        return u < 0.0 ? 0.0 : (u > 1.0 ? 1.0 : u);
    }
    double spare_mbps() const { return capacity_mbps - reserved_mbps; }
    double predicted_delay_ms() const { return delay_curve(utilization()); }
};

inline constexpr double kRateEpsilonMbps = 1e-9;

// Accept iff the reservation still fits the capacity; updates the
// reservation on accept.
inline bool admit_flow(ApState& ap, double flow_rate_mbps) {
    if (!(flow_rate_mbps > 0.0))
        throw std::invalid_argument("admit_flow: flow rate must be positive");
    if (ap.reserved_mbps + flow_rate_mbps > ap.capacity_mbps + kRateEpsilonMbps)
        return false;
    ap.reserved_mbps += flow_rate_mbps;
    return true;
}

inline void release_flow(ApState& ap, double flow_rate_mbps) {
    ap.reserved_mbps -= flow_rate_mbps;
    if (ap.reserved_mbps < 0.0) ap.reserved_mbps = 0.0;
}

}  // namespace greencell

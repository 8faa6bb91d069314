#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "greencell/events.hpp"
#include "greencell/ifom.hpp"
#include "greencell/topology.hpp"
#include "greencell/traffic.hpp"
#include "greencell/wifi.hpp"

namespace greencell {

// Gateway ids: base stations keep their own id, access points are offset.
inline constexpr int kMagApBase = 1000;
inline int mag_of(ElementKey e) { return e.is_bs() ? e.id : kMagApBase + e.id; }

inline std::string hoa_of(UserId user) { return "hoa:" + std::to_string(user); }
inline std::string coa_of(ElementKey e) { return "coa:" + e.str(); }

struct FlowRecord {
    UserId user_id = 0;
    int home_bs = -1;  // -1 for native Wi-Fi sessions
    bool mde2_offloaded = false;
    bool is_cellular_user() const { return home_bs >= 0; }
};

// Per-element ON-rate aggregates for one step, indexed by element id.
struct LoadSnapshot {
    std::vector<double> bs_on_mbps;
    std::vector<double> bs_baseline_mbps;  // by home cell, as if never offloaded
    std::vector<double> bs_notional_mbps;  // home flows currently on the cellular side
    std::vector<double> ap_on_mbps;
    std::vector<int> bs_user_count;
    std::vector<int> ap_user_count;
};

// The live network: geometry plus every piece of dynamic state — sessions,
// attachments, AP reservations, the cooperation pattern, and both mobility
// anchors. All mutation goes through the methods so the protocol state
// machines and the attachment map can never diverge.
class NetworkState {
public:
    Topology topology;
    std::map<FlowId, Session> sessions;
    std::map<FlowId, FlowRecord> flows;
    std::map<FlowId, ElementKey> attachment;
    std::map<UserId, UserPosition> users;  // cellular users
    std::map<int, ApState> ap_runtime;
    CooperationPattern pattern;  // currently powered-off cells
    HomeAgent ha;
    LocalMobilityAnchor lma;
    EventLog events;
    double auth_delay_ms = 50.0;

    // per-step offload counters, keyed by origin base station
    std::map<int, int> step_offloads_uc;
    std::map<int, int> step_offloads_nc;

    void init_ap_runtime() {
        ap_runtime.clear();
        for (const auto& ap : topology.access_points) {
            ApState st;
            st.ap_id = ap.id;
            st.capacity_mbps = ap.capacity_mbps;
            ap_runtime[ap.id] = st;
        }
    }

    bool bs_live(int bs_id) const { return !pattern.off_set.count(bs_id); }

    int live_bs_count() const {
        return static_cast<int>(topology.base_stations.size() - pattern.off_set.size());
    }

    // Cellular attachment point for a user under the current pattern.
    int cellular_target_for(UserId user) const {
        int home = flows_home(user);
        if (bs_live(home)) return home;
        auto it = pattern.coverage_map.find(home);
        if (it == pattern.coverage_map.end())
            throw SimError("no covering base station for cell " + std::to_string(home));
        return it->second;
    }

    // --- session lifecycle -------------------------------------------------

    void register_cellular_flow(const Session& s, int home_bs, double t_s) {
        sessions[s.flow_id] = s;
        flows[s.flow_id] = {s.user_id, home_bs, false};
        int target = cellular_target_for(s.user_id);
        attach_to_bs_raw(s.flow_id, target);
        ha.register_coa(hoa_of(s.user_id), coa_of(ElementKey::bs(target)));
        events.emit(t_s, "coa_register",
                    {{"hoa", hoa_of(s.user_id)}, {"coa", coa_of(ElementKey::bs(target))}});
        lma.register_flow(s.flow_id, s.user_id);
        int tunnel = lma.attach(s.user_id, mag_of(ElementKey::bs(target)), InterfaceKind::Cellular);
        events.emit(t_s, "pbu", {{"user", std::to_string(s.user_id)},
                                 {"mag", std::to_string(mag_of(ElementKey::bs(target)))},
                                 {"tunnel", std::to_string(tunnel)}});
    }

    // Native Wi-Fi sessions attach directly, subject to admission.
    bool register_wifi_flow(const Session& s, int ap_id) {
        auto& ap = ap_runtime.at(ap_id);
        if (!admit_flow(ap, s.on_rate_mbps)) return false;
        sessions[s.flow_id] = s;
        flows[s.flow_id] = {s.user_id, -1, false};
        attachment[s.flow_id] = ElementKey::ap(ap_id);
        topology.find_ap(ap_id)->attached_flows.insert(s.flow_id);
        return true;
    }

    void end_flow(FlowId flow) {
        detach_raw(flow);
        ha.forget_flow(flow);
        lma.forget_flow(flow);
        sessions.erase(flow);
        flows.erase(flow);
        attachment.erase(flow);
    }

    // --- flow mobility -----------------------------------------------------

    // Drives the configured offloading protocol to move a flow onto an
    // access point. Fails (and logs) when admission rejects the flow.
    bool offload_to_ap(FlowId flow, int ap_id, Mechanism mech, double t_s, bool via_mde2) {
        auto& rec = flows.at(flow);
        auto& sess = sessions.at(flow);
        ElementKey from = attachment.at(flow);
        ElementKey to = ElementKey::ap(ap_id);
        if (from == to) return true;
        auto& ap = ap_runtime.at(ap_id);
        if (!admit_flow(ap, sess.on_rate_mbps)) {
            events.emit(t_s, "offload_fail", {{"flow", std::to_string(flow)},
                                              {"ap", std::to_string(ap_id)},
                                              {"reason", "admission"}});
            return false;
        }
        detach_raw(flow);
        attachment[flow] = to;
        topology.find_ap(ap_id)->attached_flows.insert(flow);
        drive_protocols(flow, rec.user_id, to, mech, t_s);
        rec.mde2_offloaded = via_mde2;
        if (from.is_bs()) {
            auto& counter = mech == Mechanism::UserCentric ? step_offloads_uc : step_offloads_nc;
            ++counter[from.id];
        }
        events.emit(t_s, "offload",
                    {{"mech", to_string(mech)},
                     {"flow", std::to_string(flow)},
                     {"user", std::to_string(rec.user_id)},
                     {"from", from.str()},
                     {"to", to.str()},
                     {"handover_ms", format_double(auth_delay_ms + ap.predicted_delay_ms(), 1)}});
        return true;
    }

    void move_to_bs(FlowId flow, int bs_id, Mechanism mech, double t_s,
                    std::string_view reason) {
        auto& rec = flows.at(flow);
        ElementKey from = attachment.at(flow);
        ElementKey to = ElementKey::bs(bs_id);
        if (from == to) return;
        detach_raw(flow);
        attachment[flow] = to;
        topology.find_bs(bs_id)->attached_users.insert(rec.user_id);
        drive_protocols(flow, rec.user_id, to, mech, t_s);
        rec.mde2_offloaded = false;
        events.emit(t_s, "return", {{"mech", to_string(mech)},
                                    {"flow", std::to_string(flow)},
                                    {"from", from.str()},
                                    {"to", to.str()},
                                    {"reason", std::string(reason)}});
    }

    // --- aggregates ----------------------------------------------------------

    LoadSnapshot compute_loads() const {
        LoadSnapshot snap;
        size_t nb = topology.base_stations.size();
        size_t na = topology.access_points.size();
        snap.bs_on_mbps.assign(nb, 0.0);
        snap.bs_baseline_mbps.assign(nb, 0.0);
        snap.bs_notional_mbps.assign(nb, 0.0);
        snap.ap_on_mbps.assign(na, 0.0);
        snap.bs_user_count.assign(nb, 0);
        snap.ap_user_count.assign(na, 0);
        for (const auto& [flow, sess] : sessions) {
            const auto& rec = flows.at(flow);
            ElementKey at = attachment.at(flow);
            if (at.is_bs())
                ++snap.bs_user_count[at.id];
            else
                ++snap.ap_user_count[at.id];
            if (rec.is_cellular_user() && sess.on)
                snap.bs_baseline_mbps[rec.home_bs] += sess.on_rate_mbps;
            if (!sess.on) continue;
            if (at.is_bs()) {
                snap.bs_on_mbps[at.id] += sess.on_rate_mbps;
                snap.bs_notional_mbps[rec.home_bs] += sess.on_rate_mbps;
            } else {
                snap.ap_on_mbps[at.id] += sess.on_rate_mbps;
            }
        }
        return snap;
    }

    void refresh_ap_rates(const LoadSnapshot& snap) {
        for (auto& [id, ap] : ap_runtime) {
            ap.on_rate_mbps = snap.ap_on_mbps[id];
            ap.attached_user_count = snap.ap_user_count[id];
        }
    }

    // AP candidates covering a user's position with positive spare capacity,
    // best spare first.
    std::vector<int> coverage_aps_by_spare(UserId user) const {
        std::vector<int> ids;
        auto it = users.find(user);
        if (it == users.end()) return ids;
        for (int ap : it->second.in_wifi_coverage_of)
            if (ap_runtime.at(ap).spare_mbps() > kRateEpsilonMbps) ids.push_back(ap);
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            double sa = ap_runtime.at(a).spare_mbps();
            double sb = ap_runtime.at(b).spare_mbps();
            if (sa != sb) return sa > sb;
            return a < b;
        });
        return ids;
    }

    int flows_home(UserId user) const {
        auto it = users.find(user);
        if (it == users.end()) throw SimError("unknown user " + std::to_string(user));
        return it->second.serving_bs;
    }

private:
    void attach_to_bs_raw(FlowId flow, int bs_id) {
        attachment[flow] = ElementKey::bs(bs_id);
        topology.find_bs(bs_id)->attached_users.insert(flows.at(flow).user_id);
    }

    void detach_raw(FlowId flow) {
        auto it = attachment.find(flow);
        if (it == attachment.end()) return;
        const auto& rec = flows.at(flow);
        if (it->second.is_bs()) {
            auto* bs = topology.find_bs(it->second.id);
            // a user may hold several flows on the same station
            bool others = false;
            for (const auto& [f, k] : attachment)
                if (f != flow && k == it->second && flows.at(f).user_id == rec.user_id)
                    others = true;
            if (!others) bs->attached_users.erase(rec.user_id);
        } else {
            topology.find_ap(it->second.id)->attached_flows.erase(flow);
            release_flow(ap_runtime.at(it->second.id), sessions.at(flow).on_rate_mbps);
        }
    }

    // Mirror the same attachment truth into both protocol views: a care-of
    // address binding at the home agent and a proxy binding at the anchor.
    void drive_protocols(FlowId flow, UserId user, ElementKey target, Mechanism mech,
                         double t_s) {
        int bid = ha.register_coa(hoa_of(user), coa_of(target));
        ha.bind_flow(flow, hoa_of(user), bid);
        InterfaceKind kind = target.is_ap() ? InterfaceKind::WiFi : InterfaceKind::Cellular;
        int tunnel = lma.attach(user, mag_of(target), kind);
        lma.move_flow(flow, mag_of(target));
        if (mech == Mechanism::UserCentric) {
            events.emit(t_s, "flow_bind", {{"flow", std::to_string(flow)},
                                           {"hoa", hoa_of(user)},
                                           {"bid", std::to_string(bid)}});
        } else {
            events.emit(t_s, "flow_move", {{"flow", std::to_string(flow)},
                                           {"mag", std::to_string(mag_of(target))},
                                           {"tunnel", std::to_string(tunnel)}});
        }
    }
};

}  // namespace greencell

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "greencell/types.hpp"

namespace greencell {

// ---------------------------------------------------------------------------
// User-centric flow mobility: home agent with multiple care-of-address
// registration and per-flow bindings. Messages are abstract records; the
// state machine, not the wire encoding, is what matters here.
// ---------------------------------------------------------------------------

struct BindingCacheEntry {
    std::string hoa;
    int binding_id = 0;
    std::string coa;
    double lifetime_s = 0.0;
    bool is_default = false;
};

class HomeAgent {
public:
    // Registers a care-of address for a home address. The first binding of a
    // home address becomes the default; re-registering an existing (hoa, coa)
    // pair refreshes its lifetime and returns the original binding id.
    int register_coa(const std::string& hoa, const std::string& coa,
                     double lifetime_s = 3600.0) {
        auto& entries = cache_[hoa];
        for (auto& e : entries) {
            if (e.coa == coa) {
                e.lifetime_s = lifetime_s;
                return e.binding_id;
            }
        }
        BindingCacheEntry e;
        e.hoa = hoa;
        e.binding_id = next_binding_id_++;
        e.coa = coa;
        e.lifetime_s = lifetime_s;
        e.is_default = entries.empty();
        entries.push_back(e);
        return e.binding_id;
    }

    // Associates a flow with one of the home address's bindings, replacing
    // any previous association. Unknown bindings are rejected untouched.
    bool bind_flow(FlowId flow, const std::string& hoa, int binding_id) {
        if (!find_entry(hoa, binding_id)) return false;
        flow_cache_[flow] = {hoa, binding_id};
        return true;
    }

    // Care-of address the home agent tunnels a flow to: its bound binding,
    // or the default binding when the flow is unbound.
    std::optional<std::string> route(FlowId flow, const std::string& hoa) const {
        auto ci = cache_.find(hoa);
        if (ci == cache_.end() || ci->second.empty()) return std::nullopt;
        auto fi = flow_cache_.find(flow);
        if (fi != flow_cache_.end() && fi->second.first == hoa) {
            for (const auto& e : ci->second)
                if (e.binding_id == fi->second.second) return e.coa;
        }
        for (const auto& e : ci->second)
            if (e.is_default) return e.coa;
        return std::nullopt;
    }

    // Removes a binding. Flows bound to it fall back to the default binding;
    // removing the default promotes the oldest survivor. Unknown bindings
    // are a warned no-op.
    bool deregister(const std::string& hoa, int binding_id) {
        auto ci = cache_.find(hoa);
        if (ci == cache_.end()) return false;
        auto& entries = ci->second;
        auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const auto& e) { return e.binding_id == binding_id; });
        if (it == entries.end()) return false;
        bool was_default = it->is_default;
        entries.erase(it);
        if (was_default && !entries.empty()) entries.front().is_default = true;
        for (auto fi = flow_cache_.begin(); fi != flow_cache_.end();) {
            if (fi->second.first == hoa && fi->second.second == binding_id)
                fi = flow_cache_.erase(fi);
            else
                ++fi;
        }
        return true;
    }

    void forget_flow(FlowId flow) { flow_cache_.erase(flow); }

    const std::vector<BindingCacheEntry>* bindings(const std::string& hoa) const {
        auto it = cache_.find(hoa);
        return it == cache_.end() ? nullptr : &it->second;
    }
    const std::map<FlowId, std::pair<std::string, int>>& flow_mobility_cache() const {
        return flow_cache_;
    }

private:
    const BindingCacheEntry* find_entry(const std::string& hoa, int binding_id) const {
        auto ci = cache_.find(hoa);
        if (ci == cache_.end()) return nullptr;
        for (const auto& e : ci->second)
            if (e.binding_id == binding_id) return &e;
        return nullptr;
    }

    std::map<std::string, std::vector<BindingCacheEntry>> cache_;  // per hoa, oldest first
    std::map<FlowId, std::pair<std::string, int>> flow_cache_;
    int next_binding_id_ = 1;
};

// ---------------------------------------------------------------------------
// Network-centric flow mobility: mobile access gateways signal on behalf of
// the user, a local mobility anchor keeps proxy bindings, tunnels, and the
// flow mobility cache. A logical interface hides the physical radio, so the
// user-visible address never changes.
// ---------------------------------------------------------------------------

enum class InterfaceKind { Cellular, WiFi };

struct ProxyBinding {
    UserId user_id = 0;
    int mag_id = 0;
    int tunnel_id = 0;
    double lifetime_s = 0.0;
};

struct LogicalInterface {
    UserId user_id = 0;
    std::set<InterfaceKind> physical_interfaces;
    std::string exposed_address;
};

class LocalMobilityAnchor {
public:
    // Proxy binding update from a gateway that detected the user on its
    // access link. Creates the binding and a bi-directional tunnel, or
    // refreshes the existing ones; the logical interface keeps the address.
    int attach(UserId user, int mag_id, InterfaceKind kind, double lifetime_s = 3600.0) {
        auto& lif = lifs_[user];
        if (lif.exposed_address.empty()) {
            lif.user_id = user;
            lif.exposed_address = "addr:" + std::to_string(user);
        }
        lif.physical_interfaces.insert(kind);

        auto& bindings = bindings_[user];
        for (auto& b : bindings) {
            if (b.mag_id == mag_id) {
                b.lifetime_s = lifetime_s;
                last_attach_[user] = mag_id;
                return b.tunnel_id;
            }
        }
        ProxyBinding b;
        b.user_id = user;
        b.mag_id = mag_id;
        b.tunnel_id = next_tunnel_++;
        b.lifetime_s = lifetime_s;
        bindings.push_back(b);
        last_attach_[user] = mag_id;
        return b.tunnel_id;
    }

    void register_flow(FlowId flow, UserId user) { flow_user_[flow] = user; }

    // Points the flow mobility cache at the target gateway. Rejected when
    // the flow's user has no live binding there.
    bool move_flow(FlowId flow, int target_mag) {
        auto ui = flow_user_.find(flow);
        if (ui == flow_user_.end()) return false;
        if (!binding_for(ui->second, target_mag)) return false;
        flow_cache_[flow] = target_mag;
        return true;
    }

    // Tunnel the anchor forwards a flow through: the cached gateway, or the
    // user's most recently attached one for uncached flows.
    std::optional<int> route(FlowId flow) const {
        auto ui = flow_user_.find(flow);
        if (ui == flow_user_.end()) return std::nullopt;
        auto fi = flow_cache_.find(flow);
        if (fi != flow_cache_.end()) {
            if (const auto* b = binding_for(ui->second, fi->second)) return b->tunnel_id;
        }
        auto li = last_attach_.find(ui->second);
        if (li == last_attach_.end()) return std::nullopt;
        const auto* b = binding_for(ui->second, li->second);
        return b ? std::optional<int>(b->tunnel_id) : std::nullopt;
    }

    void forget_flow(FlowId flow) {
        flow_cache_.erase(flow);
        flow_user_.erase(flow);
    }

    const ProxyBinding* binding_for(UserId user, int mag_id) const {
        auto bi = bindings_.find(user);
        if (bi == bindings_.end()) return nullptr;
        for (const auto& b : bi->second)
            if (b.mag_id == mag_id) return &b;
        return nullptr;
    }
    const std::vector<ProxyBinding>* bindings(UserId user) const {
        auto it = bindings_.find(user);
        return it == bindings_.end() ? nullptr : &it->second;
    }
    const LogicalInterface* logical_interface(UserId user) const {
        auto it = lifs_.find(user);
        return it == lifs_.end() ? nullptr : &it->second;
    }
    const std::map<FlowId, int>& flow_mobility_cache() const { return flow_cache_; }

private:
    std::map<UserId, std::vector<ProxyBinding>> bindings_;  // attach order
    std::map<UserId, LogicalInterface> lifs_;
    std::map<FlowId, int> flow_cache_;     // flow -> mag
    std::map<FlowId, UserId> flow_user_;
    std::map<UserId, int> last_attach_;
    int next_tunnel_ = 1;
};

}  // namespace greencell

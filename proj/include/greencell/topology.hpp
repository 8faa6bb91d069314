#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "greencell/rng.hpp"
#include "greencell/types.hpp"

namespace greencell {

struct BaseStation {
    int id = 0;
    Point position;
    double coverage_radius_m = 300.0;
    BsMode mode = BsMode::TriSectorized;
    std::set<UserId> attached_users;
};

struct AccessPoint {
    int id = 0;
    std::string mac;
    std::string ssid;
    Point position;
    double coverage_radius_m = 50.0;
    double capacity_mbps = 10.0;
    std::set<FlowId> attached_flows;
};

struct UserPosition {
    UserId user_id = 0;
    Point position;
    int serving_bs = 0;
    std::set<int> in_wifi_coverage_of;
};

// Assignment of every powered-off cell to a live base station that covers it.
struct CooperationPattern {
    std::set<int> off_set;
    std::map<int, int> coverage_map;  // off bs id -> covering live bs id
};

struct Topology {
    std::vector<BaseStation> base_stations;
    std::vector<AccessPoint> access_points;
    double cluster_radius_m = 0.0;      // radius of the bounding region
    double inter_site_distance_m = 0.0;

    const BaseStation* find_bs(int id) const {
        for (const auto& b : base_stations)
            if (b.id == id) return &b;
        return nullptr;
    }
    BaseStation* find_bs(int id) {
        for (auto& b : base_stations)
            if (b.id == id) return &b;
        return nullptr;
    }
    const AccessPoint* find_ap(int id) const {
        for (const auto& a : access_points)
            if (a.id == id) return &a;
        return nullptr;
    }
    AccessPoint* find_ap(int id) {
        for (auto& a : access_points)
            if (a.id == id) return &a;
        return nullptr;
    }

    double coverage_radius_m() const {
        return base_stations.empty() ? 0.0 : base_stations.front().coverage_radius_m;
    }
    // Reach of a live base station standing in for a powered-off neighbor.
    double extended_radius_m() const {
        return inter_site_distance_m + coverage_radius_m();
    }
    bool in_any_cell(const Point& p) const {
        for (const auto& b : base_stations)
            if (distance(p, b.position) <= b.coverage_radius_m) return true;
        return false;
    }
};

// Area of the union of the seven coverage disks. Adjacent disks (centers
// sqrt(3)*R apart) overlap pairwise in 12 lenses; every triple intersection
// degenerates to a point, so inclusion-exclusion stops at pairs:
//   7*pi*R^2 - 12*(pi/3 - sqrt(3)/2)*R^2 = (3*pi + 6*sqrt(3))*R^2.
inline double cluster_union_area_m2(double coverage_radius_m) {
    return (3.0 * std::numbers::pi + 6.0 * std::numbers::sqrt3) * coverage_radius_m *
           coverage_radius_m;
}

// Seven-cell cluster: one site at the origin, six on a ring at sqrt(3)*R.
inline Topology build_cluster(int n_cells, double coverage_radius_m) {
    if (n_cells != 7)
        throw ConfigError("build_cluster: only 7-cell clusters are supported, got " +
                          std::to_string(n_cells));
    if (!(coverage_radius_m > 0.0))
        throw ConfigError("build_cluster: coverage radius must be positive");

    Topology topo;
    topo.inter_site_distance_m = std::numbers::sqrt3 * coverage_radius_m;
    topo.cluster_radius_m = topo.inter_site_distance_m + coverage_radius_m;

    BaseStation center;
    center.id = 0;
    center.coverage_radius_m = coverage_radius_m;
    topo.base_stations.push_back(center);
    for (int k = 0; k < 6; ++k) {
        BaseStation bs;
        bs.id = k + 1;
        bs.coverage_radius_m = coverage_radius_m;
        double angle = k * std::numbers::pi / 3.0;
        bs.position = {topo.inter_site_distance_m * std::cos(angle),
                       topo.inter_site_distance_m * std::sin(angle)};
        topo.base_stations.push_back(bs);
    }
    return topo;
}

// All access points whose (closed) coverage disk contains the point.
inline std::set<int> wifi_coverage(const Topology& topo, const Point& p) {
    std::set<int> ids;
    for (const auto& ap : topo.access_points)
        if (distance(p, ap.position) <= ap.coverage_radius_m) ids.insert(ap.id);
    return ids;
}

// Uniform position in the annulus [min_distance, R] around a cell site,
// by rejection from the bounding square.
inline Point sample_cell_position(const BaseStation& bs, RngStream& rng,
                                  double min_distance_m) {
    const double r = bs.coverage_radius_m;
    for (;;) {
        double x = rng.uniform(-r, r);
        double y = rng.uniform(-r, r);
        double d2 = x * x + y * y;
        if (d2 <= r * r && d2 >= min_distance_m * min_distance_m)
            return {bs.position.x + x, bs.position.y + y};
    }
}

inline UserPosition place_user_in_cell(const Topology& topo, int cell_id, UserId user_id,
                                       std::uint64_t seed, double min_distance_m = 20.0) {
    const BaseStation* bs = topo.find_bs(cell_id);
    RngStream rng(seed);
    UserPosition up;
    up.user_id = user_id;
    up.serving_bs = cell_id;
    up.position = sample_cell_position(*bs, rng, min_distance_m);
    up.in_wifi_coverage_of = wifi_coverage(topo, up.position);
    return up;
}

inline std::vector<UserPosition> place_users(const Topology& topo, int count,
                                             std::uint64_t rng_seed,
                                             double min_distance_m = 20.0) {
    std::vector<UserPosition> users;
    users.reserve(count);
    RngStream cells(derive_seed(rng_seed, "topology.user.cell"));
    for (int i = 0; i < count; ++i) {
        int cell = static_cast<int>(cells.uniform_int(topo.base_stations.size()));
        users.push_back(place_user_in_cell(topo, cell, i,
                                           derive_seed(rng_seed, "topology.user.pos", i),
                                           min_distance_m));
    }
    return users;
}

inline std::string ap_mac(int id) {
    char buf[18];
    std::snprintf(buf, sizeof buf, "02:00:00:00:%02x:%02x", (id >> 8) & 0xff, id & 0xff);
    return buf;
}

// Poisson-distributed access points, uniform over the union of the cells.
// Candidates outside every cell disk are re-sampled.
inline std::vector<AccessPoint> place_access_points(const Topology& topo,
                                                    double density_per_km2,
                                                    double capacity_mbps,
                                                    std::uint64_t rng_seed,
                                                    double ap_radius_m = 50.0) {
    if (density_per_km2 < 0.0)
        throw ConfigError("place_access_points: density must be non-negative");
    const double area_km2 = cluster_union_area_m2(topo.coverage_radius_m()) * 1e-6;
    RngStream count_rng(derive_seed(rng_seed, "topology.ap.count"));
    const int count = count_rng.poisson(density_per_km2 * area_km2);

    std::vector<AccessPoint> aps;
    aps.reserve(count);
    const double bound = topo.cluster_radius_m;
    for (int i = 0; i < count; ++i) {
        RngStream rng(derive_seed(rng_seed, "topology.ap.pos", i));
        Point p;
        do {
            p = {rng.uniform(-bound, bound), rng.uniform(-bound, bound)};
        } while (!topo.in_any_cell(p));
        AccessPoint ap;
        ap.id = i;
        ap.mac = ap_mac(i);
        ap.ssid = "wlan-" + std::to_string(i);
        ap.position = p;
        ap.coverage_radius_m = ap_radius_m;
        ap.capacity_mbps = capacity_mbps;
        aps.push_back(std::move(ap));
    }
    return aps;
}

// Canonical off-sets for the 7-cell cluster. Ring ids are 1..6
// counter-clockwise; the sets maximize spacing between off cells.
inline CooperationPattern cooperation_pattern(int n_off) {
    if (n_off < 0 || n_off > 4)
        throw std::invalid_argument(
            "cooperation_pattern: at most 4 of 7 base stations can be off, got " +
            std::to_string(n_off));
    CooperationPattern p;
    switch (n_off) {
        case 0:
            break;
        case 1:
            p.off_set = {0};
            p.coverage_map = {{0, 1}};
            break;
        case 2:
            p.off_set = {0, 1};
            p.coverage_map = {{0, 2}, {1, 2}};
            break;
        case 3:
            p.off_set = {0, 1, 4};
            p.coverage_map = {{0, 2}, {1, 2}, {4, 3}};
            break;
        case 4:
            p.off_set = {0, 1, 3, 5};
            p.coverage_map = {{0, 2}, {1, 2}, {3, 2}, {5, 4}};
            break;
    }
    return p;
}

}  // namespace greencell

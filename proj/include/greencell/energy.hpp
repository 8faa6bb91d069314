#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "greencell/types.hpp"

namespace greencell {

// Affine per-sector power model: p0 static + load-proportional pmax.
// Tri-sectorized mode runs all sectors, omni-directional a single one;
// a powered-off site draws the configured standby power.
struct PowerModel {
    double p0_w = 130.0;
    double pmax_w = 20.0;
    int sectors = 3;
    double sleep_w = 0.0;
    double ap_fraction = 0.01;  // of full-load tri-sectorized site power
};

inline double bs_power(const PowerModel& m, BsMode mode, double load_fraction) {
    if (!(load_fraction >= 0.0 && load_fraction <= 1.0))
        throw std::domain_error("bs_power: load fraction must be in [0,1]");
    switch (mode) {
        case BsMode::TriSectorized:
            return m.sectors * (m.p0_w + load_fraction * m.pmax_w);
        case BsMode::Omni:
            return m.p0_w + load_fraction * m.pmax_w;
        case BsMode::Off:
            return m.sleep_w;
    }
    return 0.0;
}

// Access points draw a fixed fraction of a full-load tri-sectorized site,
// independent of their own load, and are never switched off.
inline double ap_power(const PowerModel& m) {
    return m.ap_fraction * bs_power(m, BsMode::TriSectorized, 1.0);
}

// Cumulative per-element energy plus the energy the always-on tri-sectorized
// reference deployment would have used under the same traffic.
struct EnergyLedger {
    std::map<ElementKey, double> energy_wh;
    double baseline_cellular_wh = 0.0;

    double cellular_wh() const {
        double sum = 0.0;
        for (const auto& [k, wh] : energy_wh)
            if (k.is_bs()) sum += wh;
        return sum;
    }
    double ap_wh() const {
        double sum = 0.0;
        for (const auto& [k, wh] : energy_wh)
            if (k.is_ap()) sum += wh;
        return sum;
    }
};

inline void accumulate(EnergyLedger& ledger,
                       const std::vector<std::pair<ElementKey, double>>& element_powers_w,
                       double dt_s) {
    if (!(dt_s > 0.0)) throw std::invalid_argument("accumulate: dt must be positive");
    for (const auto& [key, watts] : element_powers_w)
        ledger.energy_wh[key] += watts * dt_s / 3600.0;
}

inline void accumulate_baseline(EnergyLedger& ledger, double cellular_watts, double dt_s) {
    if (!(dt_s > 0.0)) throw std::invalid_argument("accumulate: dt must be positive");
    ledger.baseline_cellular_wh += cellular_watts * dt_s / 3600.0;
}

// Cellular from-the-socket savings relative to the always-on baseline.
// Access-point energy is reported separately and never enters this figure.
inline double savings_percent(const EnergyLedger& ledger) {
    if (!(ledger.baseline_cellular_wh > 0.0))
        throw SimError("savings: baseline cellular energy is zero");
    return 100.0 * (1.0 - ledger.cellular_wh() / ledger.baseline_cellular_wh);
}

}  // namespace greencell

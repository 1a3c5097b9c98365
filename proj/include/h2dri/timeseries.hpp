#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "h2dri/errors.hpp"

namespace h2dri {

enum class Unit {
    UsdPerMwh,   // electricity price
    Mw,          // power
    TonPerHour,  // mass flow
    Ton,         // mass
};

inline const char* unit_name(Unit u) {
    switch (u) {
        case Unit::UsdPerMwh: return "$/MWh";
        case Unit::Mw: return "MW";
        case Unit::TonPerHour: return "t/h";
        case Unit::Ton: return "t";
    }
    return "?";
}

inline bool unit_is_nonnegative(Unit u) {
    // Power and mass quantities cannot go negative; prices can.
    return u == Unit::Mw || u == Unit::TonPerHour || u == Unit::Ton;
}

// Hourly-indexed numeric profile. Hour indices run start_hour..start_hour+T-1
// (1-based by convention throughout).
struct TimeSeries {
    int start_hour = 1;
    std::vector<double> values;
    Unit unit = Unit::Mw;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }

    // at_hour(t) with t in 1..T
    double at_hour(int t) const { return values.at(static_cast<std::size_t>(t - start_hour)); }

    void validate(const std::string& name, std::size_t horizon) const {
        if (values.size() != horizon) {
            throw ValidationError(name + ": length " + std::to_string(values.size()) +
                                  " does not match horizon " + std::to_string(horizon));
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!std::isfinite(values[i])) {
                throw ValidationError(name + "[" + std::to_string(i + 1) + "]: non-finite value");
            }
            if (unit_is_nonnegative(unit) && values[i] < 0.0) {
                throw ValidationError(name + "[" + std::to_string(i + 1) + "]: negative value " +
                                      std::to_string(values[i]) + " not allowed for " + unit_name(unit));
            }
        }
    }
};

}  // namespace h2dri

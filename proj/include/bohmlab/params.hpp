#pragma once

#include <map>
#include <string>

#include "bohmlab/errors.hpp"

namespace bohmlab {

/// Physical constants plus named scenario parameters (omega, beta, k, sigma,
/// morse_d, morse_alpha, ...). Natural units hbar = m = 1 by default.
struct PhysicalParams {
    double hbar = 1.0;
    double mass = 1.0;
    std::map<std::string, double> extras;

    double extra(const std::string& name) const {
        auto it = extras.find(name);
        if (it == extras.end())
            throw UsageError("PhysicalParams: missing parameter '" + name + "'");
        return it->second;
    }

    double extra_or(const std::string& name, double fallback) const {
        auto it = extras.find(name);
        return it == extras.end() ? fallback : it->second;
    }

    PhysicalParams with(const std::string& name, double value) const {
        PhysicalParams p = *this;
        p.extras[name] = value;
        return p;
    }

    void validate() const {
        if (!(hbar > 0.0)) throw ValidationError("hbar: must be positive");
        if (!(mass > 0.0)) throw ValidationError("mass: must be positive");
    }
};

} // namespace bohmlab

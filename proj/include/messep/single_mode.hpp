#pragma once

#include <cmath>
#include <complex>

#include "messep/hydro.hpp"

namespace messep {

/// Single-mode profile f0 = (1 + cos(p x)) / 2 pi at alpha = 1/2:
/// g0(z) = z^p / 2 and A0(w) = 2 pi^2 cos(pi w^p / 2). Analytic everywhere,
/// yet the density loses its spatial derivative on the extremal set exactly
/// at the critical time below.
struct SingleModeProfile {
    int p;
    CharFlow flow;
    double critical_time;  // 1 / (p pi^3)
};

inline SingleModeProfile single_mode_profile(int p) {
    if (p < 1) throw std::invalid_argument("single_mode_profile: p >= 1");
    CharFlow flow;
    flow.alpha = 0.5;
    flow.g0 = [p](cplx z) { return 0.5 * std::pow(z, p); };
    flow.dg0 = [p](cplx z) { return 0.5 * static_cast<double>(p) * std::pow(z, p - 1); };
    flow.A0 = [p](cplx w) {
        return 2.0 * M_PI * M_PI * std::cos(0.5 * M_PI * std::pow(w, p));
    };
    flow.dA0 = [p](cplx w) {
        return -M_PI * M_PI * M_PI * static_cast<double>(p) * std::pow(w, p - 1) *
               std::sin(0.5 * M_PI * std::pow(w, p));
    };
    return {p, std::move(flow), 1.0 / (p * M_PI * M_PI * M_PI)};
}

}  // namespace messep

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "messep/hydro.hpp"

namespace messep {

/// Closed-form data for the maximally packed step initial profile
/// f0 = (2 pi alpha)^{-1} on [-pi alpha, pi alpha].
struct StepProfileData {
    double alpha;
    cplx w_alpha;       // e^{i pi alpha}
    double t_lower;     // congestion disappears (t_* for alpha <= 1/2)
    double t_upper;     // voids disappear
};

inline StepProfileData step_profile(double alpha) {
    if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must be in (0,1)");
    const double a = (1.0 - std::cos(M_PI * alpha)) / (2.0 * M_PI * M_PI);
    const double b = (1.0 + std::cos(M_PI * alpha)) / (2.0 * M_PI * M_PI);
    return {alpha, std::polar(1.0, M_PI * alpha), std::min(a, b), std::max(a, b)};
}

/// Flow with the closed-form generating function
///   g0(z) = log((1 - z conj(w_a)) / (1 - z w_a)) / (2 i pi alpha)
/// and the rational characteristic coefficient
///   A0(w) = 2 pi^2 (1 - w^2) / (w^2 - 2 cos(pi alpha) w + 1).
inline CharFlow make_step_flow(double alpha) {
    const auto data = step_profile(alpha);
    const cplx wa = data.w_alpha;
    const double c = std::cos(M_PI * alpha);
    CharFlow flow;
    flow.alpha = alpha;
    flow.g0 = [alpha, wa](cplx z) {
        return std::log((1.0 - z * std::conj(wa)) / (1.0 - z * wa)) /
               (cplx(0.0, 2.0 * M_PI * alpha));
    };
    flow.dg0 = [alpha, wa](cplx z) {
        return (wa / (1.0 - z * wa) - std::conj(wa) / (1.0 - z * std::conj(wa))) /
               (cplx(0.0, 2.0 * M_PI * alpha));
    };
    flow.A0 = [c](cplx w) {
        return 2.0 * M_PI * M_PI * (1.0 - w * w) / (w * w - 2.0 * c * w + 1.0);
    };
    flow.dA0 = [c](cplx w) {
        const cplx den = w * w - 2.0 * c * w + 1.0;
        const cplx num = 1.0 - w * w;
        return 2.0 * M_PI * M_PI * (-2.0 * w * den - num * (2.0 * w - 2.0 * c)) / (den * den);
    };
    return flow;
}

/// Critical points of Phi_t: roots of the palindromic quartic
/// w^4 + a w^3 + b w^2 + a w + 1 via the substitution v = (w + 1/w)/2,
///   v(t) = cos(pi alpha)(1 - pi^2 t) +- sqrt(pi^2 t (pi^2 cos^2(pi alpha) t
///           + 2 sin^2(pi alpha))).
/// The multiset is closed under conjugation and inversion.
inline std::vector<cplx> step_critical_points(double alpha, double t) {
    if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must be in (0,1)");
    const double c = std::cos(M_PI * alpha);
    const double s2 = std::sin(M_PI * alpha) * std::sin(M_PI * alpha);
    const double disc = M_PI * M_PI * t * (M_PI * M_PI * c * c * t + 2.0 * s2);
    const double root = std::sqrt(std::max(0.0, disc));
    std::vector<cplx> out;
    for (double v : {c * (1.0 - M_PI * M_PI * t) + root, c * (1.0 - M_PI * M_PI * t) - root}) {
        const cplx sq = std::sqrt(cplx(v * v - 1.0, 0.0));
        out.push_back(cplx(v, 0.0) + sq);
        out.push_back(cplx(v, 0.0) - sq);
    }
    return out;
}

inline std::array<double, 2> step_quartic_coefficients(double alpha, double t) {
    const double c = std::cos(M_PI * alpha);
    return {4.0 * c * (M_PI * M_PI * t - 1.0),
            4.0 * c * c + 2.0 - 8.0 * M_PI * M_PI * t};
}

/// arg Phi_t(e^{i theta}) on the unit circle, where A0 is purely imaginary:
/// theta + 2 pi^2 t sin(theta) / (cos(pi alpha) - cos(theta)).
inline double step_boundary_argument(double alpha, double t, double theta) {
    return theta + 2.0 * M_PI * M_PI * t * std::sin(theta) /
                       (std::cos(M_PI * alpha) - std::cos(theta));
}

struct StepFronts {
    std::optional<double> phi1;  // plateau edge, alive for t < t_lower
    std::optional<double> phi2;  // support edge, alive for t < t_upper
};

/// Saturation front angles: images under Phi_t of the unit-circle critical
/// points. Requires alpha <= 1/2 (the complementary case follows by the
/// particle-hole reflection of the critical set).
inline StepFronts step_fronts(double alpha, double t) {
    if (alpha > 0.5) throw std::invalid_argument("step_fronts: use alpha <= 1/2");
    const auto data = step_profile(alpha);
    const double c = std::cos(M_PI * alpha);
    const double s2 = std::sin(M_PI * alpha) * std::sin(M_PI * alpha);
    const double root =
        std::sqrt(std::max(0.0, M_PI * M_PI * t * (M_PI * M_PI * c * c * t + 2.0 * s2)));
    const double v_plus = c * (1.0 - M_PI * M_PI * t) + root;
    const double v_minus = c * (1.0 - M_PI * M_PI * t) - root;
    StepFronts fronts;
    if (t > 0.0 && t < data.t_lower && std::abs(v_plus) < 1.0)
        fronts.phi1 = step_boundary_argument(alpha, t, std::acos(v_plus));
    if (t > 0.0 && t < data.t_upper && std::abs(v_minus) < 1.0)
        fronts.phi2 = step_boundary_argument(alpha, t, std::acos(v_minus));
    return fronts;
}

}  // namespace messep

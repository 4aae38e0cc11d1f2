#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "messep/bell.hpp"
#include "messep/fft.hpp"
#include "messep/partitions.hpp"

namespace messep {

using cplx = std::complex<double>;

struct numerical_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// truncated Taylor series (jets) for the eigenvalue-drift factor
// ---------------------------------------------------------------------------

namespace detail {

/// Coefficients of exp(series), by the standard b' = a' b recurrence.
inline std::vector<double> jet_exp(std::span<const double> a) {
    std::vector<double> b(a.size());
    b[0] = std::exp(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) acc += j * a[j] * b[k - j];
        b[k] = acc / k;
    }
    return b;
}

}  // namespace detail

/// d^j/dx^j of h_t^n(x) = exp(-2 pi^2 n t sin(pi alpha + x)/sin(pi alpha))
/// at x = 0, for j = 0..order, by exact series composition.
inline std::vector<double> drift_factor_derivatives(int n, double t, double alpha, int order) {
    if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must be in (0,1)");
    std::vector<double> a(order + 1);
    const double scale = -2.0 * M_PI * M_PI * n * t / std::sin(M_PI * alpha);
    double fact = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        a[k] = scale * std::sin(M_PI * alpha + 0.5 * M_PI * k) / fact;
    }
    auto b = detail::jet_exp(a);
    fact = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        b[k] *= fact;
    }
    return b;
}

// ---------------------------------------------------------------------------
// limiting moments
// ---------------------------------------------------------------------------

/// Propagate Fourier coefficients of the density through the limiting
/// evolution: out_n(t) = sum_{pi |- n} (2 pi alpha)^{l-1} / prod(mult!)
/// * d^{l-1} h_t^n(0) * prod m_{pi_i}. The same formula restarts from any
/// intermediate time (semiflow).
inline std::vector<cplx> propagate_moments(std::span<const cplx> m, double t, double alpha) {
    const int n_max = static_cast<int>(m.size());
    std::vector<cplx> out(n_max);
    for (int n = 1; n <= n_max; ++n) {
        const auto deriv = drift_factor_derivatives(n, t, alpha, n - 1);
        cplx acc = 0.0;
        for (const auto& pi : enumerate_partitions(n)) {
            const int ell = static_cast<int>(pi.length());
            double w = std::pow(2.0 * M_PI * alpha, ell - 1) * deriv[ell - 1];
            for (int mult : pi.multiplicities()) w /= factorial(mult);
            cplx mpi = 1.0;
            for (int part : pi.parts()) mpi *= m[part - 1];
            acc += w * mpi;
        }
        out[n - 1] = acc;
    }
    return out;
}

/// Same quantity through the partial-Bell route (grouping partitions by
/// length); used as an independent cross-check of propagate_moments.
inline cplx propagate_moment_bell(std::span<const cplx> m, int n, double t, double alpha) {
    if (n < 1 || n > static_cast<int>(m.size()))
        throw std::invalid_argument("propagate_moment_bell: n out of range");
    std::vector<cplx> scaled(n);
    double fact = 1.0;
    for (int j = 1; j <= n; ++j) {
        fact *= j;
        scaled[j - 1] = fact * m[j - 1];
    }
    const auto deriv = drift_factor_derivatives(n, t, alpha, n - 1);
    cplx acc = 0.0;
    const double nfact = static_cast<double>(factorial(n));
    for (int k = 1; k <= n; ++k) {
        acc += bell_partial(n, k, scaled) / nfact * deriv[k - 1] *
               std::pow(2.0 * M_PI * alpha, k - 1);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// velocity field and flux
// ---------------------------------------------------------------------------

/// V_alpha(z) = 2 pi^2 sin(pi alpha (1 + 2z)) / sin(pi alpha).
inline cplx velocity(cplx z, double alpha) {
    if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must be in (0,1)");
    return 2.0 * M_PI * M_PI * std::sin(M_PI * alpha * (1.0 + 2.0 * z)) /
           std::sin(M_PI * alpha);
}

inline cplx velocity_derivative(cplx z, double alpha) {
    return 4.0 * M_PI * M_PI * M_PI * alpha * std::cos(M_PI * alpha * (1.0 + 2.0 * z)) /
           std::sin(M_PI * alpha);
}

/// J_alpha(f, Hf) = sin(2 pi^2 alpha f) sinh(2 pi^2 alpha Hf).
inline double flux(double f, double hf, double alpha) {
    if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must be in (0,1)");
    const double c = 2.0 * M_PI * M_PI * alpha;
    return std::sin(c * f) * std::sinh(c * hf);
}

// ---------------------------------------------------------------------------
// initial profiles
// ---------------------------------------------------------------------------

/// Initial density datum: an explicit moment list, the maximally packed step
/// of total mass one on [-pi alpha, pi alpha], the single-mode profile
/// (1 + cos(p x)) / 2 pi, or grid samples of f0 on [0, 2 pi).
class InitialProfile {
public:
    struct Moments {
        std::vector<cplx> m;  // m_1, m_2, ...
    };
    struct Step {
        double alpha;
    };
    struct SingleMode {
        int p;
    };
    struct Grid {
        std::vector<double> f;  // power-of-two length
    };

    InitialProfile(Moments m) : data_(std::move(m)) {}
    InitialProfile(Step s) : data_(s) {
        if (s.alpha <= 0.0 || s.alpha >= 1.0)
            throw std::invalid_argument("step profile: alpha in (0,1)");
    }
    InitialProfile(SingleMode s) : data_(s) {
        if (s.p < 1) throw std::invalid_argument("single mode: p >= 1");
    }
    InitialProfile(Grid g) : data_(std::move(g)) {}

    /// Fourier coefficients m_1..m_n of the density (m_0 = 1 by mass).
    std::vector<cplx> moments(int n_max) const {
        std::vector<cplx> out(n_max, cplx(0.0));
        if (const auto* m = std::get_if<Moments>(&data_)) {
            for (int n = 1; n <= n_max; ++n)
                out[n - 1] = n <= static_cast<int>(m->m.size()) ? m->m[n - 1] : cplx(0.0);
        } else if (const auto* s = std::get_if<Step>(&data_)) {
            for (int n = 1; n <= n_max; ++n)
                out[n - 1] = std::sin(n * M_PI * s->alpha) / (n * M_PI * s->alpha);
        } else if (const auto* s = std::get_if<SingleMode>(&data_)) {
            if (s->p <= n_max) out[s->p - 1] = 0.5;
        } else {
            const auto& g = std::get<Grid>(data_);
            const auto c = fourier_coefficients(g.f, n_max);
            // f = (1/2pi) sum m_n e^{inx} with the grid normalized to mass one
            const double mass = 2.0 * M_PI * c[0].real();
            for (int n = 1; n <= n_max && n < static_cast<int>(c.size()); ++n)
                out[n - 1] = 2.0 * M_PI * c[n] / mass;
        }
        return out;
    }

    const std::variant<Moments, Step, SingleMode, Grid>& data() const { return data_; }

private:
    std::variant<Moments, Step, SingleMode, Grid> data_;
};

inline std::vector<cplx> limit_moments(double t, const InitialProfile& profile, double alpha,
                                       int n_max) {
    const auto m0 = profile.moments(n_max);
    return propagate_moments(m0, t, alpha);
}

inline cplx limit_moment(int n, double t, const InitialProfile& profile, double alpha,
                         int n_max_hint = 0) {
    const int n_max = std::max(n, n_max_hint);
    if (n < 1) throw std::invalid_argument("limit_moment: n >= 1");
    return limit_moments(t, profile, alpha, n_max)[n - 1];
}

// ---------------------------------------------------------------------------
// characteristic flow
// ---------------------------------------------------------------------------

/// The flow Phi_t(w) = w e^{t A0(w)} with A0 = V_alpha(g0). Closed forms for
/// A0 and its derivative may be supplied; otherwise they are derived from g0.
struct CharFlow {
    double alpha = 0.5;
    std::function<cplx(cplx)> g0;
    std::function<cplx(cplx)> dg0;
    std::function<cplx(cplx)> A0;
    std::function<cplx(cplx)> dA0;

    static CharFlow from_g0(double alpha, std::function<cplx(cplx)> g0,
                            std::function<cplx(cplx)> dg0) {
        CharFlow flow;
        flow.alpha = alpha;
        flow.g0 = g0;
        flow.dg0 = dg0;
        flow.A0 = [alpha, g0](cplx w) { return velocity(g0(w), alpha); };
        flow.dA0 = [alpha, g0, dg0](cplx w) {
            return velocity_derivative(g0(w), alpha) * dg0(w);
        };
        return flow;
    }

    cplx phi(double t, cplx w) const { return w * std::exp(t * A0(w)); }
    cplx dphi(double t, cplx w) const {
        return (1.0 + t * w * dA0(w)) * std::exp(t * A0(w));
    }
};

/// Flow for a polynomial g0 given by the moment list.
inline CharFlow make_flow(const InitialProfile& profile, double alpha, int n_max = 64) {
    auto m = profile.moments(n_max);
    auto g0 = [m](cplx z) {
        cplx acc = 0.0;
        for (std::size_t n = m.size(); n-- > 0;) acc = (acc + m[n]) * z;
        return acc;
    };
    auto dg0 = [m](cplx z) {
        cplx acc = 0.0;
        for (std::size_t n = m.size(); n-- > 1;)
            acc = (acc + static_cast<double>(n + 1) * m[n]) * z;
        return acc + (m.empty() ? cplx(0.0) : m[0]);
    };
    return CharFlow::from_g0(alpha, g0, dg0);
}

struct FlowInverseOptions {
    double tol = 1e-13;
    int max_newton = 80;
    int max_continuation = 256;
    int winding_nodes = 256;
};

struct FlowInverse {
    cplx w;
    bool converged = false;
    bool certified = false;  // argument-principle winding count passed
    int iterations = 0;
};

namespace detail {

inline bool newton_solve(const CharFlow& flow, double t, cplx z, cplx& w, int max_iter,
                         double tol, int& used) {
    for (int it = 0; it < max_iter; ++it) {
        const cplx fw = flow.phi(t, w) - z;
        if (std::abs(fw) <= tol) {
            used += it;
            return std::abs(w) <= 1.0 + 1e-9;
        }
        const cplx d = flow.dphi(t, w);
        if (!(std::abs(d) > 0.0) || !std::isfinite(std::abs(d))) break;
        const cplx step = fw / d;
        w -= step;
        if (!std::isfinite(std::abs(w)) || std::abs(w) > 2.0) break;
    }
    used += max_iter;
    return false;
}

/// Winding number of Phi_t(.) - z around the circle |w| = r (trapezoid).
inline int winding_count(const CharFlow& flow, double t, cplx z, double r, int nodes) {
    cplx acc = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const double th = 2.0 * M_PI * k / nodes;
        const cplx w = r * cplx(std::cos(th), std::sin(th));
        acc += flow.dphi(t, w) * w / (flow.phi(t, w) - z);
    }
    const double value = (acc / static_cast<double>(nodes)).real();
    return static_cast<int>(std::lround(value));
}

}  // namespace detail

/// The unique w in the closed unit disk with Phi_t(w) = z, |z| <= 1.
/// Newton from the dilated seed, then time-continuation, then an
/// argument-principle certification before reporting failure.
inline FlowInverse flow_invert(double t, cplx z, const CharFlow& flow,
                               const FlowInverseOptions& opts = {}) {
    if (std::abs(z) > 1.0 + 1e-12) throw std::invalid_argument("flow_invert: |z| <= 1");
    if (t < 0.0) throw std::invalid_argument("flow_invert: t >= 0");
    FlowInverse out;
    if (t == 0.0 || std::abs(z) == 0.0) {
        out.w = z;
        out.converged = true;
        out.certified = true;
        return out;
    }
    const double tol = opts.tol * std::max(1.0, std::abs(z));

    // dilation seed; pull slightly inside when A0 misbehaves on the rim
    cplx seed = z * std::exp(-t * flow.A0(z * 0.999999));
    if (!std::isfinite(std::abs(seed)) || std::abs(seed) > 1.0) seed = 0.9 * z;
    cplx w = seed;
    int used = 0;
    if (detail::newton_solve(flow, t, z, w, opts.max_newton, tol, used)) {
        out.w = w;
        out.converged = true;
        out.iterations = used;
        return out;
    }

    // time continuation from w(0, z) = z
    for (int stages = 8; stages <= opts.max_continuation; stages *= 2) {
        w = z;
        bool ok = true;
        for (int s = 1; s <= stages && ok; ++s)
            ok = detail::newton_solve(flow, t * s / stages, z, w, opts.max_newton, tol, used);
        if (ok) {
            out.w = w;
            out.converged = true;
            out.iterations = used;
            return out;
        }
    }

    // certify whether the root exists strictly inside |w| = |z|
    const double r = std::min(std::abs(z), 1.0 - 1e-9);
    const int wind = detail::winding_count(flow, t, z, r, opts.winding_nodes);
    out.certified = (wind == 1);
    out.iterations = used;
    if (!out.certified)
        throw numerical_failure("flow_invert: no interior root certified (winding != 1)");
    throw numerical_failure("flow_invert: Newton stalled on a certified root");
}

// ---------------------------------------------------------------------------
// density reconstruction
// ---------------------------------------------------------------------------

struct DensityGrid {
    double t = 0.0;
    double alpha = 0.5;
    std::vector<double> x;
    std::vector<double> f;
    std::vector<std::uint8_t> saturated_low;
    std::vector<std::uint8_t> saturated_high;

    double mass() const {  // trapezoid on the periodic grid
        double acc = 0.0;
        for (double v : f) acc += v;
        return acc * 2.0 * M_PI / static_cast<double>(f.size());
    }
};

struct ReconstructOptions {
    double saturation_tol = 1e-6;
    int radial_levels = 10;  // r = 1 - 2^{-j}, j = 3..radial_levels
    FlowInverseOptions invert;
};

/// Boundary inverse w(t, e^{ix}): a short radial continuation r -> 1 seeds a
/// final Newton solve on the rim; if the rim solve stalls (near a front,
/// where the flow derivative degenerates), the deep radial chain is
/// extrapolated linearly instead.
inline cplx flow_invert_boundary(double t, double x, const CharFlow& flow,
                                 const ReconstructOptions& opts = {}) {
    const cplx z(std::cos(x), std::sin(x));
    cplx w = z;
    int used = 0;
    const double tol = opts.invert.tol;
    for (int lev = 2; lev <= 5; ++lev) {
        const double r = 1.0 - std::pow(2.0, -lev);
        cplx candidate = (lev == 2) ? r * z * std::exp(-t * flow.A0(r * z)) : w;
        if (!std::isfinite(std::abs(candidate)) || std::abs(candidate) >= 1.0)
            candidate = 0.5 * r * z;
        if (detail::newton_solve(flow, t, r * z, candidate, opts.invert.max_newton, tol, used))
            w = candidate;
        else {
            const auto res = flow_invert(t, r * z, flow, opts.invert);
            w = res.w;
        }
    }
    cplx rim = w;
    if (detail::newton_solve(flow, t, z, rim, opts.invert.max_newton, tol, used)) return rim;

    // deep radial chain with linear extrapolation across the last halving
    cplx prev = w, cur = w;
    for (int lev = 6; lev <= opts.radial_levels; ++lev) {
        const double r = 1.0 - std::pow(2.0, -lev);
        cplx candidate = cur;
        if (!detail::newton_solve(flow, t, r * z, candidate, opts.invert.max_newton, tol,
                                  used)) {
            const auto res = flow_invert(t, r * z, flow, opts.invert);
            candidate = res.w;
        }
        prev = cur;
        cur = candidate;
    }
    cplx out = 2.0 * cur - prev;
    if (std::abs(out) > 1.0) out /= std::abs(out);
    return out;
}

/// f(t, x) = (1 + 2 Re g0(w(t, e^{ix}))) / 2 pi on a uniform M-grid.
inline DensityGrid density_reconstruct(double t, const CharFlow& flow, int M,
                                       const ReconstructOptions& opts = {}) {
    if (t <= 0.0) throw std::invalid_argument("density_reconstruct: t > 0");
    DensityGrid grid;
    grid.t = t;
    grid.alpha = flow.alpha;
    grid.x.resize(M);
    grid.f.resize(M);
    grid.saturated_low.assign(M, 0);
    grid.saturated_high.assign(M, 0);
    const double fmax = 1.0 / (2.0 * M_PI * flow.alpha);

    for (int j = 0; j < M; ++j) {
        const double x = 2.0 * M_PI * j / M;
        grid.x[j] = x;
        const cplx w = flow_invert_boundary(t, x, flow, opts);
        const double f = (1.0 + 2.0 * flow.g0(w).real()) / (2.0 * M_PI);
        grid.f[j] = f;
        grid.saturated_low[j] = (f <= opts.saturation_tol);
        grid.saturated_high[j] = (f >= fmax - opts.saturation_tol);
    }
    return grid;
}

/// Strong-form residual max_x |df/dt + d_x J_alpha(f, Hf) / (alpha sin(pi alpha))|
/// with a centered difference in t and spectral derivatives in x. Refuses
/// saturated profiles (the strong form does not hold across fronts).
inline double pde_residual(double t, const CharFlow& flow, int M, double dt,
                           const ReconstructOptions& opts = {}) {
    if (dt <= 0.0 || t - dt <= 0.0) throw std::invalid_argument("pde_residual: need t > dt > 0");
    const auto minus = density_reconstruct(t - dt, flow, M, opts);
    const auto center = density_reconstruct(t, flow, M, opts);
    const auto plus = density_reconstruct(t + dt, flow, M, opts);
    const double fmax = 1.0 / (2.0 * M_PI * flow.alpha);
    for (int j = 0; j < M; ++j)
        if (center.f[j] <= 1e-9 || center.f[j] >= fmax - 1e-9)
            throw numerical_failure("pde_residual: profile saturates; strong form undefined");
    const auto hf = hilbert_transform(center.f);
    std::vector<double> J(M);
    for (int j = 0; j < M; ++j) J[j] = flux(center.f[j], hf[j], flow.alpha);
    const auto dJ = spectral_derivative(J);
    const double scale = 1.0 / (flow.alpha * std::sin(M_PI * flow.alpha));
    double worst = 0.0;
    for (int j = 0; j < M; ++j) {
        const double dfdt = (plus.f[j] - minus.f[j]) / (2.0 * dt);
        worst = std::max(worst, std::abs(dfdt + scale * dJ[j]));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// series coefficients through contour quadrature
// ---------------------------------------------------------------------------

/// Taylor coefficients a_n(t) of w(t, .) at 0 for n = 1..n_max, through
///   a_n = (1/n) [w^{n-1}] e^{-n t A0(w)},
/// evaluated as a contour integral on |w| = radius (trapezoid, at least
/// 8 n_max nodes). The contour must stay inside the domain of analyticity
/// of A0.
inline std::vector<cplx> coefficient_a_n(double t, const CharFlow& flow, int n_max,
                                         double radius = 0.5, int nodes = 0) {
    if (t < 0.0) throw std::invalid_argument("coefficient_a_n: t >= 0");
    if (radius <= 0.0) throw std::invalid_argument("coefficient_a_n: radius > 0");
    if (nodes <= 0) nodes = std::max(256, 8 * n_max);
    std::vector<cplx> A0s(nodes);
    for (int k = 0; k < nodes; ++k) {
        const double th = 2.0 * M_PI * k / nodes;
        const cplx w = radius * cplx(std::cos(th), std::sin(th));
        const cplx a0 = flow.A0(w);
        if (!std::isfinite(std::abs(a0)))
            throw std::invalid_argument("coefficient_a_n: contour hits a singularity of A0");
        A0s[k] = a0;
    }
    std::vector<cplx> out(n_max);
    for (int n = 1; n <= n_max; ++n) {
        cplx acc = 0.0;
        for (int k = 0; k < nodes; ++k) {
            const double th = 2.0 * M_PI * k / nodes;
            const cplx rot = std::exp(cplx(0.0, -(n - 1) * th));
            acc += std::exp(-static_cast<double>(n) * t * A0s[k]) * rot;
        }
        out[n - 1] = acc / (static_cast<double>(nodes) * n * std::pow(radius, n - 1));
    }
    return out;
}

/// Taylor coefficients of g(t, z) = g0(w(t, z)) at 0 for n = 1..n_max, by a
/// contour of flow inversions; the independent route to the limiting moments.
inline std::vector<cplx> moments_from_flow(double t, const CharFlow& flow, int n_max,
                                           double radius = 0.75, int nodes = 512,
                                           const FlowInverseOptions& opts = {}) {
    std::vector<cplx> g(nodes);
    for (int k = 0; k < nodes; ++k) {
        const double th = 2.0 * M_PI * k / nodes;
        const cplx z = radius * cplx(std::cos(th), std::sin(th));
        g[k] = flow.g0(flow_invert(t, z, flow, opts).w);
    }
    std::vector<cplx> out(n_max);
    for (int n = 1; n <= n_max; ++n) {
        cplx acc = 0.0;
        for (int k = 0; k < nodes; ++k) {
            const double th = 2.0 * M_PI * k / nodes;
            acc += g[k] * std::exp(cplx(0.0, -n * th));
        }
        out[n - 1] = acc / (static_cast<double>(nodes) * std::pow(radius, n));
    }
    return out;
}

}  // namespace messep

#pragma once

#include <cmath>
#include <numbers>

namespace qrl {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// How the flat continuation of the deep well follows the drive:
/// anchored to the instantaneous deep minimum, or frozen at the static one.
enum class FlattenMode { instantaneous, static_anchor };

/// Dimensionless device constants of the flux-biased phase qubit.
/// All energies in this codebase are angular frequencies in 1/ns
/// (the potential is stored pre-divided by hbar), so the Schroedinger
/// equation reads i dpsi/dt = -d_cap d^2psi/dx^2 + v(x,t) psi with t in ns.
struct QubitParams {
    double ell = 3.71;      ///< loop inductance parameter, 2 e I_c L / hbar
    double d_cap = 0.6933;  ///< inverse-capacitance coefficient, 1/ns
    double ej_ns = 5310.0;  ///< Josephson energy over hbar, 1/ns
    double a0 = 0.81;       ///< dc flux bias, fraction of 2*pi

    /// Build from SI junction values (amperes, henries, farads).
    static QubitParams from_si(double i_c, double l_loop, double c_junction,
                               double a0 = 0.81);

    void validate() const; // throws std::invalid_argument
};

/// Stationary points of the tilted washboard around the metastable well.
struct PotentialGeometry {
    double x1; ///< shallow-well minimum (phase)
    double xb; ///< barrier top (phase)
    double x2; ///< deep-well minimum (phase)
    double v1, vb, v2; ///< potential at those points, 1/ns

    double barrier_height() const { return vb - v1; }
};

/// Total external flux phi = 2*pi*(a0 + A*f).
inline double flux(double a0, double amplitude, double envelope_value) {
    return two_pi * (a0 + amplitude * envelope_value);
}

/// Washboard potential v(x) = ej*((x-phi)^2/(2*ell) - cos x), in 1/ns.
inline double potential_raw(double x, double phi, const QubitParams& p) {
    const double u = x - phi;
    return p.ej_ns * (u * u / (2.0 * p.ell) - std::cos(x));
}

/// dv/dx
inline double potential_derivative(double x, double phi, const QubitParams& p) {
    return p.ej_ns * ((x - phi) / p.ell + std::sin(x));
}

/// d2v/dx2
inline double potential_curvature(double x, double phi, const QubitParams& p) {
    return p.ej_ns * (1.0 / p.ell + std::cos(x));
}

/// Washboard with the deep well continued flat beyond x_flat.
inline double potential_flattened(double x, double phi, const QubitParams& p,
                                  double x_flat) {
    return potential_raw(x < x_flat ? x : x_flat, phi, p);
}

/// Locate shallow minimum, barrier top and deep minimum for the given flux.
/// Scans v'(x) for sign changes over [scan_lo, phi + 2*pi] and refines each
/// root by bisection. Throws NoBarrierError when the well is washed out.
PotentialGeometry find_geometry(double phi, const QubitParams& p,
                                double scan_lo = -3.0);

/// Refine the deep-minimum position for a nearby flux, warm-started from a
/// previous solution (Newton on v'); used to track x_flat during a pulse.
double track_deep_minimum(double phi, const QubitParams& p, double x_start);

} // namespace qrl

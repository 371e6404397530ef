#include "qrl/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qrl/errors.hpp"

namespace qrl {

QubitParams QubitParams::from_si(double i_c, double l_loop, double c_junction,
                                 double a0) {
    // Rounded constants: the stock device values (ell = 3.71, d_cap = 0.6933,
    // ej = 5310/ns for I_c = 1.7 uA, L = 0.72 nH, C = 700 fF) follow from
    // these, not from the full-precision CODATA numbers.
    constexpr double e_charge = 1.6e-19;  // C
    constexpr double hbar = 1.055e-34;    // J s
    QubitParams p;
    p.ell = 2.0 * e_charge * i_c * l_loop / hbar;
    p.d_cap = 2.0 * e_charge * e_charge / (hbar * c_junction) * 1e-9;
    p.ej_ns = i_c / (2.0 * e_charge) * 1e-9;
    p.a0 = a0;
    p.validate();
    return p;
}

void QubitParams::validate() const {
    if (!(ell > 0.0)) throw std::invalid_argument("ell must be > 0");
    if (!(d_cap > 0.0)) throw std::invalid_argument("d_cap must be > 0");
    if (!(ej_ns > 0.0)) throw std::invalid_argument("ej_ns must be > 0");
}

namespace {

double bisect_derivative_root(double lo, double hi, double phi,
                              const QubitParams& p) {
    double flo = potential_derivative(lo, phi, p);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-10) return mid;
        const double fmid = potential_derivative(mid, phi, p);
        if (fmid == 0.0) return mid;
        if ((flo < 0.0) != (fmid < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

PotentialGeometry find_geometry(double phi, const QubitParams& p,
                                double scan_lo) {
    constexpr double scan_step = 0.05;
    const double scan_hi = phi + two_pi;

    std::vector<double> minima;
    std::vector<double> maxima;
    double x_prev = scan_lo;
    double f_prev = potential_derivative(x_prev, phi, p);
    for (double x = scan_lo + scan_step; x_prev < scan_hi; x += scan_step) {
        const double f = potential_derivative(x, phi, p);
        if (f_prev == 0.0 || (f_prev < 0.0) != (f < 0.0)) {
            const double root = bisect_derivative_root(x_prev, x, phi, p);
            if (potential_curvature(root, phi, p) > 0.0) {
                minima.push_back(root);
            } else {
                maxima.push_back(root);
            }
        }
        x_prev = x;
        f_prev = f;
    }

    // The metastable (shallow) well is the highest-lying minimum; the escape
    // path runs over the first maximum to its right into the next minimum.
    if (minima.empty() || maxima.empty()) {
        throw NoBarrierError("no metastable well at phi/2pi = " +
                             std::to_string(phi / two_pi));
    }
    const double x1 = *std::max_element(
        minima.begin(), minima.end(), [&](double a, double b) {
            return potential_raw(a, phi, p) < potential_raw(b, phi, p);
        });
    double xb = 0.0;
    bool found_b = false;
    for (double m : maxima) {
        if (m > x1 && (!found_b || m < xb)) {
            xb = m;
            found_b = true;
        }
    }
    double x2 = 0.0;
    bool found_2 = false;
    for (double m : minima) {
        if (found_b && m > xb && (!found_2 || m < x2)) {
            x2 = m;
            found_2 = true;
        }
    }
    if (!found_b || !found_2) {
        throw NoBarrierError("well washed out at phi/2pi = " +
                             std::to_string(phi / two_pi));
    }

    PotentialGeometry g;
    g.x1 = x1;
    g.xb = xb;
    g.x2 = x2;
    g.v1 = potential_raw(x1, phi, p);
    g.vb = potential_raw(xb, phi, p);
    g.v2 = potential_raw(x2, phi, p);
    return g;
}

double track_deep_minimum(double phi, const QubitParams& p, double x_start) {
    double x = x_start;
    for (int it = 0; it < 8; ++it) {
        const double f = potential_derivative(x, phi, p);
        const double fp = potential_curvature(x, phi, p);
        if (!(fp > 0.0)) break; // left the convex basin; fall back below
        const double step = f / fp;
        x -= step;
        if (std::abs(step) < 1e-12) return x;
    }
    if (std::abs(potential_derivative(x, phi, p)) < 1e-6 * p.ej_ns) return x;
    return find_geometry(phi, p).x2;
}

} // namespace qrl

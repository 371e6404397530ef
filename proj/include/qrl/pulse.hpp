#pragma once

#include <string>

namespace qrl {

enum class PulseShape { sine, sine2, sine4, trapezoid, sine_trapezoid };

/// Readout flux pulse: shape, amplitude A (fraction of 2*pi), duration t_p
/// in ns (full width at zero level). flat_fraction applies to sine_trapezoid
/// only and is the fraction of t_p occupied by the flat top.
struct PulseSpec {
    PulseShape shape = PulseShape::sine;
    double amplitude = 0.033;
    double t_p_ns = 12.0;
    double flat_fraction = 0.5;

    void validate() const; // throws std::invalid_argument
};

/// Dimensionless pulse envelope f(t) in [0, 1]; zero outside [0, t_p].
double envelope(const PulseSpec& spec, double t_ns);

const char* shape_name(PulseShape s);
PulseShape parse_shape(const std::string& name); // throws std::invalid_argument

} // namespace qrl

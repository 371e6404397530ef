#include "qrl/pulse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qrl {

void PulseSpec::validate() const {
    if (!(t_p_ns > 0.0)) throw std::invalid_argument("t_p must be > 0");
    if (!(amplitude >= 0.0)) throw std::invalid_argument("A must be >= 0");
    if (shape == PulseShape::sine_trapezoid &&
        !(flat_fraction > 0.0 && flat_fraction < 1.0)) {
        throw std::invalid_argument("flat_fraction must be in (0, 1)");
    }
}

double envelope(const PulseSpec& spec, double t_ns) {
    const double tp = spec.t_p_ns;
    if (t_ns <= 0.0 || t_ns >= tp) return 0.0;
    const double u = t_ns / tp;
    const double pi = std::numbers::pi;
    switch (spec.shape) {
    case PulseShape::sine:
        return std::sin(pi * u);
    case PulseShape::sine2: {
        const double s = std::sin(pi * u);
        return s * s;
    }
    case PulseShape::sine4: {
        const double s = std::sin(pi * u);
        return s * s * s * s;
    }
    case PulseShape::trapezoid:
        if (u < 0.25) return 4.0 * u;
        if (u > 0.75) return 4.0 * (1.0 - u);
        return 1.0;
    case PulseShape::sine_trapezoid: {
        // Sinusoidal walls of width r*t_p each; flat top in between. With the
        // default flat_fraction = 1/2 the walls coincide with sin(2*pi*t/t_p).
        const double r = 0.5 * (1.0 - spec.flat_fraction);
        if (u < r) return std::sin(pi * u / (2.0 * r));
        if (u > 1.0 - r) return std::sin(pi * (1.0 - u) / (2.0 * r));
        return 1.0;
    }
    }
    return 0.0;
}

const char* shape_name(PulseShape s) {
    switch (s) {
    case PulseShape::sine: return "sine";
    case PulseShape::sine2: return "sine2";
    case PulseShape::sine4: return "sine4";
    case PulseShape::trapezoid: return "trapezoid";
    case PulseShape::sine_trapezoid: return "sine_trapezoid";
    }
    return "?";
}

PulseShape parse_shape(const std::string& name) {
    if (name == "sine") return PulseShape::sine;
    if (name == "sine2") return PulseShape::sine2;
    if (name == "sine4") return PulseShape::sine4;
    if (name == "trapezoid") return PulseShape::trapezoid;
    if (name == "sine_trapezoid") return PulseShape::sine_trapezoid;
    throw std::invalid_argument("unknown pulse shape: " + name);
}

} // namespace qrl

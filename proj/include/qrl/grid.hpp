#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace qrl {

/// Uniform spatial grid on [c, d] including both endpoints.
struct Grid {
    double c = -3.0;
    double d = 797.0;
    double dx = 0.01;
    int n = 80001;

    static Grid make(double c, double d, double dx) {
        if (!(dx > 0.0) || !(c < d)) {
            throw std::invalid_argument("grid requires c < d and dx > 0");
        }
        Grid g;
        g.c = c;
        g.d = d;
        g.dx = dx;
        g.n = static_cast<int>(std::lround((d - c) / dx)) + 1;
        return g;
    }

    double x(int i) const { return c + i * dx; }

    /// Last node index with x(i) <= x_value (clamped to the grid).
    int index_below(double x_value) const {
        const int i = static_cast<int>(std::floor((x_value - c) / dx + 1e-12));
        return i < 0 ? 0 : (i >= n ? n - 1 : i);
    }

    bool operator==(const Grid&) const = default;
};

/// Complex amplitudes on a Grid; boundary nodes are held at zero.
struct WaveFunction {
    Grid grid;
    std::vector<std::complex<double>> values;

    explicit WaveFunction(const Grid& g)
        : grid(g), values(static_cast<size_t>(g.n)) {}

    double norm_sq() const {
        double s = 0.0;
        for (const auto& v : values) s += std::norm(v);
        return s * grid.dx;
    }

    void normalize() {
        const double n2 = norm_sq();
        if (!(n2 > 0.0)) throw std::invalid_argument("cannot normalize zero state");
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& v : values) v *= inv;
    }

    std::complex<double> inner(const WaveFunction& other) const {
        std::complex<double> s = 0.0;
        for (size_t i = 0; i < values.size(); ++i) {
            s += std::conj(values[i]) * other.values[i];
        }
        return s * grid.dx;
    }
};

} // namespace qrl

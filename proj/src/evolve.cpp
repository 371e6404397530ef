#include "qrl/evolve.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "qrl/csv.hpp"
#include "qrl/errors.hpp"

namespace qrl {

void NumericsConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (observer_stride < 1) throw std::invalid_argument("observer_stride must be >= 1");
    if (!(settle_ns >= 0.0)) throw std::invalid_argument("settle_ns must be >= 0");
}

CrankNicolson::CrankNicolson(const Grid& grid, const QubitParams& params,
                             const PulseSpec& spec, FlattenMode mode)
    : grid_(grid), params_(params), spec_(spec), mode_(mode) {
    const double phi0 = flux(params.a0, spec.amplitude, 0.0);
    x_flat_ = find_geometry(phi0, params, grid.c).x2;

    const int m = grid.n - 2;
    ej_cos_.resize(m);
    for (int i = 0; i < m; ++i) {
        ej_cos_[i] = params.ej_ns * std::cos(grid.x(i + 1));
    }
    rhs_.resize(m);
    cfac_.resize(m);
}

void CrankNicolson::step(WaveFunction& psi, double t, double dt) {
    const int m = grid_.n - 2;
    const double t_mid = t + 0.5 * dt;
    const double phi = flux(params_.a0, spec_.amplitude, envelope(spec_, t_mid));
    if (mode_ == FlattenMode::instantaneous) {
        x_flat_ = track_deep_minimum(phi, params_, x_flat_);
    }
    const double v_plateau = potential_raw(x_flat_, phi, params_);
    // interior index of the last node still on the raw potential
    int i_flat = grid_.index_below(x_flat_) - 1;
    if (i_flat > m - 1) i_flat = m - 1;

    const double beta = params_.d_cap / (grid_.dx * grid_.dx);
    const double half = 0.5 * dt;
    const double g = half * beta; // off-diagonal magnitude of (dt/2) H
    const double quad_scale = params_.ej_ns / (2.0 * params_.ell);

    auto* p = psi.values.data();
    auto* rhs = rhs_.data();

    // rhs = (I - i (dt/2) H) psi
    for (int i = 0; i < m; ++i) {
        const double x = grid_.x(i + 1);
        const double u = x - phi;
        const double v = i <= i_flat ? quad_scale * u * u - ej_cos_[i] : v_plateau;
        const double kappa = half * (2.0 * beta + v);
        const double pr = p[i + 1].real();
        const double pi = p[i + 1].imag();
        const double nr = p[i].real() + p[i + 2].real();
        const double ni = p[i].imag() + p[i + 2].imag();
        // (1 - i kappa) psi_i + i g (psi_{i-1} + psi_{i+1})
        rhs[i] = {pr + kappa * pi - g * ni, pi - kappa * pr + g * nr};
    }

    // Thomas sweep for (I + i (dt/2) H) psi' = rhs.
    // Diagonal a_i = 1 + i kappa_i, constant off-diagonal b = -i g; the
    // system is strictly diagonally dominant (|a_i| >= 1 > 2g for any stable
    // dt), so no pivoting is needed.
    auto* cf = cfac_.data();
    double prev_cr = 0.0, prev_ci = 0.0; // c'_{i-1}
    double prev_rr = 0.0, prev_ri = 0.0; // r'_{i-1}
    for (int i = 0; i < m; ++i) {
        const double x = grid_.x(i + 1);
        const double u = x - phi;
        const double v = i <= i_flat ? quad_scale * u * u - ej_cos_[i] : v_plateau;
        const double kappa = half * (2.0 * beta + v);
        // den = a_i - b * c'_{i-1},  b = -i g
        const double den_r = 1.0 - g * prev_ci;
        const double den_i = kappa + g * prev_cr;
        const double s = 1.0 / (den_r * den_r + den_i * den_i);
        // c'_i = b / den
        prev_cr = (-g * den_i) * s;
        prev_ci = (-g * den_r) * s;
        cf[i] = {prev_cr, prev_ci};
        // r'_i = (rhs_i - b * r'_{i-1}) / den
        const double num_r = rhs[i].real() - g * prev_ri;
        const double num_i = rhs[i].imag() + g * prev_rr;
        prev_rr = (num_r * den_r + num_i * den_i) * s;
        prev_ri = (num_i * den_r - num_r * den_i) * s;
        rhs[i] = {prev_rr, prev_ri};
    }
    // back substitution into psi (boundary nodes stay zero)
    p[m + 1] = 0.0;
    p[0] = 0.0;
    double next_r = 0.0, next_i = 0.0;
    for (int i = m - 1; i >= 0; --i) {
        const double cr = cf[i].real(), ci = cf[i].imag();
        const double xr = rhs[i].real() - (cr * next_r - ci * next_i);
        const double xi = rhs[i].imag() - (cr * next_i + ci * next_r);
        p[i + 1] = {xr, xi};
        next_r = xr;
        next_i = xi;
    }
    if (!std::isfinite(next_r) || !std::isfinite(next_i)) {
        throw SolverBreakdownError("non-finite state after Crank-Nicolson step");
    }
}

WaveFunction cn_step(const WaveFunction& psi, double t, double dt,
                     const PulseSpec& spec, const QubitParams& params,
                     FlattenMode mode) {
    CrankNicolson prop(psi.grid, params, spec, mode);
    WaveFunction out = psi;
    prop.step(out, t, dt);
    return out;
}

WaveFunction propagate(const WaveFunction& psi0, const PulseSpec& spec,
                       const QubitParams& params, const NumericsConfig& cfg,
                       const std::vector<Observer>& observers) {
    cfg.validate();
    CrankNicolson prop(psi0.grid, params, spec, cfg.flatten_mode);
    WaveFunction psi = psi0;

    const double t_p = spec.t_p_ns;
    const long n_full = static_cast<long>(std::floor(t_p / cfg.dt + 1e-9));
    const double rem = t_p - static_cast<double>(n_full) * cfg.dt;
    const bool has_rem = rem > 1e-12 * std::max(1.0, t_p);

    auto notify = [&](double t) {
        for (const auto& obs : observers) obs(t, psi);
    };
    for (long k = 0; k < n_full; ++k) {
        if (k % cfg.observer_stride == 0) notify(static_cast<double>(k) * cfg.dt);
        prop.step(psi, static_cast<double>(k) * cfg.dt, cfg.dt);
    }
    if (has_rem) prop.step(psi, static_cast<double>(n_full) * cfg.dt, rem);
    notify(t_p);
    return psi;
}

double survival_probability(const WaveFunction& psi, double x_cut) {
    const Grid& g = psi.grid;
    const int last = g.index_below(x_cut);
    double s = 0.0;
    for (int i = 0; i <= last; ++i) s += std::norm(psi.values[i]);
    return s * g.dx;
}

std::string trace_csv(const std::vector<TracePoint>& trace) {
    std::string out = "t_ns,norm,survival\n";
    for (const auto& p : trace) {
        out += format_double(p.t_ns);
        out += ',';
        out += format_double(p.norm);
        out += ',';
        out += format_double(p.survival);
        out += '\n';
    }
    return out;
}

void write_trace_csv(const std::string& path, const std::vector<TracePoint>& trace) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << trace_csv(trace);
}

} // namespace qrl

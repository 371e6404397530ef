#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qrl/grid.hpp"
#include "qrl/model.hpp"
#include "qrl/pulse.hpp"

namespace qrl {

/// Which barrier position the survival integral is cut at.
enum class SurvivalCut { static_barrier, instantaneous };

struct NumericsConfig {
    double dt = 1e-4;             ///< time step, ns
    FlattenMode flatten_mode = FlattenMode::instantaneous;
    int observer_stride = 100;    ///< steps between observer calls
    double settle_ns = 0.0;       ///< extra zero-drive hold before readout
    SurvivalCut survival_cut = SurvivalCut::static_barrier;

    void validate() const; // throws std::invalid_argument
};

/// Crank-Nicolson propagator for one drive configuration. Caches the
/// time-independent part of the potential and tracks the flattening anchor
/// across steps.
class CrankNicolson {
public:
    CrankNicolson(const Grid& grid, const QubitParams& params,
                  const PulseSpec& spec, FlattenMode mode);

    /// Advance psi by dt with H evaluated at t + dt/2. Unitary to rounding;
    /// throws SolverBreakdownError on non-finite input.
    void step(WaveFunction& psi, double t, double dt);

    double x_flat() const { return x_flat_; }

private:
    Grid grid_;
    QubitParams params_;
    PulseSpec spec_;
    FlattenMode mode_;
    double x_flat_;
    std::vector<double> ej_cos_;             // ej * cos(x_i), interior nodes
    std::vector<std::complex<double>> rhs_;  // scratch
    std::vector<std::complex<double>> cfac_; // scratch
};

/// One Crank-Nicolson step as a standalone operation (convenience wrapper;
/// building a CrankNicolson is preferable inside loops).
WaveFunction cn_step(const WaveFunction& psi, double t, double dt,
                     const PulseSpec& spec, const QubitParams& params,
                     FlattenMode mode = FlattenMode::instantaneous);

using Observer = std::function<void(double t_ns, const WaveFunction& psi)>;

/// Propagate from t = 0 to t = t_p (shortened final step if t_p/dt is not
/// integral). Observers fire every observer_stride steps and at t_p exactly.
WaveFunction propagate(const WaveFunction& psi0, const PulseSpec& spec,
                       const QubitParams& params, const NumericsConfig& cfg,
                       const std::vector<Observer>& observers = {});

/// Probability mass at x <= x_cut (Riemann sum matching the norm).
double survival_probability(const WaveFunction& psi, double x_cut);

struct TracePoint {
    double t_ns;
    double norm;
    double survival;
};

/// Observer-trace CSV: header + full-precision rows (t_ns, norm, survival).
std::string trace_csv(const std::vector<TracePoint>& trace);
void write_trace_csv(const std::string& path, const std::vector<TracePoint>& trace);

} // namespace qrl

#pragma once

#include <optional>
#include <vector>

#include "qrl/grid.hpp"
#include "qrl/model.hpp"

namespace qrl {

/// Symmetric tridiagonal matrix (diag size m, off size m-1).
struct Tridiag {
    std::vector<double> diag;
    std::vector<double> off;

    int size() const { return static_cast<int>(diag.size()); }
};

/// Discretized Hamiltonian -d_cap d2/dx2 + v on the interior nodes of
/// grid nodes [0, hi_node] (both excluded as Dirichlet walls). hi_node = -1
/// means the full grid. When x_flat is given the potential is continued flat
/// beyond it, otherwise the raw washboard is used.
Tridiag hamiltonian_tridiagonal(const Grid& grid, double phi,
                                const QubitParams& params,
                                std::optional<double> x_flat = {},
                                int hi_node = -1);

/// y = T x
std::vector<double> tridiag_apply(const Tridiag& t, const std::vector<double>& x);

/// Number of eigenvalues strictly below lambda (Sturm sequence count).
int sturm_count_below(const Tridiag& t, double lambda);

/// All eigenvalues below lambda_max, ascending, isolated by Sturm bisection.
std::vector<double> eigenvalues_below(const Tridiag& t, double lambda_max);

/// Eigenvector for an isolated eigenvalue via shifted inverse iteration
/// (partial-pivoting tridiagonal solves). Returned unit-normalized in the
/// plain Euclidean sense.
std::vector<double> inverse_iteration(const Tridiag& t, double eigenvalue);

/// A quasi-bound level of the shallow well.
struct EigenPair {
    double energy = 0.0;      ///< 1/ns, Rayleigh-refined
    WaveFunction state;       ///< embedded into the full grid, norm 1
    double well_weight = 0.0; ///< probability mass at x <= xb
    bool marginal = false;    ///< within counting tolerance of the barrier top

    EigenPair(double e, WaveFunction s, double ww, bool m)
        : energy(e), state(std::move(s)), well_weight(ww), marginal(m) {}
};

/// Quasi-bound well states at the given flux, energy-ascending, at most n_max.
///
/// Solves the time-independent problem on the truncated window
/// [c, xb + window_buffer] with Dirichlet walls. Spurious states localized in
/// the buffer strip beyond the barrier are discarded by a localization filter
/// (well_weight > 0.5). A well state is counted as present while its energy
/// stays below vb + 0.2 * (local level spacing); this keeps the barrier-top
/// resonance that remains well-localized when the drive pushes the last level
/// marginally over the classical top.
std::vector<EigenPair> quasi_bound_states(const QubitParams& params,
                                          const Grid& grid, double phi,
                                          int n_max,
                                          double window_buffer = 0.5);

/// Number of quasi-bound well levels (same counting rule as above).
int count_levels(const QubitParams& params, const Grid& grid, double phi,
                 double window_buffer = 0.5);

} // namespace qrl

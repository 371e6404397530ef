#include "qrl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qrl/errors.hpp"

namespace qrl {

Tridiag hamiltonian_tridiagonal(const Grid& grid, double phi,
                                const QubitParams& params,
                                std::optional<double> x_flat, int hi_node) {
    if (hi_node < 0) hi_node = grid.n - 1;
    const int m = hi_node - 1; // interior nodes 1..hi_node-1
    if (m < 3) throw DegenerateWindowError("window has fewer than 3 interior nodes");

    const double beta = params.d_cap / (grid.dx * grid.dx);
    Tridiag t;
    t.diag.resize(m);
    t.off.assign(m - 1, -beta);
    for (int i = 0; i < m; ++i) {
        const double x = grid.x(i + 1);
        const double v = x_flat ? potential_flattened(x, phi, params, *x_flat)
                                : potential_raw(x, phi, params);
        t.diag[i] = 2.0 * beta + v;
    }
    return t;
}

std::vector<double> tridiag_apply(const Tridiag& t, const std::vector<double>& x) {
    const int m = t.size();
    std::vector<double> y(m);
    for (int i = 0; i < m; ++i) {
        double s = t.diag[i] * x[i];
        if (i > 0) s += t.off[i - 1] * x[i - 1];
        if (i + 1 < m) s += t.off[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

int sturm_count_below(const Tridiag& t, double lambda) {
    const int m = t.size();
    // pivmin guards against exact-zero pivots in the recurrence
    double bmax = 0.0;
    for (double b : t.off) bmax = std::max(bmax, std::abs(b));
    const double pivmin =
        std::max(bmax * bmax, 1.0) * std::numeric_limits<double>::min() / 1e-10;

    int count = 0;
    double q = t.diag[0] - lambda;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (int i = 1; i < m; ++i) {
        q = t.diag[i] - lambda - t.off[i - 1] * t.off[i - 1] / q;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

namespace {

std::pair<double, double> gershgorin_bounds(const Tridiag& t) {
    const int m = t.size();
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (int i = 0; i < m; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.off[i - 1]);
        if (i + 1 < m) r += std::abs(t.off[i]);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    return {lo, hi};
}

// Solve (T - shift I) x = b by Gaussian elimination with partial pivoting.
// Row swaps introduce a second superdiagonal. Near-singular pivots are
// expected here (inverse iteration shifts sit on eigenvalues) and are
// replaced by a tiny value of matching sign.
std::vector<double> solve_shifted(const Tridiag& t, double shift,
                                  std::vector<double> b) {
    const int m = t.size();
    std::vector<double> dl(t.off), d(m), du(t.off), du2(m, 0.0);
    for (int i = 0; i < m; ++i) d[i] = t.diag[i] - shift;

    const double tiny = 1e-280;
    auto guard = [&](double piv) {
        if (std::abs(piv) < tiny) return piv < 0.0 ? -tiny : tiny;
        return piv;
    };

    for (int i = 0; i + 1 < m; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            const double f = dl[i] / guard(d[i]);
            d[i + 1] -= f * du[i];
            b[i + 1] -= f * b[i];
            dl[i] = 0.0; // no fill-in
        } else {
            const double f = d[i] / dl[i];
            d[i] = dl[i];
            const double temp = d[i + 1];
            d[i + 1] = du[i] - f * temp;
            if (i + 2 < m) {
                du2[i] = du[i + 1];
                du[i + 1] = -f * du[i + 1];
            }
            du[i] = temp;
            std::swap(b[i], b[i + 1]);
            b[i + 1] -= f * b[i];
            dl[i] = 0.0;
        }
    }

    std::vector<double> x(m);
    for (int i = m - 1; i >= 0; --i) {
        double s = b[i];
        if (i + 1 < m) s -= du[i] * x[i + 1];
        if (i + 2 < m) s -= du2[i] * x[i + 2];
        x[i] = s / guard(d[i]);
        if (!std::isfinite(x[i])) {
            throw SolverBreakdownError("non-finite value in shifted tridiagonal solve");
        }
    }
    return x;
}

} // namespace

std::vector<double> eigenvalues_below(const Tridiag& t, double lambda_max) {
    auto [glo, ghi] = gershgorin_bounds(t);
    (void)ghi;
    const int k = sturm_count_below(t, lambda_max);
    std::vector<double> out;
    out.reserve(k);
    const double span = std::max(1.0, std::abs(lambda_max) + std::abs(glo));
    for (int j = 0; j < k; ++j) {
        double lo = glo, hi = lambda_max;
        // bisect until the j-th eigenvalue is pinned
        for (int it = 0; it < 200 && hi - lo > 1e-12 * span; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (sturm_count_below(t, mid) > j) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

std::vector<double> inverse_iteration(const Tridiag& t, double eigenvalue) {
    const int m = t.size();
    std::vector<double> v(m);
    // deterministic start vector with no accidental symmetry
    for (int i = 0; i < m; ++i) {
        v[i] = 1.0 + 0.3 * std::sin(0.7 * (i + 1));
    }
    for (int it = 0; it < 5; ++it) {
        v = solve_shifted(t, eigenvalue, std::move(v));
        double nrm = 0.0;
        for (double c : v) nrm += c * c;
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            throw SolverBreakdownError("inverse iteration produced a non-finite vector");
        }
        for (double& c : v) c /= nrm;
    }
    return v;
}

namespace {

struct WellCandidate {
    double energy;
    double well_weight;
    std::vector<double> vec;
};

} // namespace

std::vector<EigenPair> quasi_bound_states(const QubitParams& params,
                                          const Grid& grid, double phi,
                                          int n_max, double window_buffer) {
    const PotentialGeometry geom = find_geometry(phi, params, grid.c);
    const int hi_node = grid.index_below(geom.xb + window_buffer);
    if (hi_node + 1 < 10) {
        throw DegenerateWindowError("eigensolve window has fewer than 10 nodes");
    }
    const Tridiag h = hamiltonian_tridiagonal(grid, phi, params, {}, hi_node);

    const double omega_h =
        std::sqrt(2.0 * params.d_cap * potential_curvature(geom.x1, phi, params));
    const double search_max = geom.vb + 0.5 * omega_h;

    std::vector<WellCandidate> well;
    for (double e : eigenvalues_below(h, search_max)) {
        std::vector<double> vec = inverse_iteration(h, e);
        // orthogonalize against previously accepted well states
        for (const auto& w : well) {
            double dot = 0.0;
            for (size_t i = 0; i < vec.size(); ++i) dot += w.vec[i] * vec[i];
            for (size_t i = 0; i < vec.size(); ++i) vec[i] -= dot * w.vec[i];
        }
        double nrm2 = 0.0;
        for (double c : vec) nrm2 += c * c;
        if (!(nrm2 > 1e-12)) continue;
        const double inv = 1.0 / std::sqrt(nrm2);
        for (double& c : vec) c *= inv;

        double inside = 0.0;
        const int m = static_cast<int>(vec.size());
        for (int i = 0; i < m; ++i) {
            if (grid.x(i + 1) <= geom.xb) inside += vec[i] * vec[i];
        }
        if (inside <= 0.5) continue; // buffer artifact, not a well state

        // Rayleigh refinement of the energy
        const std::vector<double> hv = tridiag_apply(h, vec);
        double rq = 0.0;
        for (int i = 0; i < m; ++i) rq += vec[i] * hv[i];
        well.push_back({rq, inside, std::move(vec)});
    }
    std::sort(well.begin(), well.end(),
              [](const WellCandidate& a, const WellCandidate& b) {
                  return a.energy < b.energy;
              });

    // A level counts as present while it stays below the barrier top plus a
    // fifth of the local spacing (barrier-top resonances are still levels).
    std::vector<EigenPair> out;
    const double marginal_band = 1e-3 * geom.barrier_height();
    for (size_t k = 0; k < well.size(); ++k) {
        const double gap =
            k == 0 ? omega_h : well[k].energy - well[k - 1].energy;
        if (well[k].energy >= geom.vb + 0.2 * gap) break;
        if (static_cast<int>(out.size()) >= n_max) break;

        WaveFunction psi(grid);
        const int m = static_cast<int>(well[k].vec.size());
        for (int i = 0; i < m; ++i) psi.values[i + 1] = well[k].vec[i];
        psi.normalize();
        const bool marginal = well[k].energy > geom.vb - marginal_band;
        out.emplace_back(well[k].energy, std::move(psi), well[k].well_weight,
                         marginal);
    }
    return out;
}

int count_levels(const QubitParams& params, const Grid& grid, double phi,
                 double window_buffer) {
    return static_cast<int>(
        quasi_bound_states(params, grid, phi,
                           std::numeric_limits<int>::max(), window_buffer)
            .size());
}

} // namespace qrl

#ifndef THERMOGAP_ENTO_H
#define THERMOGAP_ENTO_H

#include <array>
#include <vector>

#include "thermogap/core.h"

namespace thermogap {

/// Feasible ranges for (G00, G11) of a Gibbs-stochastic G mapping the input
/// populations (1/2, 1/2, 0) onto (p0, p1, 1 - p0 - p1).
///
/// With x = G00 and y = G11 every other entry of G is affine in (x, y):
///
///   G01 = 2 p0 - x                       G10 = 2 p1 - y
///   G02 = (1 - 2 q p0 - (1 - q) x) / q^2  G12 = (q - 2 p1 + (1 - q) y) / q^2
///   G20 = 1 - 2 p1 - (x - y)             G21 = 1 - 2 p0 + (x - y)
///   G22 = 1 - G02 - G12
///
/// Requiring all nine entries to lie in [0, 1] gives a box for (x, y) and a
/// strip for x - y; together they are necessary and sufficient.
struct EntryBounds {
    double g00_lo = 0;
    double g00_hi = 0;
    double g11_lo = 0;
    double g11_hi = 0;
    double diff_lo = 0;
    double diff_hi = 0;
    bool feasible = false;
};

/// Covariant Kraus decomposition; kraus[n + 2] is supported on entries (i, j) with i - j = n.
struct EntoChannel {
    std::array<Matrix3c, 5> kraus;
    TransitionMatrix source;
};

/// Throws DomainError unless 0 < q < 1, p0, p1 >= 0 and p0 + p1 <= 1.
EntryBounds entry_bounds(double q, double p0, double p1);

bool population_feasible(double q, double p0, double p1);

/// min over the two inner elbows of p_out's Gibbs-ordered Lorenz curve of (L_in - L_out).
/// Non-negative iff p_in thermo-majorizes p_out.
double thermo_majorization_slack(double q, const Vector3r &p_in, const Vector3r &p_out);

bool thermo_majorization_reachable(double q, const Vector3r &p_in, const Vector3r &p_out,
                                   double tol = kAlgebraicTol);

/// Vertices of the set of populations reachable from p_in, one per Gibbs ordering
/// of the three levels (duplicates kept). Returned in ordering-enumeration order.
std::vector<Vector3r> thermal_polytope_vertices(double q, const Vector3r &p_in);

/// Largest |rho10| reachable by EnTO from |psi0> = (|0> + |1>)/sqrt(2) at output populations (p0, p1).
ConeRecord max_coherence_ento(double q, double p0, double p1);

/// Brute-force maximum of sqrt(G00 G11)/2 over a grid_n x grid_n lattice on the
/// (G00, G11) box, checking every reconstructed entry. Returns -1 if no lattice point is feasible.
///
/// The remaining entries are obtained by solving the linear constraint system
/// numerically, not from the closed forms in EntryBounds.
double lp_oracle_max(double q, double p0, double p1, int grid_n);

/// Full Gibbs-stochastic G* attaining max_coherence_ento.
TransitionMatrix optimal_transition(double q, double p0, double p1);

/// Reconstructs G from (G00, G11); throws InternalError if an entry leaves [0, 1] by more than 1e-10.
TransitionMatrix transition_from_diagonal(double q, double p0, double p1, double g00, double g11);

/// K(n) = sum_{i - j = n} sqrt(G_ij) |i><j|.
EntoChannel kraus_from_transition(const TransitionMatrix &g);

DensityMatrix apply_channel(const EntoChannel &channel, const DensityMatrix &rho);

/// max over the lattice p0 = a/(grid-1), p1 = b/(grid-1); row order is p0-major.
/// Points outside the simplex or the cone are returned as infeasible records.
std::vector<ConeRecord> sweep_cone(double q, int grid);

}  // namespace thermogap

#endif

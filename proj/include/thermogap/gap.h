#ifndef THERMOGAP_GAP_H
#define THERMOGAP_GAP_H

#include <cstdint>
#include <vector>

#include "thermogap/bath.h"
#include "thermogap/core.h"

namespace thermogap {

/// (sqrt(5) - 1) / 2: above this, 1 - q - q^2 <= 0 and the perturbed bounds are vacuous.
inline constexpr double kGoldenThreshold = 0.6180339887498949;

struct PointbValues {
    double ento_max = 0;
    double to_max = 0;
    double delta10 = 0;
};

/// EnTO maximum sqrt(1 - q^2)/2, TO maximum (1 - q^2)/2 and their gap at the
/// output populations ((1 - q^2)/2, 1/2).
PointbValues pointb_values(double q);

struct GapBound {
    double value = 0;
    /// q >= (sqrt(5) - 1)/2: the bound may be vacuous.
    bool domain_warning = false;
};

struct RefinedGapBound {
    double value = 0;
    double f_q = 0;
    bool domain_warning = false;
};

/// (1 - sqrt(1 - q^2))^2 (1 - q - q^2)(1 - delta)/4 - 2 epsilon.
GapBound gap_bound_main(double q, double epsilon, double delta);

/// First-order-in-epsilon bound
///   (1 - s)^2 (1 - q - q^2)(1 - delta) / (4 s) - f(q) epsilon / 4,  s = sqrt(1 - q^2),
/// with f(q) = 2 + [1 - s^4](1 - q - q^2) / (2 s^3) + 1/s. O(epsilon^2) terms are dropped.
RefinedGapBound gap_bound_refined(double q, double epsilon, double delta);

double refined_bound_coefficient(double q);

/// sqrt((1 - q^2 + epsilon) / (1 - epsilon)). Throws DomainError unless 0 <= epsilon < 1.
double alpha_epsilon(double q, double epsilon);

struct MuGapCheck {
    double p00 = 0;
    double p11 = 0;
    /// (U00, U11), real for a unitary in SVD normal form.
    double overlap = 0;
    double alpha = 0;
    /// (mu, mu) with mu = U00 - alpha U11.
    double mu_norm = 0;
    /// sqrt(p00 p11)/2 - overlap/2
    double lhs = 0;
    /// (mu, mu)/4
    double rhs = 0;
    /// |p00 p11 - overlap^2 - p11 (mu, mu)|
    double pythagoras_residual = 0;
    /// lhs > rhs is only claimed when p00 < p11.
    bool inequality_applies = false;
};

MuGapCheck mu_gap_check(const BlockUnitary &u, const BathSpec &bath);

enum class SamplePattern { haar, pointb };

struct GapSample {
    int index = 0;
    Matrix3r transition;
    double rho10 = 0;
    /// sqrt(G00 G11)/2, the coherence bound for the reference input.
    double bound_eq7 = 0;
    bool in_window = false;
};

struct EmpiricalGapSummary {
    int n_samples = 0;
    int n_filtered = 0;
    double observed_max = -1;
    double ento_max = 0;
    double distance_to_ento = 0;
    double epsilon_eff = 0;
    double delta_eff = 0;
    double bound_main_eff = 0;
    /// observed_max <= ento_max - bound_main_eff + 1e-9 (vacuous when the filtered set is empty).
    bool bound_respected = true;
    /// Samples violating rho10 <= bound_eq7 + 1e-10.
    int cauchy_schwarz_violations = 0;
    std::vector<GapSample> samples;
};

/// Samples block unitaries with per-sample seeds derived from `seed`, keeps those with
/// |G00 - (1 - q^2)| <= window and |G11 - 1| <= window, and compares the best kept
/// coherence against the perturbed gap bound. delta_eff = max(delta_tail, delta_ratio).
EmpiricalGapSummary empirical_gap(const BathSpec &bath, int n_samples, double epsilon_window,
                                  uint64_t seed, SamplePattern pattern = SamplePattern::pointb);

struct GapRecord {
    double q = 0;
    double epsilon = 0;
    double delta = 0;
    double ento_max = 0;
    double to_max = 0;
    double delta10 = 0;
    double bound_main = 0;
    double bound_refined = 0;
    double f_q = 0;
    bool certified = false;
    bool domain_warning = false;
    /// 1 - q - q^2 < 0.05
    bool near_vacuous = false;
};

/// Cartesian product, q outermost then epsilon then delta.
std::vector<GapRecord> sweep_gap(const std::vector<double> &q_grid, const std::vector<double> &epsilon_grid,
                                 const std::vector<double> &delta_grid);

}  // namespace thermogap

#endif

#include "thermogap/gap.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace thermogap {

namespace {

void require_perturbation(double epsilon, double delta) {
    if (!(epsilon >= 0) || !(delta >= 0) || !std::isfinite(epsilon) || !std::isfinite(delta)) {
        throw DomainError("epsilon and delta must be finite and non-negative");
    }
}

uint64_t sample_seed(uint64_t master, int index) {
    std::seed_seq seq{static_cast<uint32_t>(master), static_cast<uint32_t>(master >> 32),
                      static_cast<uint32_t>(index), 0x9e3779b9u};
    std::array<uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace

PointbValues pointb_values(double q) {
    require_temperature(q);
    double s2 = 1 - q * q;
    PointbValues v;
    v.ento_max = 0.5 * std::sqrt(s2);
    v.to_max = 0.5 * s2;
    v.delta10 = 0.5 * (std::sqrt(s2) - s2);
    return v;
}

GapBound gap_bound_main(double q, double epsilon, double delta) {
    require_temperature(q);
    require_perturbation(epsilon, delta);
    double s = std::sqrt(1 - q * q);
    GapBound b;
    b.value = 0.25 * (1 - s) * (1 - s) * (1 - q - q * q) * (1 - delta) - 2 * epsilon;
    b.domain_warning = q >= kGoldenThreshold;
    return b;
}

double refined_bound_coefficient(double q) {
    require_temperature(q);
    double s2 = 1 - q * q;
    double s = std::sqrt(s2);
    return 2 + (1 - s2 * s2) * (1 - q - q * q) / (2 * s2 * s) + 1 / s;
}

RefinedGapBound gap_bound_refined(double q, double epsilon, double delta) {
    require_temperature(q);
    require_perturbation(epsilon, delta);
    double s = std::sqrt(1 - q * q);
    RefinedGapBound b;
    b.f_q = refined_bound_coefficient(q);
    b.value = (1 - s) * (1 - s) * (1 - q - q * q) * (1 - delta) / (4 * s) - 0.25 * b.f_q * epsilon;
    b.domain_warning = q >= kGoldenThreshold;
    return b;
}

double alpha_epsilon(double q, double epsilon) {
    require_temperature(q);
    if (!(epsilon >= 0 && epsilon < 1)) {
        throw DomainError("alpha(epsilon) needs 0 <= epsilon < 1");
    }
    return std::sqrt((1 - q * q + epsilon) / (1 - epsilon));
}

MuGapCheck mu_gap_check(const BlockUnitary &u, const BathSpec &bath) {
    MuGapCheck c;
    c.p00 = uvector_inner(u, bath, {0, 0}, {0, 0}).real();
    c.p11 = uvector_inner(u, bath, {1, 1}, {1, 1}).real();
    c.overlap = uvector_inner(u, bath, {1, 1}, {0, 0}).real();
    c.alpha = c.p11 > 0 ? c.overlap / c.p11 : 0.0;

    // mu lives on bath levels n: sqrt(gamma_n) (u00^n - alpha u11^{n+1}).
    double mu = 0;
    for (int n = 0; n <= bath.max_level; n++) {
        MatrixXc diff = u.sub_block(n, 0, 0) - c.alpha * u.sub_block(n + 1, 1, 1);
        mu += bath.weight(n) * diff.squaredNorm();
    }
    c.mu_norm = mu;
    c.lhs = 0.5 * std::sqrt(c.p00 * c.p11) - 0.5 * c.overlap;
    c.rhs = 0.25 * mu;
    c.pythagoras_residual = std::abs(c.p00 * c.p11 - c.overlap * c.overlap - c.p11 * mu);
    c.inequality_applies = c.p00 < c.p11;
    return c;
}

EmpiricalGapSummary empirical_gap(const BathSpec &bath, int n_samples, double epsilon_window,
                                  uint64_t seed, SamplePattern pattern) {
    if (n_samples < 0) {
        throw std::invalid_argument("sample count must be non-negative");
    }
    double q = bath.q;
    DeltaReport rep = bath_delta_report(bath);
    DensityMatrix rho0 = DensityMatrix::plus01();

    EmpiricalGapSummary s;
    s.n_samples = n_samples;
    s.ento_max = pointb_values(q).ento_max;
    s.delta_eff = std::max(rep.delta_tail, rep.delta_ratio);
    for (int idx = 0; idx < n_samples; idx++) {
        uint64_t sub = sample_seed(seed, idx);
        BlockUnitary u = pattern == SamplePattern::pointb ? random_pointb_completion(bath, sub)
                                                          : random_block_unitary(bath, sub);
        TransitionMatrix g = transition_from_unitary(u, bath);
        GapSample smp;
        smp.index = idx;
        smp.transition = g.matrix();
        smp.rho10 = coherence_from_unitary(u, bath, rho0);
        smp.bound_eq7 = coherence_bound(rho0, g, 1, 0);
        double dev = std::max(std::abs(g(0, 0) - (1 - q * q)), std::abs(g(1, 1) - 1));
        smp.in_window = dev <= epsilon_window;
        if (smp.rho10 > smp.bound_eq7 + kChannelTol) {
            s.cauchy_schwarz_violations++;
        }
        if (smp.in_window) {
            s.n_filtered++;
            s.observed_max = std::max(s.observed_max, smp.rho10);
            s.epsilon_eff = std::max(s.epsilon_eff, dev);
        }
        s.samples.push_back(smp);
    }
    s.bound_main_eff = gap_bound_main(q, s.epsilon_eff, s.delta_eff).value;
    if (s.n_filtered > 0) {
        s.distance_to_ento = s.ento_max - s.observed_max;
        s.bound_respected = s.observed_max <= s.ento_max - s.bound_main_eff + 1e-9;
    }
    return s;
}

std::vector<GapRecord> sweep_gap(const std::vector<double> &q_grid, const std::vector<double> &epsilon_grid,
                                 const std::vector<double> &delta_grid) {
    std::vector<GapRecord> out;
    for (double q : q_grid) {
        for (double eps : epsilon_grid) {
            for (double delta : delta_grid) {
                GapRecord r;
                r.q = q;
                r.epsilon = eps;
                r.delta = delta;
                PointbValues v = pointb_values(q);
                r.ento_max = v.ento_max;
                r.to_max = v.to_max;
                r.delta10 = v.delta10;
                GapBound main = gap_bound_main(q, eps, delta);
                RefinedGapBound refined = gap_bound_refined(q, eps, delta);
                r.bound_main = main.value;
                r.bound_refined = refined.value;
                r.f_q = refined.f_q;
                r.certified = main.value > 0;
                r.domain_warning = main.domain_warning;
                r.near_vacuous = 1 - q - q * q < 0.05;
                out.push_back(r);
            }
        }
    }
    return out;
}

}  // namespace thermogap

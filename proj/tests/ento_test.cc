#include "thermogap/ento.h"

#include <algorithm>
#include <cmath>
#include <queue>

#include "gtest/gtest.h"

using namespace thermogap;

TEST(ento, entry_bounds_at_pointb) {
    EntryBounds b = entry_bounds(0.5, 0.375, 0.5);
    EXPECT_TRUE(b.feasible);
    EXPECT_NEAR(b.g00_hi, 0.75, 1e-15);
    EXPECT_NEAR(b.g11_hi, 1.0, 1e-15);
    EXPECT_TRUE(population_feasible(0.5, 0.5, 0.5));
    EXPECT_FALSE(population_feasible(0.5, 0.9, 0.1));
    EXPECT_FALSE(population_feasible(0.5, 0.0, 0.0));
}

TEST(ento, domain_errors) {
    EXPECT_THROW(entry_bounds(0.5, 0.7, 0.7), DomainError);
    EXPECT_THROW(entry_bounds(0.5, -0.1, 0.5), DomainError);
    EXPECT_THROW(entry_bounds(1.0, 0.3, 0.3), DomainError);
    EXPECT_THROW(optimal_transition(0.5, 0.9, 0.1), DomainError);
    EXPECT_THROW(lp_oracle_max(0.5, 0.3, 0.3, 1), std::invalid_argument);
}

TEST(ento, max_coherence_known_points) {
    ConeRecord center = max_coherence_ento(0.5, 0.5, 0.5);
    EXPECT_EQ(center.case_id, ConeCase::case1);
    EXPECT_NEAR(center.rho10_max, 0.5, 1e-15);

    for (double q : {0.2, 0.5, 0.6}) {
        ConeRecord b = max_coherence_ento(q, (1 - q * q) / 2, 0.5);
        EXPECT_TRUE(b.feasible());
        EXPECT_NEAR(b.rho10_max, 0.5 * std::sqrt(1 - q * q), 1e-12) << q;
    }

    ConeRecord outside = max_coherence_ento(0.5, 0.9, 0.05);
    EXPECT_FALSE(outside.feasible());
    EXPECT_EQ(outside.rho10_max, 0);
}

TEST(ento, known_optima) {
    ConeRecord b = max_coherence_ento(0.5, 4.0 / 7, 2.0 / 7);
    EXPECT_EQ(b.case_id, ConeCase::case1);
    EXPECT_NEAR(b.rho10_max, 0.5 * std::sqrt(6.0 / 7 * 4.0 / 7), 1e-12);
    EXPECT_NEAR(lp_oracle_max(0.5, 4.0 / 7, 2.0 / 7, 2000), b.rho10_max, 1e-3);
    EXPECT_EQ(max_coherence_ento(0.5, 0.375, 0.5).case_id, ConeCase::case1);
    EXPECT_LT((optimal_transition(0.5, 0.5, 0.5).matrix() - Matrix3r::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

// The oracle contract is agreement within 1/grid_n (the entry range [0, 1] over the lattice size).
TEST(ento, oracle_agreement_sample) {
    constexpr int n = 500;
    EXPECT_NEAR(lp_oracle_max(0.5, 0.375, 0.5, n), 0.4330127, 1.0 / n);
    EXPECT_NEAR(lp_oracle_max(0.5, 0.5, 0.5, n), 0.5, 1.0 / n);
    EXPECT_NEAR(lp_oracle_max(0.3, 0.455, 0.5, n), max_coherence_ento(0.3, 0.455, 0.5).rho10_max, 1.0 / n);
    for (double q : {0.2, 0.5}) {
        for (auto [p0, p1] : {std::pair{0.3, 0.4}, {0.45, 0.3}, {0.6, 0.2}, {0.4, 0.55}}) {
            ConeRecord rec = max_coherence_ento(q, p0, p1);
            double oracle = lp_oracle_max(q, p0, p1, n);
            if (!rec.feasible()) {
                EXPECT_LT(oracle, 0);
                continue;
            }
            EXPECT_LE(oracle, rec.rho10_max + 1e-12);
            EXPECT_NEAR(oracle, rec.rho10_max, 1.0 / n) << q << " " << p0 << " " << p1;
        }
    }
}

TEST(ento, optimal_transition_maps_populations) {
    for (auto [p0, p1] : {std::pair{0.375, 0.5}, {0.5, 0.3}, {0.6, 0.2}, {0.45, 0.45}}) {
        TransitionMatrix g = optimal_transition(0.5, p0, p1);
        EXPECT_LE(g.gibbs_residual(0.5), 1e-12);
        Vector3r out = g.matrix() * Vector3r(0.5, 0.5, 0);
        EXPECT_NEAR(out[0], p0, 1e-12);
        EXPECT_NEAR(out[1], p1, 1e-12);
        EXPECT_NEAR(coherence_bound(DensityMatrix::plus01(), g, 1, 0), max_coherence_ento(0.5, p0, p1).rho10_max,
                    1e-12);
    }
    EXPECT_THROW(transition_from_diagonal(0.5, 0.375, 0.5, 1.0, 1.0), InternalError);
}

TEST(ento, kraus_channel) {
    TransitionMatrix g = optimal_transition(0.5, 0.375, 0.5);
    EntoChannel ch = kraus_from_transition(g);
    EXPECT_EQ(ch.kraus[2](2, 2), Complex(std::sqrt(g(2, 2))));
    EXPECT_EQ(ch.kraus[4](2, 0), Complex(std::sqrt(g(2, 0))));
    EXPECT_EQ(ch.kraus[4](0, 2), Complex(0));
    DensityMatrix out = apply_channel(ch, DensityMatrix::plus01());
    EXPECT_NEAR(std::abs(out(1, 0)), 0.5 * std::sqrt(0.75), 1e-12);
    EXPECT_NEAR(out(0, 0).real(), 0.375, 1e-12);
    DensityMatrix gibbs = make_gibbs_state(0.5);
    EXPECT_LT((apply_channel(ch, gibbs).matrix() - gibbs.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ento, thermal_polytope_hexagon) {
    std::vector<Vector3r> v = thermal_polytope_vertices(0.5, Vector3r(0.5, 0.5, 0));
    ASSERT_EQ(v.size(), 6u);
    std::vector<std::pair<double, double>> expected{{0.75, 0.25},  {0.75, 0.125}, {0.5, 0.5},
                                                    {0.375, 0.5}, {0.625, 0.125}, {0.375, 0.375}};
    for (auto [x, y] : expected) {
        bool found = std::any_of(v.begin(), v.end(), [&](const Vector3r &p) {
            return std::abs(p[0] - x) < 1e-12 && std::abs(p[1] - y) < 1e-12;
        });
        EXPECT_TRUE(found) << x << "," << y;
    }
    for (const auto &p : v) {
        EXPECT_TRUE(thermo_majorization_reachable(0.5, Vector3r(0.5, 0.5, 0), p));
        EXPECT_TRUE(population_feasible(0.5, p[0], std::clamp(p[1], 0.0, 1.0 - p[0])));
    }
}

TEST(ento, thermo_majorization_slack) {
    Vector3r p_in(0.5, 0.5, 0);
    EXPECT_NEAR(thermo_majorization_slack(0.5, p_in, p_in), 0, 1e-15);
    EXPECT_GT(thermo_majorization_slack(0.5, p_in, make_gibbs_state(0.5).populations()), 0.1);
    EXPECT_LT(thermo_majorization_slack(0.5, p_in, Vector3r(1, 0, 0)), 0);
    EXPECT_FALSE(thermo_majorization_reachable(0.5, p_in, Vector3r(0, 0, 1)));
}

TEST(ento, sweep_cone_grid50) {
    constexpr int grid = 50;
    std::vector<ConeRecord> rec = sweep_cone(0.5, grid);
    ASSERT_EQ(rec.size(), 2500u);
    auto feasible = [&](int a, int b) {
        return a >= 0 && b >= 0 && a < grid && b < grid && rec[static_cast<size_t>(a) * grid + b].feasible();
    };
    EXPECT_DOUBLE_EQ(rec[1].p1, 1.0 / 49);
    EXPECT_DOUBLE_EQ(rec[grid].p0, 1.0 / 49);
    EXPECT_FALSE(rec.back().feasible());

    // Connected, contains point (b), max near (1/2, 1/2).
    int total = 0;
    std::pair<int, int> start{-1, -1};
    double best = 0;
    for (int a = 0; a < grid; a++) {
        for (int b = 0; b < grid; b++) {
            if (feasible(a, b)) {
                total++;
                start = {a, b};
                best = std::max(best, rec[static_cast<size_t>(a) * grid + b].rho10_max);
            }
        }
    }
    std::vector<char> seen(grid * grid, 0);
    std::queue<std::pair<int, int>> todo;
    todo.push(start);
    seen[start.first * grid + start.second] = 1;
    int reached = 0;
    while (!todo.empty()) {
        auto [a, b] = todo.front();
        todo.pop();
        reached++;
        for (auto [da, db] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
            if (feasible(a + da, b + db) && !seen[(a + da) * grid + b + db]) {
                seen[(a + da) * grid + b + db] = 1;
                todo.emplace(a + da, b + db);
            }
        }
    }
    EXPECT_EQ(reached, total);
    EXPECT_TRUE(population_feasible(0.5, 0.375, 0.5));
    EXPECT_NEAR(best, 0.5, 1.0 / 49);

    double jump = 0;
    for (int a = 0; a < grid; a++) {
        for (int b = 0; b < grid; b++) {
            for (auto [da, db] : {std::pair{1, 0}, {0, 1}}) {
                if (feasible(a, b) && feasible(a + da, b + db)) {
                    jump = std::max(jump, std::abs(rec[static_cast<size_t>(a) * grid + b].rho10_max -
                                                   rec[static_cast<size_t>(a + da) * grid + b + db].rho10_max));
                }
            }
        }
    }
    EXPECT_LE(jump * grid, 5);
}

TEST(ento, sweep_cone_arguments) {
    EXPECT_THROW(sweep_cone(0.5, 1), std::invalid_argument);
    EXPECT_THROW(sweep_cone(0.0, 10), DomainError);
}

TEST(ento, pointb_channel_kills_mode_two) {
    EntoChannel ch = kraus_from_transition(optimal_transition(0.5, 0.375, 0.5));
    for (uint64_t s = 0; s < 5; s++) {
        DensityMatrix out = apply_channel(ch, random_density_matrix(s));
        EXPECT_LT(std::abs(out(2, 0)), 1e-15);
    }
    DensityMatrix rho0 = DensityMatrix::plus01();
    EntoChannel id = kraus_from_transition(TransitionMatrix::identity());
    EXPECT_LT((apply_channel(id, rho0).matrix() - rho0.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

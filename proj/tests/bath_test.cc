#include "thermogap/bath.h"

#include <cmath>

#include "gtest/gtest.h"

using namespace thermogap;

TEST(bath, geometric_degeneracies) {
    BathSpec b = make_geometric_bath(0.5, 6, 2.0);
    EXPECT_EQ(b.degeneracies, (std::vector<int64_t>{1, 2, 4, 8, 16, 32, 64}));
    EXPECT_EQ(b.total_dimension(), 127);
    EXPECT_NEAR(b.partition, 7.0, 1e-15);
    EXPECT_NEAR(b.weight(3), 0.125 / 7, 1e-15);
    EXPECT_EQ(b.weight(7), 0);
    EXPECT_EQ(b.degeneracy(-1), 0);
    EXPECT_THROW(make_geometric_bath(0.5, 0, 2.0), DomainError);
    EXPECT_THROW(make_geometric_bath(0.5, 4, 0.5), DomainError);
}

TEST(bath, custom_bath_validation) {
    EXPECT_NO_THROW(make_custom_bath(0.5, {1, 1, 3}));
    EXPECT_THROW(make_custom_bath(0.5, {2, 1, 3}), DomainError);
    EXPECT_THROW(make_custom_bath(0.5, {0, 1, 3}), DomainError);
    EXPECT_THROW(make_custom_bath(0.5, {}), DomainError);
}

TEST(bath, delta_report) {
    DeltaReport r = bath_delta_report(make_geometric_bath(0.5, 6, 2.0));
    EXPECT_EQ(r.good_levels, (std::vector<int>{2, 3, 4}));
    EXPECT_NEAR(r.delta_ratio, 0, 1e-15);
    EXPECT_NEAR(r.delta_tail, 4.0 / 7, 1e-15);
    EXPECT_NEAR(r.positivity_margin, 0.25, 1e-15);
    EXPECT_NEAR(r.positivity_bound, 0.25, 1e-15);
    EXPECT_FALSE(r.positivity_flag);
    EXPECT_THROW(bath_delta_report(make_geometric_bath(0.5, 3, 2.0)), DomainError);

    DeltaReport mismatched = bath_delta_report(make_geometric_bath(0.5, 6, 3.0));
    EXPECT_GT(mismatched.delta_ratio, 0.3);
}

TEST(bath, sector_layouts) {
    auto layouts = sector_layouts(make_geometric_bath(0.5, 4, 2.0));
    ASSERT_EQ(layouts.size(), 7u);
    EXPECT_EQ(layouts[0].dim, 1);
    EXPECT_FALSE(layouts[0].present[1]);
    EXPECT_EQ(layouts[3].size, (std::array<int64_t, 3>{8, 4, 2}));
    EXPECT_EQ(layouts[3].offset, (std::array<int64_t, 3>{0, 8, 12}));
    EXPECT_EQ(layouts[6].dim, 16);
    EXPECT_TRUE(layouts[6].present[2]);
}

TEST(bath, identity_unitary_is_identity_channel) {
    BathSpec b = make_geometric_bath(0.5, 4, 2.0);
    BlockUnitary u = identity_block_unitary(b);
    EXPECT_LT((transition_from_unitary(u, b).matrix() - Matrix3r::Identity()).cwiseAbs().maxCoeff(), 1e-15);
    DensityMatrix rho = random_density_matrix(1);
    EXPECT_LT((channel_from_unitary(u, b, rho) - rho.matrix()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(coherence_from_unitary(u, b), 0.5, 1e-15);
}

TEST(bath, random_unitary_determinism) {
    BathSpec b = make_geometric_bath(0.5, 4, 2.0);
    BlockUnitary u1 = random_block_unitary(b, 99);
    BlockUnitary u2 = random_block_unitary(b, 99);
    BlockUnitary u3 = random_block_unitary(b, 100);
    for (int k = 0; k < u1.num_sectors(); k++) {
        EXPECT_EQ(u1.sector(k), u2.sector(k));
    }
    EXPECT_NE(u1.sector(3), u3.sector(3));
    EXPECT_LT(u1.max_unitarity_residual(), 1e-12);
}

TEST(bath, block_unitary_validation) {
    BathSpec b = make_geometric_bath(0.5, 2, 2.0);
    std::vector<MatrixXc> blocks;
    for (const auto &l : sector_layouts(b)) {
        blocks.push_back(MatrixXc::Identity(l.dim, l.dim));
    }
    blocks[2](0, 0) = 2.0;
    EXPECT_THROW(BlockUnitary(b, blocks), DomainError);
    blocks.pop_back();
    EXPECT_THROW(BlockUnitary(b, blocks), DomainError);
}

TEST(bath, inner_product_mode_mismatch) {
    BathSpec b = make_geometric_bath(0.5, 4, 2.0);
    BlockUnitary u = random_block_unitary(b, 1);
    EXPECT_THROW(uvector_inner(u, b, {1, 0}, {0, 0}), std::invalid_argument);
    EXPECT_NO_THROW(uvector_inner(u, b, {2, 1}, {1, 0}));
}

TEST(bath, dense_oracle_matches_inner_products) {
    BathSpec b = make_custom_bath(0.3, {1, 2, 3, 5});
    for (uint64_t s = 0; s < 5; s++) {
        BlockUnitary u = random_block_unitary(b, s);
        DensityMatrix rho = random_density_matrix(s + 50);
        Matrix3c dense = dense_channel_oracle(u, b, rho).matrix();
        EXPECT_LT((dense - channel_from_unitary(u, b, rho)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(bath, transition_columns_are_stochastic) {
    BathSpec b = make_geometric_bath(0.5, 4, 2.0);
    TransitionMatrix g = transition_from_unitary(random_block_unitary(b, 5), b);
    EXPECT_LT((g.matrix().colwise().sum().array() - 1).abs().maxCoeff(), 1e-12);
}

TEST(bath, optimal_pointb_unitary_truncated) {
    BathSpec b = make_geometric_bath(0.5, 6, 2.0);
    BlockUnitary u = optimal_pointb_unitary(b);
    EXPECT_EQ(u.max_unitarity_residual(), 0);
    EXPECT_TRUE(verify_sigma_pattern(u, b));
    Matrix3r g = transition_from_unitary(u, b).matrix();
    EXPECT_NEAR(g(1, 1), 1.0, 1e-15);
    EXPECT_NEAR(g(0, 0), 23.0 / 28, 1e-14);
    // The top two bath levels cannot be routed from 2 to 0, so G02 = 1 - d_5 g_5 - d_6 g_6.
    EXPECT_NEAR(g(0, 2), 5.0 / 7, 1e-14);
    EXPECT_NEAR(coherence_from_unitary(u, b), 0.5 * (1 - 0.25 * 5 / 7), 1e-12);
}

TEST(bath, counting_path_matches_matrices) {
    for (int k : {4, 6, 8}) {
        BathSpec b = make_geometric_bath(0.5, k, 2.0);
        BlockUnitary u = optimal_pointb_unitary(b);
        PointbCounting c = pointb_counting(b);
        EXPECT_LT((c.transition - transition_from_unitary(u, b).matrix()).cwiseAbs().maxCoeff(), 1e-12) << k;
        EXPECT_NEAR(c.coherence, coherence_from_unitary(u, b), 1e-12) << k;
    }
    EXPECT_NEAR(pointb_counting(make_geometric_bath(0.5, 14, 2.0)).transition(0, 0), 1 - 0.25 * 13 / 15, 1e-12);
    PointbCounting big = pointb_counting(make_geometric_bath(0.5, 40, 2.0));
    EXPECT_NEAR(big.coherence, 0.5 * (1 - 0.25 * 39 / 41), 1e-12);
}

TEST(bath, svd_normal_form_structure) {
    BathSpec b = make_geometric_bath(0.5, 4, 2.0);
    BlockUnitary u = random_block_unitary(b, 8);
    BlockUnitary v = svd_normal_form(u, b);
    MatrixXc m = v.sub_block(4, 0, 0);
    MatrixXc d = m.diagonal().asDiagonal();
    EXPECT_LT((m - d).cwiseAbs().maxCoeff(), 1e-12);
    for (Eigen::Index i = 1; i < m.rows(); i++) {
        EXPECT_LE(m(i, i).real(), m(i - 1, i - 1).real() + 1e-14);
    }
    EXPECT_GE(coherence_from_unitary(v, b), coherence_from_unitary(u, b) - 1e-12);
}

TEST(bath, sigma_pattern_rejects_haar) {
    BathSpec b = make_geometric_bath(0.5, 4, 2.0);
    EXPECT_THROW(verify_sigma_pattern(random_block_unitary(b, 2), b), StructureError);
    EXPECT_TRUE(verify_sigma_pattern(random_pointb_completion(b, 2), b));
    EXPECT_THROW(verify_sigma_pattern(identity_block_unitary(b), b), StructureError);
}

TEST(bath, size_guards) {
    BathSpec big = make_geometric_bath(0.5, 14, 2.0);
    EXPECT_THROW(random_block_unitary(big, 1), ResourceError);
    BathSpec medium = make_geometric_bath(0.5, 9, 2.0);
    EXPECT_THROW(dense_channel_oracle(identity_block_unitary(medium), medium, DensityMatrix::plus01()),
                 ResourceError);
}

#include "thermogap/bath.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace thermogap {

namespace {

constexpr double kSectorGuard = 1e7;
constexpr int64_t kDenseGuard = 2000;

BathSpec finish_bath(double q, std::vector<int64_t> degeneracies, std::string scheme) {
    require_temperature(q);
    if (degeneracies.size() < 2) {
        throw DomainError("bath needs at least two levels");
    }
    for (size_t n = 0; n < degeneracies.size(); n++) {
        if (degeneracies[n] <= 0) {
            throw DomainError("bath degeneracies must be positive");
        }
        if (n > 0 && degeneracies[n] < degeneracies[n - 1]) {
            throw DomainError("bath degeneracies must be non-decreasing in energy");
        }
    }
    BathSpec bath;
    bath.q = q;
    bath.max_level = static_cast<int>(degeneracies.size()) - 1;
    bath.degeneracies = std::move(degeneracies);
    bath.scheme = std::move(scheme);
    double z = 0;
    for (int n = 0; n <= bath.max_level; n++) {
        z += static_cast<double>(bath.degeneracies[static_cast<size_t>(n)]) * std::pow(q, n);
    }
    bath.partition = z;
    for (int n = 0; n <= bath.max_level; n++) {
        bath.per_state_weight.push_back(std::pow(q, n) / z);
    }
    return bath;
}

MatrixXc haar_unitary(int64_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
    MatrixXc z(n, n);
    for (int64_t c = 0; c < n; c++) {
        for (int64_t r = 0; r < n; r++) {
            double re = normal(rng);
            double im = normal(rng);
            z(r, c) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<MatrixXc> qr(z);
    MatrixXc q = qr.householderQ();
    MatrixXc r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase freedom of QR so that the distribution is Haar.
    for (int64_t c = 0; c < n; c++) {
        Complex d = r(c, c);
        double mag = std::abs(d);
        q.col(c) *= mag > 0 ? d / mag : Complex(1.0);
    }
    return q;
}

std::mt19937_64 sector_rng(uint64_t seed, int k, uint32_t tag) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(k), tag};
    return std::mt19937_64(seq);
}

void require_sector_guard(const std::vector<SectorLayout> &layouts) {
    double total = 0;
    for (const auto &l : layouts) {
        total += static_cast<double>(l.dim) * static_cast<double>(l.dim);
    }
    if (total > kSectorGuard) {
        throw ResourceError("sum of squared sector dimensions " + std::to_string(total) +
                            " exceeds 1e7; use a smaller bath (lower K or base)");
    }
}

bool all_levels(const SectorLayout &l) {
    return l.present[0] && l.present[1] && l.present[2];
}

/// Sector with the point-(b) zero pattern: u00 = W P X, u02 = W [0; V],
/// u20 = Y [0 I] X, u11 = M, everything else zero.
MatrixXc pointb_sector(const SectorLayout &l, const MatrixXc &w, const MatrixXc &x,
                       const MatrixXc &v, const MatrixXc &y, const MatrixXc &m) {
    int64_t d0 = l.size[0];
    int64_t d2 = l.size[2];
    int64_t ones = d0 - d2;
    MatrixXc block = MatrixXc::Zero(l.dim, l.dim);
    MatrixXc p = MatrixXc::Zero(d0, d0);
    p.topLeftCorner(ones, ones).setIdentity();
    block.block(l.offset[0], l.offset[0], d0, d0) = w * p * x;
    MatrixXc lifted = MatrixXc::Zero(d0, d2);
    lifted.bottomRows(d2) = v;
    block.block(l.offset[0], l.offset[2], d0, d2) = w * lifted;
    block.block(l.offset[2], l.offset[0], d2, d0) = y * x.bottomRows(d2);
    block.block(l.offset[1], l.offset[1], l.size[1], l.size[1]) = m;
    return block;
}

}  // namespace

int64_t BathSpec::total_dimension() const {
    int64_t total = 0;
    for (auto d : degeneracies) {
        total += d;
    }
    return total;
}

BathSpec make_geometric_bath(double q, int max_level, double base) {
    if (max_level < 1) {
        throw DomainError("bath needs max_level >= 1");
    }
    if (!(base >= 1.0) || !std::isfinite(base)) {
        throw DomainError("geometric bath base must be >= 1");
    }
    std::vector<int64_t> d;
    for (int n = 0; n <= max_level; n++) {
        double v = std::pow(base, n);
        if (v > 1e15) {
            throw ResourceError("geometric degeneracy overflows");
        }
        d.push_back(std::llround(v));
    }
    char name[64];
    std::snprintf(name, sizeof(name), "geometric(%.17g)", base);
    return finish_bath(q, std::move(d), name);
}

BathSpec make_custom_bath(double q, std::vector<int64_t> degeneracies) {
    return finish_bath(q, std::move(degeneracies), "custom");
}

DeltaReport bath_delta_report(const BathSpec &bath) {
    int k_max = bath.max_level;
    if (k_max < 4) {
        throw DomainError("delta report needs K >= 4 so that R = {2..K-2} is nonempty");
    }
    double q = bath.q;
    DeltaReport rep;
    rep.positivity_margin = std::numeric_limits<double>::infinity();
    double covered = 0;
    for (int k = 2; k <= k_max - 2; k++) {
        rep.good_levels.push_back(k);
        double dk = static_cast<double>(bath.degeneracy(k));
        for (int m = 1; m <= 2; m++) {
            double ratio = static_cast<double>(bath.degeneracy(k - m)) / (dk * std::pow(q, m));
            rep.delta_ratio = std::max(rep.delta_ratio, std::abs(ratio - 1));
        }
        double diff = static_cast<double>(bath.degeneracy(k) - bath.degeneracy(k - 1) -
                                          bath.degeneracy(k - 2));
        rep.positivity_margin = std::min(rep.positivity_margin, diff / dk);
        covered += dk * bath.weight(k);
    }
    rep.delta_tail = 1 - covered;
    rep.positivity_bound = 1 - q - q * q - (q + q * q) * rep.delta_ratio;
    rep.positivity_flag = rep.positivity_bound <= 0;
    return rep;
}

std::vector<SectorLayout> sector_layouts(const BathSpec &bath) {
    std::vector<SectorLayout> out;
    for (int k = 0; k <= bath.max_level + 2; k++) {
        SectorLayout l;
        l.k = k;
        int64_t offset = 0;
        for (int j = 0; j < 3; j++) {
            int n = k - j;
            l.present[j] = n >= 0 && n <= bath.max_level;
            l.offset[j] = offset;
            l.size[j] = l.present[j] ? bath.degeneracy(n) : 0;
            offset += l.size[j];
        }
        l.dim = offset;
        out.push_back(l);
    }
    return out;
}

BlockUnitary::BlockUnitary(const BathSpec &bath, std::vector<MatrixXc> blocks, double tol)
    : layouts_(sector_layouts(bath)), blocks_(std::move(blocks)) {
    if (blocks_.size() != layouts_.size()) {
        throw DomainError("block unitary needs one block per sector k = 0..K+2");
    }
    for (size_t k = 0; k < blocks_.size(); k++) {
        const auto &b = blocks_[k];
        if (b.rows() != layouts_[k].dim || b.cols() != layouts_[k].dim) {
            throw DomainError("sector " + std::to_string(k) + " block has the wrong shape");
        }
        if (unitarity_residual(static_cast<int>(k)) > tol) {
            throw DomainError("sector " + std::to_string(k) + " block is not unitary");
        }
    }
}

bool BlockUnitary::has_block(int k, int i, int j) const {
    if (k < 0 || k >= num_sectors() || i < 0 || i > 2 || j < 0 || j > 2) {
        return false;
    }
    const auto &l = layout(k);
    return l.present[i] && l.present[j];
}

MatrixXc BlockUnitary::sub_block(int k, int i, int j) const {
    if (!has_block(k, i, j)) {
        throw std::out_of_range("sub-block not present in sector");
    }
    const auto &l = layout(k);
    return sector(k).block(l.offset[i], l.offset[j], l.size[i], l.size[j]);
}

double BlockUnitary::unitarity_residual(int k) const {
    const auto &b = sector(k);
    if (b.size() == 0) {
        return 0;
    }
    return (b.adjoint() * b - MatrixXc::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff();
}

double BlockUnitary::max_unitarity_residual() const {
    double worst = 0;
    for (int k = 0; k < num_sectors(); k++) {
        worst = std::max(worst, unitarity_residual(k));
    }
    return worst;
}

BlockUnitary identity_block_unitary(const BathSpec &bath) {
    std::vector<MatrixXc> blocks;
    for (const auto &l : sector_layouts(bath)) {
        blocks.push_back(MatrixXc::Identity(l.dim, l.dim));
    }
    return BlockUnitary(bath, std::move(blocks));
}

BlockUnitary random_block_unitary(const BathSpec &bath, uint64_t seed) {
    auto layouts = sector_layouts(bath);
    require_sector_guard(layouts);
    std::vector<MatrixXc> blocks;
    for (const auto &l : layouts) {
        auto rng = sector_rng(seed, l.k, 0);
        blocks.push_back(haar_unitary(l.dim, rng));
    }
    return BlockUnitary(bath, std::move(blocks));
}

BlockUnitary random_pointb_completion(const BathSpec &bath, uint64_t seed) {
    auto layouts = sector_layouts(bath);
    require_sector_guard(layouts);
    std::vector<MatrixXc> blocks;
    for (const auto &l : layouts) {
        auto rng = sector_rng(seed, l.k, 1);
        if (all_levels(l)) {
            MatrixXc w = haar_unitary(l.size[0], rng);
            MatrixXc x = haar_unitary(l.size[0], rng);
            MatrixXc v = haar_unitary(l.size[2], rng);
            MatrixXc y = haar_unitary(l.size[2], rng);
            MatrixXc m = haar_unitary(l.size[1], rng);
            blocks.push_back(pointb_sector(l, w, x, v, y, m));
            continue;
        }
        MatrixXc block = MatrixXc::Zero(l.dim, l.dim);
        for (int j = 0; j < 3; j++) {
            if (l.present[j]) {
                block.block(l.offset[j], l.offset[j], l.size[j], l.size[j]) =
                    haar_unitary(l.size[j], rng);
            }
        }
        blocks.push_back(block);
    }
    return BlockUnitary(bath, std::move(blocks));
}

BlockUnitary optimal_pointb_unitary(const BathSpec &bath) {
    std::vector<MatrixXc> blocks;
    for (const auto &l : sector_layouts(bath)) {
        if (!all_levels(l)) {
            blocks.push_back(MatrixXc::Identity(l.dim, l.dim));
            continue;
        }
        if (l.size[0] < l.size[2]) {
            throw DomainError("optimal point-(b) unitary needs d_k >= d_{k-2}");
        }
        auto id = [](int64_t n) { return MatrixXc::Identity(n, n); };
        blocks.push_back(
            pointb_sector(l, id(l.size[0]), id(l.size[0]), id(l.size[2]), id(l.size[2]), id(l.size[1])));
    }
    return BlockUnitary(bath, std::move(blocks));
}

UVector make_uvector(const BlockUnitary &u, const BathSpec &bath, int i, int j) {
    UVector vec;
    vec.i = i;
    vec.j = j;
    for (int k = 0; k < u.num_sectors(); k++) {
        if (u.has_block(k, i, j)) {
            vec.entries.emplace_back(k, std::sqrt(bath.weight(k - j)) * u.sub_block(k, i, j));
        }
    }
    return vec;
}

Complex uvector_inner(const BlockUnitary &u, const BathSpec &bath, std::pair<int, int> ij,
                      std::pair<int, int> ij_prime) {
    auto [i, j] = ij;
    auto [ip, jp] = ij_prime;
    if (i - ip != j - jp) {
        throw std::invalid_argument("inner product needs matching modes i - i' = j - j'");
    }
    Complex total = 0;
    for (int k = 0; k < u.num_sectors(); k++) {
        int kp = k - j + jp;
        if (!u.has_block(k, i, j) || !u.has_block(kp, ip, jp)) {
            continue;
        }
        const auto &lk = u.layout(k);
        const auto &lkp = u.layout(kp);
        auto a = u.sector(kp).block(lkp.offset[ip], lkp.offset[jp], lkp.size[ip], lkp.size[jp]);
        auto b = u.sector(k).block(lk.offset[i], lk.offset[j], lk.size[i], lk.size[j]);
        total += bath.weight(k - j) * (a.conjugate().cwiseProduct(b)).sum();
    }
    return total;
}

TransitionMatrix transition_from_unitary(const BlockUnitary &u, const BathSpec &bath) {
    Matrix3r g;
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            g(i, j) = uvector_inner(u, bath, {i, j}, {i, j}).real();
        }
    }
    return TransitionMatrix(g, kChannelTol);
}

Matrix3c channel_from_unitary(const BlockUnitary &u, const BathSpec &bath, const DensityMatrix &rho) {
    Matrix3c out = Matrix3c::Zero();
    for (int i = 0; i < 3; i++) {
        for (int ip = 0; ip < 3; ip++) {
            for (int j = 0; j < 3; j++) {
                int jp = j - (i - ip);
                if (jp < 0 || jp > 2 || rho(j, jp) == Complex(0)) {
                    continue;
                }
                out(i, ip) += rho(j, jp) * uvector_inner(u, bath, {i, j}, {ip, jp});
            }
        }
    }
    return out;
}

double coherence_from_unitary(const BlockUnitary &u, const BathSpec &bath, const DensityMatrix &rho0) {
    return std::abs(channel_from_unitary(u, bath, rho0)(1, 0));
}

BlockUnitary svd_normal_form(const BlockUnitary &u, const BathSpec &bath) {
    std::vector<MatrixXc> blocks;
    for (int k = 0; k < u.num_sectors(); k++) {
        const auto &l = u.layout(k);
        std::array<MatrixXc, 3> left;
        std::array<MatrixXc, 3> right;
        for (int j = 0; j < 3; j++) {
            if (!l.present[j]) {
                continue;
            }
            Eigen::JacobiSVD<MatrixXc> svd(u.sub_block(k, j, j), Eigen::ComputeFullU | Eigen::ComputeFullV);
            left[j] = svd.matrixU();
            right[j] = svd.matrixV();
        }
        MatrixXc block = MatrixXc::Zero(l.dim, l.dim);
        for (int i = 0; i < 3; i++) {
            for (int j = 0; j < 3; j++) {
                if (l.present[i] && l.present[j]) {
                    block.block(l.offset[i], l.offset[j], l.size[i], l.size[j]) =
                        left[i].adjoint() * u.sub_block(k, i, j) * right[j];
                }
            }
        }
        blocks.push_back(std::move(block));
    }
    return BlockUnitary(bath, std::move(blocks));
}

bool verify_sigma_pattern(const BlockUnitary &u, const BathSpec &bath) {
    constexpr double zero_tol = 1e-10;
    constexpr double sigma_tol = 1e-8;
    for (int k = 2; k <= bath.max_level; k++) {
        for (auto [i, j] : {std::pair{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 2}}) {
            if (u.sub_block(k, i, j).cwiseAbs().maxCoeff() > zero_tol) {
                throw StructureError("sector " + std::to_string(k) + " lacks the point-(b) zero pattern (u" +
                                     std::to_string(i) + std::to_string(j) + " != 0)");
            }
        }
    }
    for (int k = 2; k <= bath.max_level; k++) {
        Eigen::JacobiSVD<MatrixXc> svd(u.sub_block(k, 0, 0));
        Eigen::VectorXd sigma = svd.singularValues();
        int64_t ones = bath.degeneracy(k) - bath.degeneracy(k - 2);
        for (int64_t s = 0; s < sigma.size(); s++) {
            double target = s < ones ? 1.0 : 0.0;
            if (std::abs(sigma[s] - target) > sigma_tol) {
                return false;
            }
        }
    }
    return true;
}

DensityMatrix dense_channel_oracle(const BlockUnitary &u, const BathSpec &bath, const DensityMatrix &rho) {
    int64_t bath_dim = bath.total_dimension();
    int64_t n = 3 * bath_dim;
    if (n > kDenseGuard) {
        throw ResourceError("dense oracle needs 3 sum d_n <= 2000, got " + std::to_string(n));
    }
    std::vector<int64_t> level_offset(static_cast<size_t>(bath.max_level) + 1, 0);
    for (int m = 1; m <= bath.max_level; m++) {
        level_offset[static_cast<size_t>(m)] = level_offset[static_cast<size_t>(m) - 1] + bath.degeneracy(m - 1);
    }
    auto joint = [&](int level, int bath_level) {
        return level * bath_dim + level_offset[static_cast<size_t>(bath_level)];
    };

    MatrixXc full = MatrixXc::Zero(n, n);
    for (int k = 0; k < u.num_sectors(); k++) {
        const auto &l = u.layout(k);
        for (int i = 0; i < 3; i++) {
            for (int j = 0; j < 3; j++) {
                if (l.present[i] && l.present[j]) {
                    full.block(joint(i, k - i), joint(j, k - j), l.size[i], l.size[j]) = u.sub_block(k, i, j);
                }
            }
        }
    }

    MatrixXc input = MatrixXc::Zero(n, n);
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            for (int m = 0; m <= bath.max_level; m++) {
                for (int64_t s = 0; s < bath.degeneracy(m); s++) {
                    input(joint(i, m) + s, joint(j, m) + s) = rho(i, j) * bath.weight(m);
                }
            }
        }
    }

    MatrixXc evolved = full * input * full.adjoint();
    Matrix3c out = Matrix3c::Zero();
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            for (int64_t b = 0; b < bath_dim; b++) {
                out(i, j) += evolved(i * bath_dim + b, j * bath_dim + b);
            }
        }
    }
    return DensityMatrix(out);
}

PointbCounting pointb_counting(const BathSpec &bath) {
    int k_max = bath.max_level;
    auto dg = [&](int n) { return static_cast<double>(bath.degeneracy(n)) * bath.weight(n); };
    double g00 = 0;
    for (int k = 0; k <= k_max; k++) {
        double ones = static_cast<double>(bath.degeneracy(k) - bath.degeneracy(k - 2));
        g00 += bath.weight(k) * ones;
    }
    double g11 = 0;
    for (int m = 0; m <= k_max; m++) {
        g11 += dg(m);
    }
    double g02 = 0;
    for (int m = 0; m <= k_max - 2; m++) {
        g02 += dg(m);
    }
    double g22 = dg(k_max - 1) + dg(k_max);
    PointbCounting out;
    out.transition << g00, 0, g02, 0, g11, 0, 1 - g00, 0, g22;
    // Tr(M00^k) = Tr(M00^k M11^{k+1}) counts the unit singular values of M00^k.
    out.coherence = 0.5 * g00;
    return out;
}

}  // namespace thermogap

#ifndef THERMOGAP_BATH_H
#define THERMOGAP_BATH_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "thermogap/core.h"

namespace thermogap {

using MatrixXc = Eigen::MatrixXcd;

/// Truncated ladder bath H_R = sum_n n Pi_n, n = 0..K, with degeneracy d_n.
struct BathSpec {
    double q = 0;
    int max_level = 0;
    std::vector<int64_t> degeneracies;
    /// Gibbs weight of a single state on level n: q^n / Z_R.
    std::vector<double> per_state_weight;
    double partition = 0;
    std::string scheme;

    int64_t degeneracy(int n) const {
        return n < 0 || n > max_level ? 0 : degeneracies[static_cast<size_t>(n)];
    }
    double weight(int n) const {
        return n < 0 || n > max_level ? 0.0 : per_state_weight[static_cast<size_t>(n)];
    }
    /// sum_n d_n
    int64_t total_dimension() const;
};

/// d_n = round(base^n) for n = 0..max_level.
BathSpec make_geometric_bath(double q, int max_level, double base);
/// Throws DomainError if the degeneracies are not positive and non-decreasing.
BathSpec make_custom_bath(double q, std::vector<int64_t> degeneracies);

/// How far a finite bath is from the idealized large-bath assumptions, on the
/// level set R = {2, ..., K - 2}.
struct DeltaReport {
    std::vector<int> good_levels;
    /// max over k in R, m in {1, 2} of |d_{k-m} / (d_k q^m) - 1|
    double delta_ratio = 0;
    /// 1 - sum_{k in R} d_k gamma_k
    double delta_tail = 0;
    /// min over k in R of (d_k - d_{k-1} - d_{k-2}) / d_k
    double positivity_margin = 0;
    /// 1 - q - q^2 - (q + q^2) delta_ratio
    double positivity_bound = 0;
    /// Set when positivity_bound <= 0: the perturbed-gap argument gives no guarantee.
    bool positivity_flag = false;
};

/// Throws DomainError for K < 4.
DeltaReport bath_delta_report(const BathSpec &bath);

/// Joint-energy sector k: system level j pairs with bath level k - j when 0 <= k - j <= K.
/// Basis order inside the sector is system-major (level 0 block first).
struct SectorLayout {
    int k = 0;
    std::array<bool, 3> present{};
    std::array<int64_t, 3> offset{};
    std::array<int64_t, 3> size{};
    int64_t dim = 0;
};

std::vector<SectorLayout> sector_layouts(const BathSpec &bath);

/// Energy-preserving joint unitary U = direct sum over k = 0..K+2 of U(k).
class BlockUnitary {
   public:
    /// Throws DomainError on a shape mismatch or if a block is not unitary within tol.
    BlockUnitary(const BathSpec &bath, std::vector<MatrixXc> blocks, double tol = kChannelTol);

    int num_sectors() const {
        return static_cast<int>(blocks_.size());
    }
    const SectorLayout &layout(int k) const {
        return layouts_.at(static_cast<size_t>(k));
    }
    const MatrixXc &sector(int k) const {
        return blocks_.at(static_cast<size_t>(k));
    }
    bool has_block(int k, int i, int j) const;
    /// u_ij^k, of size d_{k-i} x d_{k-j}.
    MatrixXc sub_block(int k, int i, int j) const;
    /// max |U(k)^dagger U(k) - I| entry.
    double unitarity_residual(int k) const;
    double max_unitarity_residual() const;

   private:
    std::vector<SectorLayout> layouts_;
    std::vector<MatrixXc> blocks_;
};

/// Vector (sqrt(gamma_{k-j}) u_ij^k)_k, keyed by sector.
struct UVector {
    int i = 0;
    int j = 0;
    std::vector<std::pair<int, MatrixXc>> entries;
};

BlockUnitary identity_block_unitary(const BathSpec &bath);

/// Independent Haar unitary per sector, deterministic in seed.
/// Throws ResourceError if sum_k dim(k)^2 exceeds 1e7.
BlockUnitary random_block_unitary(const BathSpec &bath, uint64_t seed);

/// Random unitary with the zero pattern of the point-(b) optimum:
/// u01 = u10 = u12 = u21 = u22 = 0 in every sector holding all three levels,
/// block-diagonal by system level elsewhere.
BlockUnitary random_pointb_completion(const BathSpec &bath, uint64_t seed);

/// Structured optimum for the point-(b) transition matrix:
/// M11 = I, M00 = diag(1 x (d_k - d_{k-2}), 0 x d_{k-2}), and u02 / u20 route the
/// remaining d_{k-2} states between system levels 0 and 2. Sectors above K keep
/// their levels 1 and 2 separately (identity).
BlockUnitary optimal_pointb_unitary(const BathSpec &bath);

UVector make_uvector(const BlockUnitary &u, const BathSpec &bath, int i, int j);

/// (U_{i'j'}, U_ij) = <i| E(|j><j'|) |i'>. Throws std::invalid_argument unless i - i' = j - j'.
Complex uvector_inner(const BlockUnitary &u, const BathSpec &bath, std::pair<int, int> ij,
                      std::pair<int, int> ij_prime);

/// G_ij = (U_ij, U_ij). Column sums are exact; Gibbs preservation holds up to
/// truncation, see TransitionMatrix::gibbs_residual.
TransitionMatrix transition_from_unitary(const BlockUnitary &u, const BathSpec &bath);

/// Channel output assembled entrywise from inner products.
Matrix3c channel_from_unitary(const BlockUnitary &u, const BathSpec &bath, const DensityMatrix &rho);

/// |<1| E(rho0) |0>|; equals |(U00, U11)| / 2 for the reference input state.
double coherence_from_unitary(const BlockUnitary &u, const BathSpec &bath,
                              const DensityMatrix &rho0 = DensityMatrix::plus01());

/// A^dagger U B with A, B block-diagonal unitaries from the SVDs of the main
/// blocks u_jj^k. Main blocks become diagonal, non-negative and non-increasing.
BlockUnitary svd_normal_form(const BlockUnitary &u, const BathSpec &bath);

/// True iff, in every sector 2 <= k <= K, u00^k has exactly d_k - d_{k-2} unit
/// singular values and d_{k-2} zero ones (within 1e-8).
/// Throws StructureError if the point-(b) zero pattern is absent.
bool verify_sigma_pattern(const BlockUnitary &u, const BathSpec &bath);

/// Tr_R[U (rho x gamma_R) U^dagger] by explicit embedding into the joint space.
/// Joint basis: system level ascending, then bath level, then degeneracy index.
/// Throws ResourceError if 3 sum_n d_n > 2000.
DensityMatrix dense_channel_oracle(const BlockUnitary &u, const BathSpec &bath,
                                   const DensityMatrix &rho);

/// Degeneracy arithmetic for optimal_pointb_unitary; no matrices are built.
struct PointbCounting {
    Matrix3r transition;
    double coherence = 0;
};

PointbCounting pointb_counting(const BathSpec &bath);

}  // namespace thermogap

#endif

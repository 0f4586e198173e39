#ifndef THERMOGAP_CORE_H
#define THERMOGAP_CORE_H

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace thermogap {

using Complex = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;
using Matrix3r = Eigen::Matrix3d;
using Vector3r = Eigen::Vector3d;

/// Tolerance for exact algebraic identities (normalization, Hermiticity, stochasticity).
inline constexpr double kAlgebraicTol = 1e-12;
/// Tolerance for channel-level checks.
inline constexpr double kChannelTol = 1e-10;

/// Input value outside the domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
/// Input lacks a structure the operation relies on (e.g. a required zero pattern).
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Dense computation would exceed its size guard.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Self-consistency check inside an algorithm failed.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Qutrit state with Hamiltonian diag(0, 1, 2) in units of the level spacing.
///
/// Construction validates Hermiticity, unit trace and positivity; every
/// instance is a valid density matrix.
class DensityMatrix {
   public:
    explicit DensityMatrix(const Matrix3c &entries);

    /// |psi><psi| for a (not necessarily normalized) vector.
    static DensityMatrix pure(const Eigen::Vector3cd &psi);
    /// The reference input state (|0> + |1>)/sqrt(2).
    static DensityMatrix plus01();

    const Matrix3c &matrix() const {
        return entries_;
    }
    Complex operator()(int i, int j) const {
        return entries_(i, j);
    }
    Vector3r populations() const;
    Vector3r eigenvalues() const;

   private:
    Matrix3c entries_;
};

/// Unnormalized Gibbs weights (1, q, q^2) with q = exp(-beta * omega).
class GibbsVector {
   public:
    explicit GibbsVector(double q);

    double q() const {
        return q_;
    }
    const Vector3r &weights() const {
        return weights_;
    }
    double partition() const {
        return weights_.sum();
    }
    Vector3r normalized() const {
        return weights_ / partition();
    }

   private:
    double q_;
    Vector3r weights_;
};

/// Column-stochastic 3x3 matrix, G(k', k) = p(k' | k).
class TransitionMatrix {
   public:
    /// Throws DomainError unless entries lie in [0, 1] and columns sum to 1 (within tol).
    explicit TransitionMatrix(const Matrix3r &entries, double tol = kAlgebraicTol);

    static TransitionMatrix identity();

    const Matrix3r &matrix() const {
        return entries_;
    }
    double operator()(int i, int j) const {
        return entries_(i, j);
    }
    /// max_i |(G gamma)_i - gamma_i| for the unnormalized Gibbs vector.
    double gibbs_residual(double q) const;
    bool is_gibbs_stochastic(double q, double tol = kAlgebraicTol) const {
        return gibbs_residual(q) <= tol;
    }

   private:
    Matrix3r entries_;
};

enum class ConeCase { case1, case2, case3, infeasible };

std::string to_string(ConeCase c);

/// One point of the EnTO cone projected onto (p0, p1, |rho10|).
struct ConeRecord {
    double q = 0;
    double p0 = 0;
    double p1 = 0;
    double rho10_max = 0;
    ConeCase case_id = ConeCase::infeasible;
    double g00_star = 0;
    double g11_star = 0;

    bool feasible() const {
        return case_id != ConeCase::infeasible;
    }
};

/// diag(1, q, q^2) / (1 + q + q^2). Throws DomainError unless 0 < q < 1.
DensityMatrix make_gibbs_state(double q);

/// Coherence modes indexed by m + 2 for m = i - j in {-2, ..., 2}.
using ModeDecomposition = std::array<Matrix3c, 5>;

ModeDecomposition mode_decompose(const DensityMatrix &rho);
inline const Matrix3c &mode(const ModeDecomposition &modes, int m) {
    return modes.at(static_cast<size_t>(m + 2));
}

struct PhaseNormalForm {
    DensityMatrix rho;
    double phi1 = 0;
    double phi2 = 0;
};

/// Rotates rho by the covariant unitary diag(e^{-i phi1}, 1, e^{i phi2}) so
/// that rho10 and rho21 become real and non-negative.
///
/// Requires |rho20| <= 1e-10; otherwise throws StructureError.
PhaseNormalForm phase_normal_form(const DensityMatrix &rho);

/// Upper bound on |rho'_ij| for rho' = E(rho0), E any EnTO with population dynamics G:
///   sum over (c, d) with c - d = i - j of |rho0_cd| sqrt(G_ic G_jd).
double coherence_bound(const DensityMatrix &rho0, const TransitionMatrix &g, int i, int j);

/// exp(-i H t) rho exp(i H t) with H = diag(0, 1, 2).
DensityMatrix time_translate(const DensityMatrix &rho, double t);

/// Ginibre-distributed random state W W^dagger / Tr(W W^dagger), deterministic in seed.
DensityMatrix random_density_matrix(uint64_t seed);

/// Checks 0 < q < 1, throwing DomainError otherwise.
void require_temperature(double q);

}  // namespace thermogap

#endif

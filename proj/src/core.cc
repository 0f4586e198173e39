#include "thermogap/core.h"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace thermogap {

DensityMatrix::DensityMatrix(const Matrix3c &entries) : entries_(entries) {
    if (!entries_.allFinite()) {
        throw DomainError("density matrix has non-finite entries");
    }
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kAlgebraicTol) {
        throw DomainError("density matrix is not Hermitian");
    }
    if (std::abs(entries_.trace() - Complex(1.0)) > kAlgebraicTol) {
        throw DomainError("density matrix does not have unit trace");
    }
    if (eigenvalues().minCoeff() < -kAlgebraicTol) {
        throw DomainError("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const Eigen::Vector3cd &psi) {
    double norm = psi.norm();
    if (norm == 0) {
        throw DomainError("cannot build a pure state from the zero vector");
    }
    Eigen::Vector3cd v = psi / norm;
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::plus01() {
    return pure(Eigen::Vector3cd(1, 1, 0));
}

Vector3r DensityMatrix::populations() const {
    return entries_.diagonal().real();
}

Vector3r DensityMatrix::eigenvalues() const {
    // Hermitian part only; validation already bounds the anti-Hermitian residue.
    Matrix3c h = 0.5 * (entries_ + entries_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix3c> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

GibbsVector::GibbsVector(double q) : q_(q) {
    require_temperature(q);
    weights_ << 1.0, q, q * q;
}

TransitionMatrix::TransitionMatrix(const Matrix3r &entries, double tol) : entries_(entries) {
    if (!entries_.allFinite()) {
        throw DomainError("transition matrix has non-finite entries");
    }
    if (entries_.minCoeff() < -tol || entries_.maxCoeff() > 1.0 + tol) {
        throw DomainError("transition matrix entry outside [0, 1]");
    }
    Eigen::RowVector3d sums = entries_.colwise().sum();
    if ((sums.array() - 1.0).abs().maxCoeff() > tol) {
        throw DomainError("transition matrix column does not sum to 1");
    }
}

TransitionMatrix TransitionMatrix::identity() {
    return TransitionMatrix(Matrix3r::Identity());
}

double TransitionMatrix::gibbs_residual(double q) const {
    Vector3r gamma(1.0, q, q * q);
    return (entries_ * gamma - gamma).cwiseAbs().maxCoeff();
}

std::string to_string(ConeCase c) {
    switch (c) {
        case ConeCase::case1:
            return "case1";
        case ConeCase::case2:
            return "case2";
        case ConeCase::case3:
            return "case3";
        case ConeCase::infeasible:
            return "infeasible";
    }
    return "unknown";
}

void require_temperature(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw DomainError("q = exp(-beta omega) must lie in (0, 1), got " + std::to_string(q));
    }
}

DensityMatrix make_gibbs_state(double q) {
    GibbsVector gibbs(q);
    Matrix3c rho = Matrix3c::Zero();
    rho.diagonal() = gibbs.normalized().cast<Complex>();
    return DensityMatrix(rho);
}

DensityMatrix random_density_matrix(uint64_t seed) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), 0x5eedu};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix3c w;
    for (int c = 0; c < 3; c++) {
        for (int r = 0; r < 3; r++) {
            double re = normal(rng);
            double im = normal(rng);
            w(r, c) = Complex(re, im);
        }
    }
    Matrix3c rho = w * w.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(rho);
}

ModeDecomposition mode_decompose(const DensityMatrix &rho) {
    ModeDecomposition modes;
    for (auto &m : modes) {
        m.setZero();
    }
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            modes[static_cast<size_t>(i - j + 2)](i, j) = rho(i, j);
        }
    }
    return modes;
}

PhaseNormalForm phase_normal_form(const DensityMatrix &rho) {
    if (std::abs(rho(2, 0)) > 1e-10) {
        throw StructureError("phase normal form requires rho20 = 0");
    }
    double phi1 = std::abs(rho(1, 0)) > 0 ? -std::arg(rho(1, 0)) : 0.0;
    double phi2 = std::abs(rho(2, 1)) > 0 ? -std::arg(rho(2, 1)) : 0.0;
    Eigen::Vector3cd diag(std::polar(1.0, -phi1), 1.0, std::polar(1.0, phi2));
    Matrix3c out = diag.asDiagonal() * rho.matrix() * diag.conjugate().asDiagonal();
    // Remove the rounding residue of the phase rotation from the entries made real.
    out(1, 0) = std::abs(rho(1, 0));
    out(0, 1) = out(1, 0);
    out(2, 1) = std::abs(rho(2, 1));
    out(1, 2) = out(2, 1);
    return {DensityMatrix(out), phi1, phi2};
}

double coherence_bound(const DensityMatrix &rho0, const TransitionMatrix &g, int i, int j) {
    if (i < 0 || i > 2 || j < 0 || j > 2) {
        throw std::invalid_argument("level index out of range");
    }
    if (i == j) {
        throw std::invalid_argument("coherence bound needs distinct levels i != j");
    }
    double total = 0;
    for (int c = 0; c < 3; c++) {
        int d = c - (i - j);
        if (d < 0 || d > 2) {
            continue;
        }
        total += std::abs(rho0(c, d)) * std::sqrt(g(i, c) * g(j, d));
    }
    return total;
}

DensityMatrix time_translate(const DensityMatrix &rho, double t) {
    Matrix3c out = rho.matrix();
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            if (i != j) {
                out(i, j) *= std::polar(1.0, -(i - j) * t);
            }
        }
    }
    return DensityMatrix(out);
}

}  // namespace thermogap

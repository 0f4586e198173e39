#include "thermogap/ento.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace thermogap {

namespace {

void require_population(double q, double p0, double p1) {
    require_temperature(q);
    if (!(p0 >= 0.0 && p1 >= 0.0 && p0 + p1 <= 1.0 + kAlgebraicTol)) {
        throw DomainError("output populations must satisfy p0, p1 >= 0 and p0 + p1 <= 1");
    }
}

/// Entries of G as a function of (G00, G11); see EntryBounds.
Matrix3r reconstruct(double q, double p0, double p1, double x, double y) {
    double q2 = q * q;
    Matrix3r g;
    g(0, 0) = x;
    g(0, 1) = 2 * p0 - x;
    g(0, 2) = (1 - 2 * q * p0 - (1 - q) * x) / q2;
    g(1, 0) = 2 * p1 - y;
    g(1, 1) = y;
    g(1, 2) = (q - 2 * p1 + (1 - q) * y) / q2;
    for (int j = 0; j < 3; j++) {
        g(2, j) = 1 - g(0, j) - g(1, j);
    }
    return g;
}

/// Gibbs-ordered Lorenz curve: cumulative (weight, population) at each elbow, starting at (0, 0).
std::array<std::pair<double, double>, 4> lorenz_curve(const Vector3r &gibbs, const Vector3r &p) {
    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return p[a] / gibbs[a] > p[b] / gibbs[b]; });
    std::array<std::pair<double, double>, 4> curve{};
    for (size_t k = 0; k < 3; k++) {
        curve[k + 1] = {curve[k].first + gibbs[order[k]], curve[k].second + p[order[k]]};
    }
    return curve;
}

double evaluate_curve(const std::array<std::pair<double, double>, 4> &curve, double x) {
    for (size_t k = 1; k < curve.size(); k++) {
        auto [x0, y0] = curve[k - 1];
        auto [x1, y1] = curve[k];
        if (x <= x1 || k + 1 == curve.size()) {
            if (x1 <= x0) {
                return y1;
            }
            double t = std::clamp((x - x0) / (x1 - x0), 0.0, 1.0);
            return y0 + t * (y1 - y0);
        }
    }
    return curve.back().second;
}

}  // namespace

EntryBounds entry_bounds(double q, double p0, double p1) {
    require_population(q, p0, p1);
    double q2 = q * q;
    double r = 1 - q;
    EntryBounds b;
    b.g00_hi = std::min({2 * p0, 1.0, (1 - 2 * q * p0) / r});
    b.g00_lo = std::max({0.0, 2 * p0 - 1, (1 - 2 * q * p0 - q2) / r});
    b.g11_hi = std::min({2 * p1, 1.0, (q2 - q + 2 * p1) / r});
    b.g11_lo = std::max({0.0, 2 * p1 - 1, (2 * p1 - q) / r});
    b.diff_lo = std::max({-2 * p1, 2 * p0 - 1, (1 - 2 * (q * p0 + p1)) / r + q});
    b.diff_hi = std::min({1 - 2 * p1, 2 * p0, (1 + q - 2 * (q * p0 + p1)) / r});

    constexpr double tol = kAlgebraicTol;
    b.feasible = b.g00_lo <= b.g00_hi + tol && b.g11_lo <= b.g11_hi + tol &&
                 b.diff_lo <= b.diff_hi + tol && b.g00_lo - b.g11_hi <= b.diff_hi + tol &&
                 b.g00_hi - b.g11_lo >= b.diff_lo - tol;
    return b;
}

bool population_feasible(double q, double p0, double p1) {
    return entry_bounds(q, p0, p1).feasible;
}

double thermo_majorization_slack(double q, const Vector3r &p_in, const Vector3r &p_out) {
    Vector3r gibbs = GibbsVector(q).normalized();
    auto curve_in = lorenz_curve(gibbs, p_in);
    auto curve_out = lorenz_curve(gibbs, p_out);
    double slack = std::numeric_limits<double>::infinity();
    // The shared endpoint (1, 1) carries no information; only the two inner elbows count.
    for (size_t k = 1; k + 1 < curve_out.size(); k++) {
        auto [x, y] = curve_out[k];
        slack = std::min(slack, evaluate_curve(curve_in, x) - y);
    }
    return slack;
}

bool thermo_majorization_reachable(double q, const Vector3r &p_in, const Vector3r &p_out,
                                   double tol) {
    return thermo_majorization_slack(q, p_in, p_out) >= -tol;
}

std::vector<Vector3r> thermal_polytope_vertices(double q, const Vector3r &p_in) {
    Vector3r gibbs = GibbsVector(q).normalized();
    auto curve_in = lorenz_curve(gibbs, p_in);
    std::vector<Vector3r> vertices;
    std::array<int, 3> order{0, 1, 2};
    do {
        double x1 = gibbs[order[0]];
        double x2 = x1 + gibbs[order[1]];
        double y1 = evaluate_curve(curve_in, x1);
        double y2 = evaluate_curve(curve_in, x2);
        Vector3r v;
        v[order[0]] = y1;
        v[order[1]] = y2 - y1;
        v[order[2]] = 1 - y2;
        vertices.push_back(v);
    } while (std::next_permutation(order.begin(), order.end()));
    return vertices;
}

ConeRecord max_coherence_ento(double q, double p0, double p1) {
    EntryBounds b = entry_bounds(q, p0, p1);
    ConeRecord rec;
    rec.q = q;
    rec.p0 = p0;
    rec.p1 = p1;
    if (!b.feasible) {
        return rec;
    }
    constexpr double tol = kAlgebraicTol;
    double x = b.g00_hi;
    double y = b.g11_hi;
    double d = x - y;
    if (d >= b.diff_lo - tol && d <= b.diff_hi + tol) {
        rec.case_id = ConeCase::case1;
    } else if (d < b.diff_lo) {
        rec.case_id = ConeCase::case2;
        y = x - b.diff_lo;
    } else {
        rec.case_id = ConeCase::case3;
        x = y + b.diff_hi;
    }
    rec.g00_star = std::max(0.0, x);
    rec.g11_star = std::max(0.0, y);
    rec.rho10_max = 0.5 * std::sqrt(rec.g00_star * rec.g11_star);
    return rec;
}

double lp_oracle_max(double q, double p0, double p1, int grid_n) {
    if (grid_n < 2) {
        throw std::invalid_argument("oracle grid needs at least two points per axis");
    }
    EntryBounds b = entry_bounds(q, p0, p1);

    // Linear constraints on vec(G) (column-major, index i + 3 j):
    // G gamma = gamma, G p_in = p, column sums 1, G00 = x, G11 = y.
    Eigen::Matrix<double, 11, 9> a = Eigen::Matrix<double, 11, 9>::Zero();
    Vector3r gamma(1, q, q * q);
    Vector3r p_in(0.5, 0.5, 0);
    Vector3r p_out(p0, p1, 1 - p0 - p1);
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            a(i, i + 3 * j) = gamma[j];
            a(3 + i, i + 3 * j) = p_in[j];
            a(6 + j, i + 3 * j) = 1;
        }
    }
    a(9, 0) = 1;
    a(10, 4) = 1;
    auto qr = a.colPivHouseholderQr();
    auto solve = [&](double x, double y) {
        Eigen::Matrix<double, 11, 1> rhs;
        rhs << gamma, p_out, 1, 1, 1, x, y;
        Eigen::Matrix<double, 9, 1> sol = qr.solve(rhs);
        return sol;
    };
    // Every entry is affine in (x, y); recover the affine map from three solves.
    Eigen::Matrix<double, 9, 1> base = solve(0, 0);
    Eigen::Matrix<double, 9, 1> dx = solve(1, 0) - base;
    Eigen::Matrix<double, 9, 1> dy = solve(0, 1) - base;

    constexpr double tol = 1e-9;
    auto admissible = [&](double x, double y) {
        for (int e = 0; e < 9; e++) {
            double v = base[e] + dx[e] * x + dy[e] * y;
            if (v < -tol || v > 1 + tol) {
                return false;
            }
        }
        return true;
    };

    double x_lo = std::min(b.g00_lo, b.g00_hi);
    double y_lo = std::min(b.g11_lo, b.g11_hi);
    if (b.g00_lo > b.g00_hi + kAlgebraicTol || b.g11_lo > b.g11_hi + kAlgebraicTol) {
        return -1;
    }
    double best = -1;
    for (int ia = 0; ia < grid_n; ia++) {
        double x = x_lo + (b.g00_hi - x_lo) * ia / (grid_n - 1);
        // The objective grows with y at fixed x, so the first admissible point
        // from the top of the column is the column maximum.
        for (int ib = grid_n - 1; ib >= 0; ib--) {
            double y = y_lo + (b.g11_hi - y_lo) * ib / (grid_n - 1);
            if (admissible(x, y)) {
                best = std::max(best, 0.5 * std::sqrt(std::max(0.0, x) * std::max(0.0, y)));
                break;
            }
        }
    }
    return best;
}

TransitionMatrix transition_from_diagonal(double q, double p0, double p1, double g00, double g11) {
    require_population(q, p0, p1);
    Matrix3r g = reconstruct(q, p0, p1, g00, g11);
    if (g.minCoeff() < -kChannelTol || g.maxCoeff() > 1 + kChannelTol) {
        throw InternalError("reconstructed transition matrix leaves [0, 1]");
    }
    g = g.cwiseMax(0.0).cwiseMin(1.0);
    return TransitionMatrix(g, kChannelTol);
}

TransitionMatrix optimal_transition(double q, double p0, double p1) {
    ConeRecord rec = max_coherence_ento(q, p0, p1);
    if (!rec.feasible()) {
        throw DomainError("output populations are not reachable from (1/2, 1/2, 0)");
    }
    return transition_from_diagonal(q, p0, p1, rec.g00_star, rec.g11_star);
}

EntoChannel kraus_from_transition(const TransitionMatrix &g) {
    std::array<Matrix3c, 5> kraus;
    for (auto &k : kraus) {
        k.setZero();
    }
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            double v = g(i, j);
            if (v < -kAlgebraicTol) {
                throw DomainError("transition matrix has a negative entry");
            }
            kraus[static_cast<size_t>(i - j + 2)](i, j) = std::sqrt(std::max(0.0, v));
        }
    }
    return {kraus, g};
}

DensityMatrix apply_channel(const EntoChannel &channel, const DensityMatrix &rho) {
    Matrix3c out = Matrix3c::Zero();
    for (const auto &k : channel.kraus) {
        out += k * rho.matrix() * k.adjoint();
    }
    return DensityMatrix(out);
}

std::vector<ConeRecord> sweep_cone(double q, int grid) {
    require_temperature(q);
    if (grid < 2) {
        throw std::invalid_argument("cone sweep needs grid >= 2");
    }
    std::vector<ConeRecord> out;
    out.reserve(static_cast<size_t>(grid) * grid);
    double step = 1.0 / (grid - 1);
    for (int a = 0; a < grid; a++) {
        for (int b = 0; b < grid; b++) {
            double p0 = a * step;
            double p1 = b * step;
            if (a + b > grid - 1) {
                ConeRecord rec;
                rec.q = q;
                rec.p0 = p0;
                rec.p1 = p1;
                out.push_back(rec);
                continue;
            }
            out.push_back(max_coherence_ento(q, p0, p1));
        }
    }
    return out;
}

}  // namespace thermogap

#include <algorithm>
#include <cmath>

#include "lvamp/errors.hpp"
#include "lvamp/kernels.hpp"
#include "lvamp/lcp.hpp"
#include "lvamp/rand_matrix.hpp"

namespace lvamp {
namespace {

constexpr double kPivotEps = 1e-11;

// Lexicographic comparison of row a vs row b scaled by their pivot-column
// entries: returns true if row a is lexicographically smaller.
bool lex_smaller(const Matrix& t, std::size_t a, std::size_t b, double pa, double pb,
                 std::size_t n) {
    const std::size_t rhs = 2 * n + 1;
    const double d = t(a, rhs) / pa - t(b, rhs) / pb;
    if (std::fabs(d) > kPivotEps) return d < 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double e = t(a, j) / pa - t(b, j) / pb;
        if (std::fabs(e) > kPivotEps) return e < 0.0;
    }
    return a < b;  // final tie: lowest row index
}

void pivot(Matrix& t, std::size_t row, std::size_t col) {
    const std::size_t cols = t.cols();
    const double p = t(row, col);
    for (std::size_t j = 0; j < cols; ++j) t(row, j) /= p;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        if (i == row) continue;
        const double f = t(i, col);
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < cols; ++j) t(i, j) -= f * t(row, j);
    }
}

// Plain or damped Picard iteration for z = Sigma z_+ + r. Returns z and sets
// converged; precondition checks belong to the callers.
Vector picard(const Matrix& Sigma, const Vector& r, double alpha, std::size_t cap,
              bool& converged) {
    const std::size_t n = r.size();
    Vector z(n, 0.0), zp(n), az(n);
    converged = false;
    for (std::size_t it = 0; it < cap; ++it) {
        for (std::size_t i = 0; i < n; ++i) zp[i] = z[i] > 0.0 ? z[i] : 0.0;
        kernels::matvec(Sigma, zp.data(), az.data());
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double zn = (1.0 - alpha) * z[i] + alpha * (az[i] + r[i]);
            change = std::max(change, std::fabs(zn - z[i]));
            z[i] = zn;
        }
        if (!std::isfinite(change) || change > 1e8) return z;  // diverging
        if (change <= 1e-12) {
            converged = true;
            return z;
        }
    }
    return z;
}

Vector positive_part(const Vector& z) {
    Vector x(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) x[i] = z[i] > 0.0 ? z[i] : 0.0;
    return x;
}

}  // namespace

Vector lemke(const LCPInstance& inst) {
    const std::size_t n = inst.M.rows();
    if (!inst.M.square() || inst.q.size() != n)
        throw DimensionError("lemke: M must be square with matching q");
    if (!inst.M.all_finite()) throw DomainError("lemke: non-finite matrix entries");
    for (double v : inst.q)
        if (!std::isfinite(v)) throw DomainError("lemke: non-finite q entries");

    if (std::all_of(inst.q.begin(), inst.q.end(), [](double v) { return v >= 0.0; }))
        return Vector(n, 0.0);

    // Tableau for w - M z - z0*1 = q: columns [w | -M | -1 | q]; the w block
    // doubles as the lexicographic perturbation record.
    Matrix t(n, 2 * n + 2);
    for (std::size_t i = 0; i < n; ++i) {
        t(i, i) = 1.0;
        for (std::size_t j = 0; j < n; ++j) t(i, n + j) = -inst.M(i, j);
        t(i, 2 * n) = -1.0;
        t(i, 2 * n + 1) = inst.q[i];
    }
    std::vector<std::size_t> basis(n);
    for (std::size_t i = 0; i < n; ++i) basis[i] = i;  // w_i

    // Bring z0 in at the most negative q row.
    std::size_t row = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (t(i, 2 * n + 1) < t(row, 2 * n + 1)) row = i;
    std::size_t leaving = basis[row];
    basis[row] = 2 * n;
    pivot(t, row, 2 * n);

    const std::size_t max_pivots = 50 * n + 1000;
    for (std::size_t count = 0; count < max_pivots; ++count) {
        const std::size_t entering = leaving < n ? n + leaving : leaving - n;
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            const double p = t(i, entering);
            if (p <= kPivotEps) continue;
            if (!found || lex_smaller(t, i, row, p, t(row, entering), n)) {
                row = i;
                found = true;
            }
        }
        if (!found)
            throw NumericalError("lemke: ray termination, no solution found",
                                 static_cast<long>(count));
        leaving = basis[row];
        basis[row] = entering;
        pivot(t, row, entering);
        if (leaving == 2 * n) break;  // z0 left the basis: solution reached
        if (count + 1 == max_pivots)
            throw NumericalError("lemke: pivot limit exceeded", static_cast<long>(max_pivots));
    }

    Vector x(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        if (basis[i] >= n && basis[i] < 2 * n)
            x[basis[i] - n] = std::max(t(i, 2 * n + 1), 0.0);
    return x;
}

Vector contraction_solve(const Matrix& Sigma, const Vector& r) {
    const std::size_t n = Sigma.rows();
    if (!Sigma.square() || r.size() != n)
        throw DimensionError("contraction_solve: Sigma must be square with matching r");
    if (symmetrized_norm(Sigma) >= 1.0)
        throw DomainError("contraction_solve: contraction violated, gate norm of Sigma >= 1");
    bool converged = false;
    Vector z = picard(Sigma, r, 1.0, 100000, converged);
    if (!converged)
        throw NumericalError("contraction_solve: Picard iteration failed to converge", 100000);
    return z;
}

EquilibriumResult equilibrium(const Matrix& A, double kappa, const Vector& r) {
    const std::size_t n = A.rows();
    if (kappa <= 0.0) throw DomainError("equilibrium: kappa must be positive");
    if (!A.square() || r.size() != n)
        throw DimensionError("equilibrium: A must be square with matching r");

    EquilibriumResult res;
    const double gate_norm = symmetrized_norm(A);
    res.gate_passed = gate_norm / kappa < 1.0;
    if (!res.gate_passed) {
        res.x_star = Vector(n, 0.0);
        res.solver = "gate";
        return res;
    }

    Matrix Sigma(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) Sigma(i, j) = A(i, j) / kappa;

    bool converged = false;
    Vector z = picard(Sigma, r, 1.0, 20000, converged);
    res.solver = "contraction";
    if (!converged) {
        z = picard(Sigma, r, 0.3, 200000, converged);
        res.solver = "contraction-damped";
    }
    if (converged) {
        res.x_star = positive_part(z);
    } else {
        // Gated instances have positive-definite symmetric part, so I - Sigma
        // is a P-matrix and Lemke must terminate with the solution.
        LCPInstance inst;
        inst.M = Matrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inst.M(i, j) -= Sigma(i, j);
        inst.q.assign(r.size(), 0.0);
        for (std::size_t i = 0; i < n; ++i) inst.q[i] = -r[i];
        res.x_star = lemke(inst);
        res.solver = "lemke";
    }

    // KKT residuals of Eq. (19): y = r - (I - Sigma) x.
    Vector sx(n);
    kernels::matvec(Sigma, res.x_star.data(), sx.data());
    for (std::size_t i = 0; i < n; ++i) {
        const double y = r[i] - res.x_star[i] + sx[i];
        res.complementarity = std::max(res.complementarity, std::fabs(res.x_star[i] * y));
        res.feasibility = std::max(res.feasibility, y);
    }
    return res;
}

}  // namespace lvamp

#include <algorithm>
#include <cmath>
#include <vector>

#include "lvamp/errors.hpp"
#include "lvamp/kernels.hpp"
#include "lvamp/rand_matrix.hpp"
#include "lvamp/rng.hpp"

namespace lvamp {
namespace {

// Largest eigenvalue of a symmetric tridiagonal matrix by Sturm-sequence
// bisection.
double tridiag_max_eig(const std::vector<double>& alpha, const std::vector<double>& beta) {
    const std::size_t m = alpha.size();
    double lo = alpha[0], hi = alpha[0];
    for (std::size_t i = 0; i < m; ++i) {
        const double off = (i > 0 ? std::fabs(beta[i - 1]) : 0.0) +
                           (i + 1 < m ? std::fabs(beta[i]) : 0.0);
        lo = std::min(lo, alpha[i] - off);
        hi = std::max(hi, alpha[i] + off);
    }
    auto count_below = [&](double x) {
        // Number of eigenvalues < x via the Sturm sequence of T - xI.
        std::size_t count = 0;
        double d = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double b2 = i > 0 ? beta[i - 1] * beta[i - 1] : 0.0;
            d = alpha[i] - x - (d != 0.0 ? b2 / d : b2 / 1e-300);
            if (d < 0.0) ++count;
        }
        return count;
    };
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(mid) >= m)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

Matrix sample_goe(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw DimensionError("sample_goe: invalid dimension n = 0");
    const CounterRng rng(seed, rng_stream::kGoe);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v =
                (rng.normal(i * n + j) + rng.normal(j * n + i)) * inv_sqrt2;
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

Matrix sample_antisymmetric_goe(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw DimensionError("sample_antisymmetric_goe: invalid dimension n = 0");
    const CounterRng rng(seed, rng_stream::kAntisymmetricGoe);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v =
                (rng.normal(i * n + j) - rng.normal(j * n + i)) * inv_sqrt2;
            g(i, j) = v;
            g(j, i) = -v;
        }
    }
    return g;
}

Matrix sample_elliptic(std::size_t n, double rho, std::uint64_t seed) {
    if (n < 1) throw DimensionError("sample_elliptic: invalid dimension n = 0");
    if (!(rho >= -1.0 && rho <= 1.0))
        throw DomainError("sample_elliptic: invalid parameter rho outside [-1, 1]");
    const CounterRng sym(seed, rng_stream::kEllipticSymPart);
    const CounterRng asym(seed, rng_stream::kEllipticAsymPart);
    const double ws = std::sqrt((1.0 + rho) / 2.0);
    const double wa = std::sqrt((1.0 - rho) / 2.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = ws * std::sqrt(2.0) * sym.normal(i * n + i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double g = (sym.normal(i * n + j) + sym.normal(j * n + i)) * inv_sqrt2;
            const double gt = (asym.normal(i * n + j) - asym.normal(j * n + i)) * inv_sqrt2;
            m(i, j) = ws * g + wa * gt;
            m(j, i) = ws * g - wa * gt;
        }
    }
    return m;
}

Matrix sample_normalized_elliptic(std::size_t n, double rho, std::uint64_t seed) {
    Matrix m = sample_elliptic(n, rho, seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) *= scale;
    return m;
}

Matrix EllipticEnsemble::sample() const { return sample_elliptic(n, rho, seed); }
Matrix EllipticEnsemble::sample_normalized() const {
    return sample_normalized_elliptic(n, rho, seed);
}

double spectral_norm(const Matrix& a) {
    if (!a.square() || a.rows() == 0)
        throw DomainError("spectral_norm: invalid input, matrix must be square and non-empty");
    if (!a.all_finite())
        throw DomainError("spectral_norm: invalid input, non-finite entries");

    const std::size_t n = a.rows();
    double max_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) max_abs = std::max(max_abs, std::fabs(a(i, j)));
    if (max_abs == 0.0) return 0.0;

    // Lanczos on A^T A with full reorthogonalization.
    const std::size_t max_steps = std::min<std::size_t>(n, 600);
    std::vector<Vector> basis;
    std::vector<double> alpha, beta;
    Vector v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    Vector av(n), w(n);
    double lambda_prev = -1.0;

    for (std::size_t step = 0; step < max_steps; ++step) {
        basis.push_back(v);
        kernels::matvec(a, v.data(), av.data());
        kernels::matvec_transpose(a, av.data(), w.data());

        alpha.push_back(kernels::dot(w.data(), v.data(), n));
        // two Gram-Schmidt passes against the whole basis
        for (int pass = 0; pass < 2; ++pass)
            for (const Vector& b : basis) {
                const double c = kernels::dot(w.data(), b.data(), n);
                kernels::active().axpy(-c, b.data(), w.data(), n);
            }

        const double lambda = tridiag_max_eig(alpha, beta);
        const double b_norm = std::sqrt(kernels::dot(w.data(), w.data(), n));
        if (b_norm <= 1e-13 * max_abs * max_abs * n ||
            (lambda_prev >= 0.0 && std::fabs(lambda - lambda_prev) <= 1e-13 * std::fabs(lambda)))
            return std::sqrt(std::max(lambda, 0.0));
        lambda_prev = lambda;

        beta.push_back(b_norm);
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / b_norm;
    }
    if (max_steps == n)  // exhausted the full Krylov space: result is exact
        return std::sqrt(std::max(tridiag_max_eig(alpha, beta), 0.0));
    throw NumericalError("spectral_norm: Lanczos iteration failed to converge",
                         static_cast<long>(max_steps));
}

double symmetrized_norm(const Matrix& a) {
    if (!a.square() || a.rows() == 0)
        throw DomainError("symmetrized_norm: invalid input, matrix must be square");
    const std::size_t n = a.rows();
    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
    return spectral_norm(s);
}

}  // namespace lvamp

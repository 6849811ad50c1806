#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "lvamp/errors.hpp"
#include "lvamp/quadrature.hpp"

namespace lvamp {
namespace quad {
namespace {

// Eigenvalue count below x for the Jacobi matrix of the probabilists'
// Hermite polynomials (diagonal 0, off-diagonal sqrt(k)).
std::size_t hermite_count_below(std::size_t m, double x) {
    std::size_t count = 0;
    double d = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double b2 = static_cast<double>(k);  // beta_k^2 = k
        d = -x - (d != 0.0 ? b2 / d : b2 / 1e-300);
        if (d < 0.0) ++count;
    }
    return count;
}

HermiteRule build_rule(std::size_t m) {
    // Golub-Welsch via Sturm bisection: nodes are the Jacobi-matrix
    // eigenvalues, weight_i = 1 / sum_k p_k(x_i)^2 with p_k orthonormal.
    const double radius = 2.0 * std::sqrt(static_cast<double>(m)) + 2.0;
    HermiteRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double lo = -radius, hi = radius;
        // shrink to the interval holding exactly the i-th smallest eigenvalue
        for (int it = 0; it < 120; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (hermite_count_below(m, mid) <= i)
                lo = mid;
            else
                hi = mid;
        }
        const double x = 0.5 * (lo + hi);
        double pkm1 = 0.0, pk = 1.0, norm2 = 1.0;
        for (std::size_t k = 1; k < m; ++k) {
            const double pk1 =
                (x * pk - std::sqrt(static_cast<double>(k - 1)) * pkm1) /
                std::sqrt(static_cast<double>(k));
            pkm1 = pk;
            pk = pk1;
            norm2 += pk * pk;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 1.0 / norm2;
    }
    return rule;
}

double apply(const HermiteRule& rule, const std::function<double(double)>& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * g(rule.nodes[i]);
    return s;
}

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double fm, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    if (depth <= 0) throw NumericalError("adaptive_simpson: recursion depth exhausted");
    if (std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_step(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

// Nodes and weights of the 20-point Gauss-Legendre rule on [-1, 1], by
// Newton iteration on the Legendre recurrence.
struct LegendreRule {
    double nodes[20];
    double weights[20];

    LegendreRule() {
        const std::size_t m = 20;
        for (std::size_t i = 0; i < m; ++i) {
            double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                                (static_cast<double>(m) + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (std::size_t k = 2; k <= m; ++k) {
                    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = m * (x * p1 - p0) / (x * x - 1.0);
                const double step = p1 / dp;
                x -= step;
                if (std::fabs(step) < 1e-15) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

}  // namespace

const HermiteRule& gauss_hermite(std::size_t order) {
    if (order == 0) throw DomainError("gauss_hermite: order must be positive");
    static std::map<std::size_t, HermiteRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
    return it->second;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(a, fa, b, fb, fm);
    return adaptive_step(f, a, fa, b, fb, fm, whole, tol, 60);
}

double expect_normal(const std::function<double(double)>& g, double tol) {
    const double v64 = apply(gauss_hermite(64), g);
    const double v128 = apply(gauss_hermite(128), g);
    if (std::fabs(v128 - v64) <= 1e-9 * (1.0 + std::fabs(v128))) return v128;
    // Kinked integrand: Gauss-Hermite stalls, integrate g * phi directly.
    const auto integrand = [&](double x) {
        return g(x) * std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    };
    return adaptive_simpson(integrand, -12.0, 12.0, tol);
}

double expect_normal_split(const std::function<double(double)>& g,
                           const std::vector<double>& breakpoints) {
    static const LegendreRule rule;
    constexpr double kRange = 12.0;
    constexpr double kMaxPanel = 0.5;

    std::vector<double> cuts = {-kRange, kRange};
    for (double b : breakpoints)
        if (b > -kRange && b < kRange) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    double total = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double lo = cuts[c], hi = cuts[c + 1];
        const std::size_t panels =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / kMaxPanel)));
        const double width = (hi - lo) / static_cast<double>(panels);
        for (std::size_t p = 0; p < panels; ++p) {
            const double a = lo + width * static_cast<double>(p);
            const double mid = a + 0.5 * width, half = 0.5 * width;
            double s = 0.0;
            for (std::size_t i = 0; i < 20; ++i) {
                const double x = mid + half * rule.nodes[i];
                s += rule.weights[i] * g(x) * std::exp(-0.5 * x * x);
            }
            total += s * half * inv_sqrt2pi;
        }
    }
    return total;
}

}  // namespace quad
}  // namespace lvamp

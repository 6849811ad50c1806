#include <cmath>

#include "lvamp/density_evolution.hpp"
#include "lvamp/quadrature.hpp"

namespace lvamp {
namespace {

constexpr double kPsdTolerance = 1e-10;

void check_law(const InputLaw& law, std::size_t p) {
    if (law.atoms.empty()) throw DomainError("density_evolution: empty input law");
    double total = 0.0;
    for (const auto& a : law.atoms) {
        if (a.weight <= 0.0) throw DomainError("density_evolution: non-positive atom weight");
        if (a.b.size() != p)
            throw DimensionError("density_evolution: atom parameter count differs from fam.p");
        total += a.weight;
    }
    if (std::fabs(total - 1.0) > 1e-12)
        throw DomainError("density_evolution: law weights must sum to 1");
}

// Smallest eigenvalue of a small symmetric matrix by cyclic Jacobi sweeps.
double min_eigenvalue(Matrix s) {
    const std::size_t n = s.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
        if (off <= 1e-30) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(s(p, q)) < 1e-300) continue;
                const double theta = 0.5 * (s(q, q) - s(p, p)) / s(p, q);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double sip = s(i, p), siq = s(i, q);
                    s(i, p) = c * sip - sn * siq;
                    s(i, q) = sn * sip + c * siq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double spi = s(p, i), sqi = s(q, i);
                    s(p, i) = c * spi - sn * sqi;
                    s(q, i) = sn * spi + c * sqi;
                }
            }
    }
    double min_eig = s(0, 0);
    for (std::size_t i = 1; i < n; ++i) min_eig = std::min(min_eig, s(i, i));
    return min_eig;
}

// E[g(Z)] with Z ~ N(0, 1) when the kink locations of g are known; falls
// back to the Gauss-Hermite / adaptive path for smooth-or-unknown g.
double expect_with_kinks(const std::function<double(double)>& g, const std::vector<double>* kinks) {
    if (kinks == nullptr) return quad::expect_normal(g);
    return quad::expect_normal_split(g, *kinks);
}

// E[g(Z)] with Z ~ N(0, var); kinks (if known) are in the Z coordinate.
double expect_1d(const std::function<double(double)>& g, double var,
                 const std::vector<double>* kinks) {
    if (var <= 0.0) return g(0.0);
    const double sd = std::sqrt(var);
    std::vector<double> scaled;
    if (kinks != nullptr)
        for (double z : *kinks) scaled.push_back(z / sd);
    return expect_with_kinks([&](double z) { return g(sd * z); }, kinks ? &scaled : nullptr);
}

// E[g1(Z1) g2(Z2)] over the centered bivariate normal with the given 2x2
// covariance, through its Cholesky factor. The inner integral splits its
// panels at g2's kink, so its value is a smooth function of the outer
// variable; nesting two adaptive integrators here instead stalls on the
// micro-discontinuities the inner one leaves behind.
double expect_2d(const std::function<double(double)>& g1, const std::function<double(double)>& g2,
                 double s11, double s12, double s22, const std::vector<double>* kinks1,
                 const std::vector<double>* kinks2) {
    if (s11 <= 0.0) return g1(0.0) * expect_1d(g2, s22, kinks2);
    const double l11 = std::sqrt(s11);
    const double l21 = s12 / l11;
    const double l22sq = s22 - l21 * l21;
    std::vector<double> outer;
    if (kinks1 != nullptr)
        for (double z : *kinks1) outer.push_back(z / l11);
    const std::vector<double>* outer_ptr = kinks1 ? &outer : nullptr;
    if (l22sq <= 1e-14 * std::max(s22, 1.0)) {  // rank-1 marginal: Z2 = l21 W1
        if (kinks2 != nullptr && l21 != 0.0)
            for (double z : *kinks2) outer.push_back(z / l21);
        return expect_with_kinks([&](double w1) { return g1(l11 * w1) * g2(l21 * w1); },
                                 (kinks1 || kinks2) ? &outer : nullptr);
    }
    const double l22 = std::sqrt(l22sq);
    return expect_with_kinks(
        [&](double w1) {
            const double z1 = l11 * w1;
            const double mu = l21 * w1;
            const auto inner = [&](double w2) { return g2(mu + l22 * w2); };
            if (kinks2 == nullptr) return g1(z1) * quad::expect_normal(inner, 1e-11);
            std::vector<double> cuts;
            for (double z : *kinks2) cuts.push_back((z - mu) / l22);
            return g1(z1) * quad::expect_normal_split(inner, cuts);
        },
        outer_ptr);
}

}  // namespace

InputLaw lv_input_law(const GrowthLaw& law, double kappa, double delta) {
    if (kappa <= 0.0 || delta <= 0.0)
        throw DomainError("lv_input_law: kappa and delta must be positive");
    InputLaw out;
    for (const auto& atom : law.atoms())
        out.atoms.push_back({1.0, {kappa / delta * atom.value}, atom.weight});
    return out;
}

double DECovariance::sigma_sq(std::size_t k) const {
    if (k < 1 || k > order) throw DimensionError("DECovariance::sigma_sq: index out of range");
    return R(k - 1, k - 1);
}

DECovariance de_init(const ActivationFamily& fam, const InputLaw& law, std::string provenance) {
    check_law(law, fam.p);
    DECovariance cov;
    cov.order = 1;
    cov.R = Matrix(1, 1);
    double r11 = 0.0;
    for (const auto& a : law.atoms) {
        const double h = fam.h(0, a.u, a.b.data());
        r11 += a.weight * h * h;
    }
    cov.R(0, 0) = r11;
    cov.provenance = std::move(provenance);
    return cov;
}

DECovariance de_extend(const DECovariance& prev, const ActivationFamily& fam,
                       const InputLaw& law) {
    check_law(law, fam.p);
    if (prev.order == 0 || prev.R.rows() != prev.order || prev.R.cols() != prev.order)
        throw DimensionError("de_extend: malformed input covariance");
    if (de_min_eigenvalue(prev) < -kPsdTolerance)
        throw DomainError("de_extend: input covariance is not positive semidefinite");

    const std::size_t k = prev.order;
    DECovariance next;
    next.order = k + 1;
    next.provenance = prev.provenance;
    next.R = Matrix(k + 1, k + 1);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) next.R(i, j) = prev.R(i, j);  // exact nesting

    // New column (1-based index k+1): R_{i,k+1} = E[h_{i-1}(Z_{i-1}, b) h_k(Z_k, b)].
    for (std::size_t i = 1; i <= k + 1; ++i) {
        double entry = 0.0;
        for (const auto& a : law.atoms) {
            const double* b = a.b.data();
            const auto hk = [&](double z) { return fam.h(k, z, b); };
            std::vector<double> kink_i, kink_k;
            const std::vector<double>* kinks_i = nullptr;
            const std::vector<double>* kinks_k = nullptr;
            if (fam.kinks) {
                kink_i = fam.kinks(i - 1, b);
                kink_k = fam.kinks(k, b);
                kinks_i = &kink_i;
                kinks_k = &kink_k;
            }
            double value;
            if (i == 1) {
                // Z_0 = u-bar is atomic and independent of the Gaussian Z_k.
                value = fam.h(0, a.u, b) * expect_1d(hk, prev.R(k - 1, k - 1), kinks_k);
            } else if (i == k + 1) {
                value = expect_1d([&](double z) { return hk(z) * hk(z); },
                                  prev.R(k - 1, k - 1), kinks_k);
            } else {
                const auto hi = [&](double z) { return fam.h(i - 1, z, b); };
                value = expect_2d(hi, hk, prev.R(i - 2, i - 2), prev.R(i - 2, k - 1),
                                  prev.R(k - 1, k - 1), kinks_i, kinks_k);
            }
            entry += a.weight * value;
        }
        next.R(i - 1, k) = entry;
        next.R(k, i - 1) = entry;
    }
    return next;
}

double de_min_eigenvalue(const DECovariance& cov) {
    if (cov.order == 0) throw DimensionError("de_min_eigenvalue: empty covariance");
    return min_eigenvalue(cov.R);
}

ScalarDE de_scalar_lv(double delta, const GrowthLaw& a_law, std::size_t K) {
    if (delta <= 0.0) throw DomainError("de_scalar_lv: delta must be positive");
    ScalarDE de{delta, a_law, {}};
    de.theta.reserve(K);
    const double inv_d2 = 1.0 / (delta * delta);
    double theta_sq = inv_d2 * a_law.expect([](double a) {
        const double v = 1.0 + a;
        return v > 0.0 ? v * v : 0.0;
    });
    for (std::size_t k = 0; k < K; ++k) {
        if (k > 0) {
            // E(theta Z + a)_+^2 = theta^2 f(-a/theta), exact via f_aux.
            const double theta = de.theta.back();
            theta_sq =
                inv_d2 * theta * theta * a_law.expect([&](double a) { return f_aux(-a / theta); });
        }
        de.theta.push_back(std::sqrt(theta_sq));
    }
    return de;
}

std::vector<double> sigma_sequence(const std::vector<double>& theta, double delta, double kappa) {
    if (kappa <= 0.0) throw DomainError("sigma_sequence: kappa must be positive");
    std::vector<double> sigma(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) sigma[i] = delta / kappa * theta[i];
    return sigma;
}

}  // namespace lvamp

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "lvamp/errors.hpp"

namespace lvamp {

/// Family of per-iteration activations h_k(u, b_1..b_p) with the partial
/// derivative in the first argument. b points at the p parameter values of
/// one coordinate's row of B. kinks, when set, lists the u-locations where
/// h_k(., b) is not smooth; quadrature against Gaussian laws splits its
/// integration panels there instead of relying on an adaptive fallback.
struct ActivationFamily {
    std::string name;
    std::size_t p = 0;
    std::function<double(std::size_t k, double u, const double* b)> h;
    std::function<double(std::size_t k, double u, const double* b)> dh;
    std::function<std::vector<double>(std::size_t k, const double* b)> kinks;
};

/// h_k(u, b) = u for all k.
inline ActivationFamily identity_activation() {
    return {"identity", 0,
            [](std::size_t, double u, const double*) { return u; },
            [](std::size_t, double, const double*) { return 1.0; },
            {}};
}

/// h_k constant in u (derivative identically zero).
inline ActivationFamily constant_activation(double c) {
    return {"constant", 0,
            [c](std::size_t, double, const double*) { return c; },
            [](std::size_t, double, const double*) { return 0.0; },
            {}};
}

/// Lotka-Volterra activation h(u, a) = (u + a)_+ / delta with one parameter
/// column holding a. The derivative at the kink u + a = 0 is taken as 0.
inline ActivationFamily lv_activation(double delta) {
    if (delta <= 0.0) throw DomainError("lv_activation: delta must be positive");
    return {"lv", 1,
            [delta](std::size_t, double u, const double* b) {
                const double v = u + b[0];
                return v > 0.0 ? v / delta : 0.0;
            },
            [delta](std::size_t, double u, const double* b) {
                return u + b[0] > 0.0 ? 1.0 / delta : 0.0;
            },
            [](std::size_t, const double* b) { return std::vector<double>{-b[0]}; }};
}

}  // namespace lvamp

// Shared helpers for the test binaries: seeded random generators for
// Hermitian/PSD matrices and states, plus a few ubiquitous constants.

#pragma once

#include <cmath>
#include <random>

#include "hedgelab/linalg.hpp"

namespace hedgelab::testsupport {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// cos^2(pi/8) and sin^2(pi/8) in closed form, the two numbers nearly every
// suite below pins against.
inline const double kCos2Pi8 = (2.0 + std::sqrt(2.0)) / 4.0;
inline const double kSin2Pi8 = (2.0 - std::sqrt(2.0)) / 4.0;

inline Mat random_matrix(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cx(u(rng), u(rng));
    return m;
}

inline Mat random_hermitian(int n, std::mt19937_64& rng) {
    return random_matrix(n, rng).hermitized();
}

inline Mat random_psd(int n, std::mt19937_64& rng) {
    Mat g = random_matrix(n, rng);
    return (g * g.adjoint()).hermitized();
}

inline Vec random_state(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = cx(u(rng), u(rng));
    return v.normalized();
}

inline Vec ket(int value, int dim) {
    Vec v(dim);
    v[value] = 1.0;
    return v;
}

}  // namespace hedgelab::testsupport

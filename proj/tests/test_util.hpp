#ifndef FFSCALE_TEST_UTIL_HPP
#define FFSCALE_TEST_UTIL_HPP

#include <cstdint>

#include "ffscale/linalg.hpp"

namespace ffscale::test {

// splitmix64: platform-independent deterministic stream
inline double uniform(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform_pm(std::uint64_t& state) { return 2.0 * uniform(state) - 1.0; }

inline linalg::HermitianMatrix random_hermitian(int dim, std::uint64_t& state) {
    linalg::ComplexMatrix a(dim);
    for (int i = 0; i < dim; ++i) {
        a(i, i) = uniform_pm(state);
        for (int j = i + 1; j < dim; ++j) {
            const linalg::Complex v(uniform_pm(state), uniform_pm(state));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
    return linalg::HermitianMatrix(a);
}

inline double max_abs_diff(const linalg::ComplexMatrix& a, const linalg::ComplexMatrix& b) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

}  // namespace ffscale::test

#endif

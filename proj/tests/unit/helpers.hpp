#ifndef LOSMIMO_TEST_HELPERS_HPP
#define LOSMIMO_TEST_HELPERS_HPP

#include "losmimo/error.hpp"
#include "losmimo/matrix.hpp"

#include <doctest.h>

#include <random>

namespace losmimo::test {

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix a(rows, cols);
    for (auto &v : a.entries()) v = cplx(n(rng), n(rng));
    return a;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64 &rng) {
    const ComplexMatrix a = random_matrix(n, n, rng);
    ComplexMatrix h = a + a.adjoint();
    h *= 0.5;
    return h;
}

template <class F> Errc error_code_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("expected losmimo::Error");
    return Errc::InvalidArgument;
}

} // namespace losmimo::test

#endif

#pragma once

// Small seeded generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "gl3p/exact_arith.hpp"

namespace gen {

class Source {
public:
    explicit Source(std::uint64_t seed) : rng_(seed) {}

    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return range(0, 1) == 1; }

    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[static_cast<std::size_t>(range(0, static_cast<long>(xs.size()) - 1))];
    }

    gl3p::Rat rational(long num_bound = 9, long den_bound = 6) {
        gl3p::Rat r(range(-num_bound, num_bound), range(1, den_bound));
        r.canonicalize();
        return r;
    }

    gl3p::Rat nonzero_rational(long num_bound = 9, long den_bound = 6) {
        gl3p::Rat r;
        do r = rational(num_bound, den_bound);
        while (r == 0);
        return r;
    }

    gl3p::CycNumber cyclotomic(long n, long bound = 5) {
        long phi = gl3p::euler_phi(n);
        std::vector<gl3p::Rat> c;
        for (long i = 0; i < phi; ++i) c.push_back(rational(bound, 3));
        return gl3p::CycNumber(n, c);
    }

    gl3p::LaurentPoly laurent(long n, int terms = 3, int span = 2) {
        gl3p::LaurentPoly f;
        for (int i = 0; i < terms; ++i)
            f += gl3p::LaurentPoly::monomial(cyclotomic(n, 3), static_cast<int>(range(-span, span)),
                                             static_cast<int>(range(-span, span)));
        return f;
    }

    gl3p::LaurentPoly nonzero_laurent(long n, int terms = 3, int span = 2) {
        gl3p::LaurentPoly f;
        do f = laurent(n, terms, span);
        while (f.is_zero());
        return f;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline constexpr int kCases = 60;

}  // namespace gen

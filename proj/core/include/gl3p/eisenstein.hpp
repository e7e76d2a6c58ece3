#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gl3p/characters.hpp"
#include "gl3p/exact_arith.hpp"

namespace gl3p {

using IntMat2 = std::array<std::array<long, 2>, 2>;

// A finite-level Schwartz function on A_f^2: supported on Zhat^2 and
// invariant under M Zhat^2, so a function on (Z/M)^2.
class SchwartzData {
public:
    explicit SchwartzData(long modulus);
    static SchwartzData zero(long modulus) { return SchwartzData(modulus); }
    // ch(Zhat^2)
    static SchwartzData unit();
    // ch((a, b) + M Zhat^2)
    static SchwartzData point(long modulus, long a, long b, const CycNumber& value = 1);
    // ch((0, 1) + p^t Zhat^2)
    static SchwartzData tower(long p, int t);
    static SchwartzData from_support(long modulus,
                                     const std::vector<std::pair<std::pair<long, long>, CycNumber>>& support);

    long modulus() const { return m_; }
    // M = prod of prime powers
    const std::vector<std::pair<long, int>>& prime_powers() const { return factors_; }

    const CycNumber& at(long u, long v) const;
    void set(long u, long v, const CycNumber& value);
    bool is_zero() const;
    bool in_S0() const { return at(0, 0).is_zero(); }
    std::vector<std::pair<std::pair<long, long>, CycNumber>> support() const;

    // Same function read at a multiple of the modulus.
    SchwartzData lift(long new_modulus) const;
    // (g Phi)(x) = Phi(x g) for an integral matrix g.
    SchwartzData translate(const IntMat2& g) const;
    // Phi(lambda x) for lambda a unit mod M.
    SchwartzData scale(long lambda) const;

    SchwartzData& operator+=(const SchwartzData& o);
    SchwartzData& operator*=(const CycNumber& c);
    friend SchwartzData operator+(SchwartzData a, const SchwartzData& b) { return a += b; }
    friend SchwartzData operator*(const CycNumber& c, SchwartzData a) { return a *= c; }
    friend bool operator==(const SchwartzData& a, const SchwartzData& b);
    friend bool operator!=(const SchwartzData& a, const SchwartzData& b) { return !(a == b); }

private:
    long m_;
    std::vector<std::pair<long, int>> factors_;
    std::vector<CycNumber> values_;  // index u * M + v
};

// Fourier transform on (1/M)Z^2 / Z^2:
//   hat(Phi)(a/M, b/M) = M^{-2} sum_{u, v} Phi(u, v) e((a v - b u) / M).
// ch(Zhat^2) is self-dual.
CycNumber fourier_transform(const SchwartzData& phi, long a, long b);

// (1 / phi(M)) sum_a chi(a)^{-1} Phi(a x, a y): the restriction of chi-hat to
// Zhat^x is chi^{-1}.  The modulus is raised to lcm(M, mod chi).
SchwartzData r_chi_project(const SchwartzData& phi, const DirichletCharacter& chi);

// Coset representatives [[1, 0], [v p^t, 1 + w p^t]], v, w mod p.
std::vector<IntMat2> trace_cosets(long p, int t);

struct DistributionResult {
    bool ok = true;
    std::optional<std::pair<long, long>> witness;  // point of (Z/p^{t+1})^2
    CycNumber lhs, rhs;
};

// Sum over the cosets of the translated ch((0,1) + p^{t+1}) against ch((0,1) + p^t).
DistributionResult schwartz_distribution_check(long p, int t);
DistributionResult schwartz_distribution_check(long p, int t, const std::vector<IntMat2>& cosets);

// Weight j + 2 expansion in q_M = e^{2 pi i tau / M}: coeffs[n] multiplies q_M^n.
struct QExpansion {
    int weight = 2;
    long level = 1;
    std::vector<CycNumber> coeffs;

    int truncation() const { return static_cast<int>(coeffs.size()) - 1; }
    // Same series in q_{M'} for a multiple M' of the level.
    QExpansion relevel(long new_level) const;
    std::complex<double> evaluate(std::complex<double> tau) const;
    friend bool operator==(const QExpansion& a, const QExpansion& b);
    friend bool operator!=(const QExpansion& a, const QExpansion& b) { return !(a == b); }
};

// (j+1)! / (-2 pi i)^{j+2} sum' hat(Phi)(m, n) (m tau + n)^{-j-2}, summed over
// m outermost.  Coefficients, for n >= 1:
//   M^{-1} sum_{a d = n} d^{j+1} sum_v [Phi(d, v) e(a v / M) + (-1)^j Phi(-d, v) e(-a v / M)]
// and the constant term is -(-1)^j M^j / (j+2) sum_{x, v} Phi(-x, v) B_{j+2}(x / M).
// j = 0 needs Phi(0, 0) = 0, else the holomorphic series is not the limit.
QExpansion qexp_eisenstein(const SchwartzData& phi, int j, int trunc);

struct LatticeSum {
    std::complex<double> value;
    double tail_bound = 0;  // rows |m| > cutoff
};

// The same lattice sum evaluated directly: rows |a| <= cutoff, each row summed
// over b by explicit terms and Euler-Maclaurin tails.
LatticeSum lattice_sum_numeric(const SchwartzData& phi, int j, std::complex<double> tau, int cutoff);

// c^2 Phi - c^{-j} Phi(c^{-1} .) at the level of Schwartz data.
SchwartzData c_smooth_data(const SchwartzData& phi, long c, int j);
// Throws DomainError unless gcd(c, 6 M) = 1.
QExpansion c_smooth(const SchwartzData& phi, long c, int j, int trunc);
// lcm of the denominators of all power-basis coordinates.
Int coefficient_denominator(const QExpansion& q);

using EisensteinFamily = std::function<QExpansion(int j)>;

// j -> expansion of ch(Zhat^2).
EisensteinFamily level_one_family(int trunc);
// j -> p^{-t j} times the expansion of ch((0,1) + p^t Zhat^2); the factor is
// the p-power every coefficient carries from d = 0 mod p^t.
EisensteinFamily tower_family(long p, int t, int trunc);

// Whether coefficient n of the j and j' members agree modulo p^t in Z_(p)[zeta].
bool kummer_moment_check(const EisensteinFamily& family, long p, int t, int n, int j, int jp);
// First n in [1, n_max] where the congruence fails.
std::optional<int> kummer_witness(const EisensteinFamily& family, long p, int t, int n_max, int j, int jp);

}  // namespace gl3p

#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gl3p/numeric.hpp"

namespace gl3p {

using Int = mpz_class;
using Rat = mpq_class;

// Bad input: maps to exit code 1 in the CLI.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Input is meaningful but outside what the library handles.
class UnsupportedError : public DomainError {
public:
    using DomainError::DomainError;
};

// A self-check found a mismatch: exit code 2.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- small integer helpers -------------------------------------------------

long mod(long a, long m);
long powmod(long base, long exp, long m);
long inverse_mod(long a, long m);
bool is_prime(long n);
std::vector<std::pair<long, int>> factorize(long n);
long euler_phi(long n);
long ipow_long(long b, int e);
Int ipow(long b, int e);
Rat rpow(const Rat& x, int e);
Int factorial(int n);
Rat bernoulli(int n);  // B_1 = -1/2 convention

// p-adic valuation; throws on zero.
int valuation(const Int& x, long p);
int valuation(const Rat& x, long p);

Real to_real(const Rat& x);
Real to_real(const Int& x);
std::string to_string(const Rat& x);

// ---- p-adic numbers --------------------------------------------------------

// x = p^valuation * unit, unit known modulo p^precision.  Zero carries only an
// absolute precision (x == 0 mod p^absolute_precision).
class PadicNumber {
public:
    static PadicNumber from_rational(const Rat& x, long p, int relative_precision);
    static PadicNumber from_integer(const Int& x, long p, int relative_precision);
    static PadicNumber zero(long p, int absolute_precision);

    long prime() const { return p_; }
    bool is_zero() const { return zero_; }
    int valuation() const { return val_; }
    int precision() const { return zero_ ? 0 : prec_; }
    int absolute_precision() const { return zero_ ? val_ : val_ + prec_; }
    const Int& unit() const { return unit_; }

    // Representative of x mod p^k as an integer in [0, p^k); requires x integral.
    Int residue(int k) const;
    bool is_unit() const { return !zero_ && val_ == 0; }
    // Equality up to the weaker of the two precisions.
    bool congruent(const PadicNumber& o) const;
    bool congruent(const PadicNumber& o, int absolute_modulus) const;

    PadicNumber operator-() const;
    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }
    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
    PadicNumber pow(long e) const;
    PadicNumber inverse() const;

    std::string str() const;

private:
    PadicNumber(long p, int val, Int unit, int prec, bool zero)
        : p_(p), val_(val), unit_(std::move(unit)), prec_(prec), zero_(zero) {}
    static PadicNumber normalise(long p, int val, Int raw, int abs_prec);

    long p_ = 2;
    int val_ = 0;
    Int unit_;
    int prec_ = 0;
    bool zero_ = true;
};

// Teichmuller representative omega(a): the (p-1)-st root of unity = a mod p.
PadicNumber teichmuller(long a, long p, int precision);

// ---- univariate rational polynomials (coefficients low to high) ----------

using RatPoly = std::vector<Rat>;

void poly_trim(RatPoly& f);
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
RatPoly poly_add(const RatPoly& a, const RatPoly& b);
RatPoly poly_sub(const RatPoly& a, const RatPoly& b);
// Quotient and remainder; b must be nonzero.
std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b);
// Returns (g, s, t) with s a + t b = g, g monic.
std::tuple<RatPoly, RatPoly, RatPoly> poly_xgcd(const RatPoly& a, const RatPoly& b);
std::vector<Int> cyclotomic_polynomial(long n);

// ---- number fields ---------------------------------------------------------

// Q[x]/(f) for monic f.  Instances are immutable and shared.
class NumberField {
public:
    enum class PadicRoot { Smallest, UniqueUnit };

    static std::shared_ptr<const NumberField> rationals();
    static std::shared_ptr<const NumberField> cyclotomic(long n);
    // f monic, low-to-high, irreducible (caller's responsibility).  `approx`
    // picks the complex root used by embed_complex.
    static std::shared_ptr<const NumberField> from_polynomial(RatPoly f, Complex approx,
                                                              PadicRoot padic = PadicRoot::Smallest,
                                                              std::string name = {});

    int degree() const { return static_cast<int>(f_.size()) - 1; }
    const RatPoly& modulus() const { return f_; }
    long cyclotomic_order() const { return cyc_; }
    const std::string& name() const { return name_; }
    const Complex& generator_complex() const { return root_; }
    // Image of the generator in Z_p; throws UnsupportedError if no simple root
    // of the requested kind exists mod p.
    PadicNumber generator_padic(long p, int precision) const;

    bool same_as(const NumberField& o) const { return this == &o; }

private:
    NumberField(RatPoly f, long cyc, Complex root, PadicRoot choice, std::string name);
    RatPoly f_;
    long cyc_ = 0;
    Complex root_;
    PadicRoot choice_ = PadicRoot::Smallest;
    std::string name_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

class AlgNumber {
public:
    AlgNumber();  // zero in Q
    AlgNumber(const Rat& r);
    AlgNumber(long r) : AlgNumber(Rat(r)) {}
    AlgNumber(FieldPtr k, RatPoly coeffs);
    static AlgNumber generator(FieldPtr k);
    static AlgNumber rational(FieldPtr k, const Rat& r);

    const FieldPtr& field() const { return k_; }
    const RatPoly& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    Rat to_rational() const;  // throws if not rational

    AlgNumber operator-() const;
    friend AlgNumber operator+(const AlgNumber& a, const AlgNumber& b);
    friend AlgNumber operator-(const AlgNumber& a, const AlgNumber& b);
    friend AlgNumber operator*(const AlgNumber& a, const AlgNumber& b);
    friend AlgNumber operator/(const AlgNumber& a, const AlgNumber& b);
    friend bool operator==(const AlgNumber& a, const AlgNumber& b);
    friend bool operator!=(const AlgNumber& a, const AlgNumber& b) { return !(a == b); }
    AlgNumber inverse() const;
    AlgNumber pow(long e) const;

    Complex embed_complex() const;
    PadicNumber embed_padic(long p, int precision) const;
    // Norm to Q: determinant of multiplication by this element.
    Rat norm() const;
    std::string str() const;

private:
    void reduce();
    FieldPtr k_;
    RatPoly c_;
};

// Brings a and b into a common field (one of them rational).
std::pair<AlgNumber, AlgNumber> align_fields(const AlgNumber& a, const AlgNumber& b);

// ---- cyclotomic numbers ----------------------------------------------------

// Element of Q(zeta_N) in the power basis modulo Phi_N.  Mixed-conductor
// arithmetic lifts to the lcm.
class CycNumber {
public:
    CycNumber() : CycNumber(Rat(0)) {}
    CycNumber(const Rat& r);
    CycNumber(long r) : CycNumber(Rat(r)) {}
    CycNumber(long conductor, std::vector<Rat> coeffs);
    static CycNumber zeta(long n, long k = 1);

    long conductor() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    Rat to_rational() const;  // throws if not rational
    // Same element written over Q(zeta_M); requires conductor() | m.
    CycNumber lift(long m) const;
    // Smallest conductor among the cyclotomic fields containing the element
    // (searched over divisors of the current conductor).
    CycNumber minimised() const;

    CycNumber operator-() const;
    CycNumber& operator+=(const CycNumber& o);
    CycNumber& operator-=(const CycNumber& o);
    CycNumber& operator*=(const CycNumber& o);
    friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
    friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
    friend CycNumber operator*(CycNumber a, const CycNumber& b) { return a *= b; }
    friend CycNumber operator/(const CycNumber& a, const CycNumber& b) { return a * b.inverse(); }
    friend bool operator==(const CycNumber& a, const CycNumber& b);
    friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }
    CycNumber inverse() const;
    CycNumber pow(long e) const;
    CycNumber conj() const;          // zeta -> zeta^{-1}
    CycNumber galois(long a) const;  // zeta -> zeta^a, gcd(a, N) = 1
    Rat norm() const;                // N_{Q(zeta_N)/Q}

    Complex embed_complex() const;
    // zeta_N -> omega(g)^{(p-1)/N} with g the least primitive root mod p.
    // Requires N | p-1 after minimisation.
    PadicNumber embed_padic(long p, int precision) const;

    AlgNumber to_alg() const;
    static CycNumber from_alg(const AlgNumber& x);  // x in Q or a cyclotomic field

    std::string str() const;

private:
    long n_ = 1;
    std::vector<Rat> c_;
};

// Complex embedding to `digits` decimal digits (digits <= 60).
Complex cyc_embed_complex(const CycNumber& x, int digits);

long primitive_root(long p);

// ---- Laurent polynomials and rational functions in X1, X2 ---------------

using Exponent = std::pair<int, int>;

class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(const CycNumber& c);
    LaurentPoly(const Rat& c) : LaurentPoly(CycNumber(c)) {}
    LaurentPoly(long c) : LaurentPoly(CycNumber(c)) {}
    static LaurentPoly monomial(const CycNumber& c, int e1, int e2);
    static LaurentPoly x1() { return monomial(1, 1, 0); }
    static LaurentPoly x2() { return monomial(1, 0, 1); }

    const std::map<Exponent, CycNumber>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    CycNumber coeff(int e1, int e2) const;
    // Total degree range of the support in each variable.
    std::pair<int, int> degree_range(int var) const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly pow(int e) const;  // e >= 0, or a monomial for e < 0
    bool is_monomial() const { return t_.size() == 1; }

    CycNumber evaluate(const CycNumber& x1, const CycNumber& x2) const;
    // X1 -> m1, X2 -> m2 where m1, m2 are monomials.
    LaurentPoly substitute(const LaurentPoly& m1, const LaurentPoly& m2) const;
    std::string str() const;

private:
    void add_term(const Exponent& e, const CycNumber& c);
    std::map<Exponent, CycNumber> t_;
};

class LaurentRational {
public:
    LaurentRational() : num_(0), den_(1) {}
    LaurentRational(LaurentPoly num) : num_(std::move(num)), den_(1) {}
    LaurentRational(const CycNumber& c) : num_(c), den_(1) {}
    LaurentRational(const Rat& c) : num_(c), den_(1) {}
    LaurentRational(long c) : num_(c), den_(1) {}
    LaurentRational(LaurentPoly num, LaurentPoly den);

    const LaurentPoly& numerator() const { return num_; }
    const LaurentPoly& denominator() const { return den_; }

    LaurentRational operator-() const { return {-num_, den_}; }
    friend LaurentRational operator+(const LaurentRational& a, const LaurentRational& b);
    friend LaurentRational operator-(const LaurentRational& a, const LaurentRational& b);
    friend LaurentRational operator*(const LaurentRational& a, const LaurentRational& b);
    friend LaurentRational operator/(const LaurentRational& a, const LaurentRational& b);
    LaurentRational inverse() const;
    LaurentRational pow(int e) const;

    CycNumber specialize(const CycNumber& x1, const CycNumber& x2) const;
    LaurentRational substitute(const LaurentPoly& m1, const LaurentPoly& m2) const;
    std::string str() const;

private:
    void normalise();
    LaurentPoly num_;
    LaurentPoly den_;
};

bool laurent_equal(const LaurentRational& f, const LaurentRational& g);

// first / (1 - ratio): the formal sum of first * ratio^k over k >= 0.
LaurentRational geometric_series(const LaurentRational& first, const LaurentRational& ratio);

// ---- symbolic periods r * (2 pi i)^k * Gamma(m) --------------------------

struct SymbolicPeriod {
    Rat rational_part{1};
    int power_of_2pi_i = 0;
    int gamma_arg = 1;  // Gamma(m) with m >= 1

    SymbolicPeriod() = default;
    SymbolicPeriod(Rat r, int k, int m);

    // r * (m-1)!, the coefficient of (2 pi i)^k once Gamma is unfolded.
    Rat folded() const;
    Complex embed_complex() const;
    SymbolicPeriod inverse() const;
    std::string str() const;

    friend SymbolicPeriod operator*(const SymbolicPeriod& a, const SymbolicPeriod& b);
    friend SymbolicPeriod operator/(const SymbolicPeriod& a, const SymbolicPeriod& b);
    friend bool operator==(const SymbolicPeriod& a, const SymbolicPeriod& b);
};

}  // namespace gl3p

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gl3p/characters.hpp"
#include "gl3p/exact_arith.hpp"

namespace gl3p {

// Element of Q[Delta_n], Delta_n = (Z/p^n)^x, with exact rational
// coefficients.  Coefficients are indexed by residues in [0, p^n); entries at
// non-units are always zero.
class GroupRingElem {
public:
    GroupRingElem(long p, int n);
    static GroupRingElem basis(long p, int n, long a);  // [a]
    static GroupRingElem constant(long p, int n, const Rat& c) { return basis(p, n, 1) * c; }

    long prime() const { return p_; }
    int level() const { return n_; }
    long modulus() const { return static_cast<long>(c_.size()); }
    const Rat& coeff(long a) const;
    void set(long a, Rat v);
    void add(long a, const Rat& v);
    // Units of Z/p^n in increasing order.
    std::vector<long> support_keys() const;

    bool is_zero() const;
    // All coefficients p-integral.
    bool is_integral() const;
    // min over nonzero coefficients of v_p; nullopt for zero.
    std::optional<int> min_valuation() const;

    GroupRingElem operator-() const;
    GroupRingElem& operator+=(const GroupRingElem& o);
    GroupRingElem& operator-=(const GroupRingElem& o);
    friend GroupRingElem operator+(GroupRingElem a, const GroupRingElem& b) { return a += b; }
    friend GroupRingElem operator-(GroupRingElem a, const GroupRingElem& b) { return a -= b; }
    friend GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b);
    friend GroupRingElem operator*(GroupRingElem a, const Rat& s);
    friend bool operator==(const GroupRingElem& a, const GroupRingElem& b);

    std::string str() const;

private:
    void check_compatible(const GroupRingElem& o) const;
    long p_;
    int n_;
    std::vector<Rat> c_;
};

// Stored levels n = 1..N; levels[n-1] is the level-n element.
struct MeasureTower {
    long p = 0;
    int weight_a = 0;
    Rat eigenvalue;
    std::vector<GroupRingElem> levels;
};

struct Measure {
    long p = 0;
    std::vector<GroupRingElem> levels;
    bool bounded = false;
};

GroupRingElem norm_map(const GroupRingElem& x);
// sum_x coeff[x] eta(x); eta must factor through Delta_n.
CycNumber evaluate(const GroupRingElem& x, const DirichletCharacter& eta);
// [a] -> a^j [a], a the representative in [1, p^n].
GroupRingElem moment_twist(const GroupRingElem& x, int j);
// sum_x coeff[x] eta(x) lift(x)^j for an arbitrary integer lift of each unit.
CycNumber evaluate_twisted(const GroupRingElem& x, const DirichletCharacter& eta, int j,
                           long (*lift)(long residue, long modulus));
// True when every power-basis coefficient of a - b has p-adic valuation >= k.
bool cyc_congruent(const CycNumber& a, const CycNumber& b, long p, int k);

Measure tower_to_measure(const MeasureTower& t);
// Builds eigenvalue^n * norm-pushdown of `top` (level N) for n = 1..N.
MeasureTower synthetic_tower(const GroupRingElem& top, const Rat& eigenvalue, int weight_a);
// Measure whose level-N element is `top` and lower levels are its norms.
Measure measure_from_top(const GroupRingElem& top);
void check_compatible(const Measure& m);

// c^2 [1] - c^{-j} chi(c)^{-1} [c^{-1} mod p^n]; chi(c) must be +-1 so the
// element has rational coefficients.
GroupRingElem smoothing_factor(long p, int n, long c, int j, const DirichletCharacter& chi);

// A character of Delta_n at which x does not evaluate to a p-adic unit.
std::optional<DirichletCharacter> non_unit_character(const GroupRingElem& x);
// Invertible in Z_p[Delta_n]: integral coefficients and a unit value at every
// character of Delta_n.
bool is_invertible(const GroupRingElem& x);
// Exact inverse in Q[Delta_n]; throws if x is a zero divisor.
GroupRingElem group_ring_inverse(const GroupRingElem& x);

Measure remove_smoothing(const Measure& smoothed, long c, int j, const DirichletCharacter& chi);
Measure apply_smoothing(const Measure& m, long c, int j, const DirichletCharacter& chi);
Measure moment_twist(const Measure& m, int j);

}  // namespace gl3p

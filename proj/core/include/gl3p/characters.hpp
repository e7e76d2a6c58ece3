#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gl3p/exact_arith.hpp"

namespace gl3p {

// (Z/M)^x as a product of cyclic groups.  Generators follow the CRT
// convention: for an odd prime power q^e the generator is the least
// primitive root mod q^2 (hence mod every q^e), lifted to be 1 modulo the
// other prime-power factors; for 2^e (e >= 2) the generators are -1 and,
// if e >= 3, 5.
class UnitGroup {
public:
    static std::shared_ptr<const UnitGroup> of(long modulus);

    long modulus() const { return m_; }
    long order() const { return order_; }
    long exponent() const { return exponent_; }
    const std::vector<long>& generators() const { return gens_; }
    const std::vector<long>& orders() const { return orders_; }
    // Discrete logs of a unit with respect to generators(); nullopt for non-units.
    std::optional<std::vector<long>> logs(long a) const;
    std::vector<long> units() const;

private:
    explicit UnitGroup(long m);
    long m_;
    long order_ = 1;
    long exponent_ = 1;
    std::vector<long> gens_;
    std::vector<long> orders_;
    std::vector<std::vector<int>> table_;  // indexed by residue; empty for non-units
};

// Dirichlet character stored by its values on UnitGroup::of(M)->generators():
// chi(g_i) = exp(2 pi i * image_i) with image_i in [0, 1) and image_i * ord_i in Z.
// Adelic dictionary: the finite-order Hecke character attached to chi sends a
// uniformiser at a prime l not dividing M to chi(l).
class DirichletCharacter {
public:
    DirichletCharacter() : DirichletCharacter(trivial(1)) {}
    static DirichletCharacter trivial(long modulus);
    // chi(g_i) = zeta_{ord_i}^{exponents[i]}
    static DirichletCharacter from_exponents(long modulus, const std::vector<long>& exponents,
                                             std::string label = {});
    // chi(a) = exp(2 pi i * frac(a)) for units a; frac must define a character.
    static DirichletCharacter from_function(long modulus, const std::function<Rat(long)>& frac,
                                            std::string label = {});
    // The Legendre symbol mod an odd prime.
    static DirichletCharacter quadratic(long p);
    // a -> omega(a)^k viewed as a complex character mod p, where zeta_{p-1}
    // corresponds to omega(g) for the least primitive root g mod p.
    static DirichletCharacter teichmuller_power(long p, long k);
    // Every character of (Z/M)^x, in lexicographic order of exponents.
    static std::vector<DirichletCharacter> all(long modulus);

    long modulus() const { return m_; }
    const std::vector<Rat>& images() const { return img_; }
    std::vector<long> exponents() const;
    const std::string& label() const { return label_; }
    DirichletCharacter with_label(std::string label) const;

    long order() const;
    long conductor() const;
    bool is_primitive() const { return conductor() == m_; }
    bool is_trivial() const;
    int parity() const;

    // Root-of-unity exponent of chi(a) in [0, 1); nullopt when gcd(a, M) > 1.
    std::optional<Rat> angle(long a) const;
    CycNumber operator()(long a) const;

    DirichletCharacter primitive() const;
    DirichletCharacter lift(long new_modulus) const;
    DirichletCharacter inverse() const;
    DirichletCharacter pow(long k) const;
    friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b);
    // Equal as functions on units of the common modulus lcm(M, M').
    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b);

private:
    DirichletCharacter(long m, std::vector<Rat> img, std::string label);
    long m_ = 1;
    std::vector<Rat> img_;
    std::string label_;
};

struct CharacterDecomposition {
    DirichletCharacter at_p;
    DirichletCharacter away_p;
};

CycNumber evaluate(const DirichletCharacter& chi, long a);
// G(chi) = sum_{a mod N} chi(a) e^{2 pi i a / N} for chi primitive of conductor N.
CycNumber gauss_sum(const DirichletCharacter& chi);
int parity(const DirichletCharacter& chi);
long conductor(const DirichletCharacter& chi);
CharacterDecomposition decompose_at_p(const DirichletCharacter& chi, long p);
// Value in Z_p through zeta_{p-1} -> omega(g); needs ord(chi) | p - 1.
PadicNumber padic_value(const DirichletCharacter& chi, long a, long p, int precision);

}  // namespace gl3p

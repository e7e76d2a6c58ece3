#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "gl3p/exact_arith.hpp"
#include "gl3p/linalg.hpp"

namespace gl3p {

using Mat2 = std::array<std::array<Rat, 2>, 2>;
using Mat3 = std::array<std::array<Rat, 3>, 3>;

Mat2 mat2(const Rat& a, const Rat& b, const Rat& c, const Rat& d);

Mat3 mat3_identity();
Mat3 mat3_mul(const Mat3& a, const Mat3& b);
Mat3 mat3_inverse(const Mat3& a);
Rat mat3_det(const Mat3& a);
// (gamma, z) -> diag(gamma, z)
Mat3 embed_h(const Mat2& gamma, const Rat& z);

// Exponents of x1 x2 x3 y1 y2 y3.
using Monomial = std::array<int, 6>;
using Poly6 = std::map<Monomial, Rat>;

// V_(a,0,-a) realised on functions f(g) = P(x, y) det(g)^{-a}, where x is the
// first row of g and y the cross product of its first two rows.  P has
// bidegree (a, a) and is taken modulo x.y; the basis is the monomials not
// divisible by x3 y3.  gamma acts by P(x, y) -> P(x gamma, y gamma^{-T}).
class Gl3Irrep {
public:
    explicit Gl3Irrep(int a);

    int a() const { return a_; }
    int dimension() const { return static_cast<int>(basis_.size()); }
    const std::vector<Monomial>& basis() const { return basis_; }
    // Torus weight (t1, t2, t3) of a basis vector.
    std::array<int, 3> weight(int i) const;
    std::vector<int> weight_space(const std::array<int, 3>& w) const;

    // Coordinates of P after reduction mod x.y.
    std::vector<Rat> coordinates(const Poly6& p) const;
    Poly6 polynomial(const std::vector<Rat>& v) const;

    // E_ij acts as the derivation x_i d/dx_j - y_j d/dy_i.
    std::vector<Rat> lie_action(int i, int j, const std::vector<Rat>& v) const;
    std::vector<Rat> group_action(const Mat3& gamma, const std::vector<Rat>& v) const;
    // f(g) for the function with coordinates v.
    Rat evaluate(const std::vector<Rat>& v, const Mat3& g) const;

private:
    int a_;
    std::vector<Monomial> basis_;
    std::map<Monomial, int> index_;
};

// Reduces modulo x1 y1 + x2 y2 + x3 y3 into monomials free of x3 y3.
Poly6 reduce_mod_contraction(const Poly6& p);

struct HWeightRep {
    int r = 0, s = 0, t = 0;  // (r, s; t)
    int dimension() const { return r - s + 1; }
};

struct BranchingDecomp {
    int a = 0;
    // (i, j) -> multiplicity of V^H_(j, -i; i - j); constituents outside
    // [0, a]^2 are listed in `other`.
    std::map<std::pair<int, int>, int> multiplicity;
    std::vector<std::pair<HWeightRep, int>> other;
    int total_dimension() const;
    bool all_ones() const;
};

// (a+1)^3 by the Weyl dimension formula.
long dimension(int a);

// Multiplicities by counting highest weight vectors (kernel of E_12) in each
// H-weight space.
BranchingDecomp restrict_decompose(const Gl3Irrep& v);

// Sym^j in u1, u2 with (gamma, z) acting by P(u gamma) z^{-j}; basis
// u1^{j-k} u2^k, k = 0..j.
std::vector<Rat> sym_action(int j, const Mat2& gamma, const Rat& z,
                            const std::vector<Rat>& v);

struct BranchingMap {
    int a = 0, j = 0;
    int solution_dimension = 0;  // dimension of the space of H-maps
    Matrix<Rat> matrix;          // dim V x (j+1), columns are images of u1^{j-k} u2^k
};

// The H-map V^H_(j,0;-j) -> V_(a,0,-a), normalised by f(u^{-1}) = 1 for the
// image f of u1^j, u the unipotent with a 1 in position (1,3).  Throws
// VerificationError unless the solution space is 1-dimensional.
BranchingMap br_map(const Gl3Irrep& v, int j);

// Checks br o rho_H(h) = rho_G(iota(h)) o br on GL2(Z) x GL1(Z) generators.
bool check_equivariance(const Gl3Irrep& v, const BranchingMap& br);

// mu(br(v)) for mu in V^vee (dual basis coordinates) and v in V_(0,-j)^GL2.
Rat pairing_aj(const BranchingMap& br, const std::vector<Rat>& mu, const std::vector<Rat>& v);

// Dual action (h . mu)(f) = mu(h^{-1} f).
std::vector<Rat> dual_action(const Gl3Irrep& v, const Mat3& gamma, const std::vector<Rat>& mu);
// Action on V_(0,-j)^GL2 x trivial GL1: P(u gamma) det(gamma)^{-j}.
std::vector<Rat> gl2_action(int j, const Mat2& gamma, const std::vector<Rat>& v);

}  // namespace gl3p

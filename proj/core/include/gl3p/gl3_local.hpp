#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gl3p/characters.hpp"
#include "gl3p/exact_arith.hpp"

namespace gl3p {

// v_p of a nonzero exact scalar.  Rationals are exact; other cyclotomic values
// go through CycNumber::embed_padic and need their conductor to divide p - 1.
int padic_valuation(const CycNumber& x, long p);

struct SatakeParams {
    long p = 2;
    CycNumber alpha{1}, beta{1}, gamma{1};
    int weight_a = 0;
    // When set, every valuation must lie in [-1-a, 1+a].
    bool cohomological = false;

    std::vector<CycNumber> values() const { return {alpha, beta, gamma}; }
    CycNumber central_value() const { return alpha * beta * gamma; }
    // Throws DomainError if the cohomological range is violated.
    void validate() const;
};

// Character of Q_p^x: its value on p and its restriction to Z_p^x, given as a
// Dirichlet character of p-power modulus (trivial when unramified).
struct LocalChar {
    CycNumber value_at_p{1};
    DirichletCharacter restriction;

    static LocalChar unramified(const CycNumber& v) { return {v, DirichletCharacter::trivial(1)}; }
    bool ramified() const { return !restriction.primitive().is_trivial(); }
    LocalChar inverse() const { return {value_at_p.inverse(), restriction.inverse()}; }
    friend LocalChar operator*(const LocalChar& a, const LocalChar& b) {
        return {a.value_at_p * b.value_at_p, a.restriction * b.restriction};
    }
};

enum class RepKind { supercuspidal, steinberg_twist, induced_theta_sc, induced_theta_st, principal_series };

std::string to_string(RepKind k);
RepKind rep_kind_from_string(const std::string& s);

// Generic irreducible representation of GL3(Q_p), described by its inducing
// data.  `chars` holds, per kind:
//   supercuspidal      {omega}             central character
//   steinberg_twist    {lambda}            St_3 (x) lambda
//   induced_theta_sc   {theta, omega_sigma}
//   induced_theta_st   {theta, mu}         mu = lambda|.|^{1/2}, the top exponent of St_2 (x) lambda
//   principal_series   {chi1, chi2, chi3}
struct LocalRepGL3 {
    RepKind kind = RepKind::principal_series;
    long p = 2;
    int weight_a = 0;
    std::vector<LocalChar> chars;

    static LocalRepGL3 principal_series(long p, int a, LocalChar c1, LocalChar c2, LocalChar c3);
    static LocalRepGL3 unramified(const SatakeParams& s);
    static LocalRepGL3 steinberg_twist(long p, int a, LocalChar lambda);
    static LocalRepGL3 induced_theta_sc(long p, int a, LocalChar theta, LocalChar omega_sigma);
    static LocalRepGL3 induced_theta_st(long p, int a, LocalChar theta, LocalChar mu);
    static LocalRepGL3 supercuspidal(long p, int a, LocalChar omega);

    LocalChar central_character() const;
    LocalRepGL3 dual() const;
};

struct Refinement {
    int parabolic = 1;
    LocalChar character;
    Rat slope;

    const CycNumber& value() const { return character.value_at_p; }
    bool ramified() const { return character.ramified(); }
};

// Refinements are compared by parabolic, value at p and restriction.
bool same_refinement(const Refinement& a, const Refinement& b);

// Recurrence data for L(sigma, s) = 1 / (1 + d_1 T + d_2 T^2), T = p^{-s}.
struct RefinedData {
    long p = 2;
    CycNumber alpha{1};
    int sigma_conductor = 0;
    std::vector<CycNumber> sigma_L_denominator{CycNumber(1)};

    // sigma unramified principal series with Satake parameters (b, c).
    static RefinedData principal(long p, const CycNumber& alpha, const CycNumber& b, const CycNumber& c);
    // sigma = St_2 (x) lambda with L(sigma, s) = 1 / (1 - c p^{-s}).
    static RefinedData steinberg(long p, const CycNumber& alpha, const CycNumber& c);
    // sigma supercuspidal of conductor r: L(sigma, s) = 1.
    static RefinedData supercuspidal(long p, const CycNumber& alpha, int r);

    // b_0 = 1, b_1, ... with L(sigma, s) = sum b_n p^{-ns}.
    CycNumber b(int n) const;
    std::vector<CycNumber> b_sequence(int count) const;
};

struct HeckeEigenvalues {
    CycNumber a_p1, a_p2;
    // a_p2 == omega(p) * conj(a_p1), when omega(p) was supplied.
    std::optional<bool> conjugate_symmetric;
};

HeckeEigenvalues hecke_eigenvalues(const SatakeParams& s, std::optional<CycNumber> omega_at_p = std::nullopt);

struct OrdinarityResult {
    bool ordinary = false;
    std::string reason;
    explicit operator bool() const { return ordinary; }
};

// Unramified: v_p(a_{p,i}) = 0.
OrdinarityResult is_ordinary(const SatakeParams& s, int parabolic);
// General: some P_i-refinement is unramified of slope -(1+a).
OrdinarityResult is_ordinary(const LocalRepGL3& rep, int parabolic);
// Same condition without the unramified requirement.
bool is_nearly_ordinary(const LocalRepGL3& rep, int parabolic);

std::vector<Refinement> classify_refinements(const LocalRepGL3& rep);

// Coefficients (low to high) of (1 - alpha X)(1 - beta X)(1 - gamma X).
std::vector<CycNumber> local_L_factor(const SatakeParams& s);

enum class CritSide { minus, plus };

// minus: -a <= j <= 0 with (-1)^j = omega eta(-1); plus: 1 <= j <= 1+a with
// (-1)^j = -omega eta(-1).  omega_parity is +1 or -1.
std::vector<int> critical_set(int a, int omega_parity, const DirichletCharacter& eta, CritSide side);

// 2 (2 pi i)^{j-a-1} Gamma(a+1-j), for the critical point -j with 0 <= j <= a.
SymbolicPeriod e_infty(int a, int j);

// Modified Euler factor at p for the critical point (-j, eta); eta of p-power
// conductor.  Checks criticality against (a, omega_parity); throws
// DomainError with "exceptional zero" when 1 - p^j alpha vanishes.
CycNumber e_p(const CycNumber& alpha, long p, const DirichletCharacter& eta, int j, int a, int omega_parity);

struct E0Result {
    CycNumber value{1};
    bool irreducibly_induced = false;
    bool padic_unit = true;
};

// 1 - omega chi(p) / alpha(p) when rep is irreducibly induced from the
// refinement, 1 otherwise.  A P1-ordinary refinement whose factor is not a
// unit raises VerificationError.
E0Result E0_factor(const LocalRepGL3& rep, const Refinement& refinement, const CycNumber& chi_at_p = CycNumber(1));

// W(diag(p^{m+n}, p^n, 1)) for the P1-refined newvector: 0 when m or n is
// negative, alpha^{m+n} p^{-m-n} b_n otherwise (the p^{-n/2} of the GL2
// newvector and the p^{-n/2} of the torus formula combine to an integer power).
CycNumber whittaker_torus_value(const RefinedData& rd, int m, int n);

// p^{2n-1}(p-1), checked by enumerating the subgroup mod p^t.
long level_intersection_index(long p, int n, int t);
// Plain enumeration, exposed for tests.
long level_intersection_index_enumerated(long p, int n, int t);

}  // namespace gl3p

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gl3p/characters.hpp"
#include "gl3p/exact_arith.hpp"
#include "gl3p/gl3_local.hpp"

namespace gl3p {

// Variables: X1 = p^{-(s1 + s2 - 1/2)}, X2 = p^{-(s2 - s1 + 1/2)}.  The point
// (s1, s2) = ((1-j)/2, -j/2) is X1 = p^j, X2 = 1.
//
// Haar measures: d^x x gives Z_p^x volume 1, dg gives GL2(Z_p) volume 1.
// Unramified epsilon factors are 1 (conductor-0 additive character).

enum class SigmaKind { principal, steinberg };

// Parahoric data: Pi_p a subquotient of alpha |+| sigma, with sigma an
// unramified principal series (B, C) or St_2 twisted so that L(sigma, s) =
// 1 / (1 - c p^{-s}).
struct ZetaInput {
    long p = 2;
    CycNumber alpha{1};
    SigmaKind sigma = SigmaKind::principal;
    std::vector<CycNumber> sigma_params{CycNumber(1), CycNumber(1)};  // (B, C) or (c)
    DirichletCharacter eta1;                                          // p-power conductor
    DirichletCharacter eta2_at_p;                                     // trivial only
    std::optional<int> R;                                             // default max(n, r)
    int weight_a = 0;
    int omega_parity = 1;

    static ZetaInput principal(long p, const CycNumber& alpha, const CycNumber& b, const CycNumber& c,
                               DirichletCharacter eta1 = DirichletCharacter::trivial(1));
    static ZetaInput steinberg(long p, const CycNumber& alpha, const CycNumber& c,
                               DirichletCharacter eta1 = DirichletCharacter::trivial(1));

    // Throws DomainError / UnsupportedError for bad data.
    void validate() const;
    int eta_exponent() const;  // n1
    int n() const;             // max(1, n1)
    int depth() const;         // R
    RefinedData refined() const;
    LocalRepGL3 rep() const;
    CycNumber central_value() const;
};

// int_{Z_p^x} psi(p^a x) eta^{-1}(x) d^x x with psi(x) = e^{2 pi i {x}_p}.
CycNumber unit_integral(long p, const DirichletCharacter& eta, int a);

// Coefficient of X1^a X2^b in Y before the outer 1/(p^{2R}(1 - p^{-2})).
CycNumber Y_coefficient(const ZetaInput& zi, int a, int b);

// The torus double sum, summed row by row: each row in X2 is identified by a
// linear recurrence, rows in X1 must become geometric (or vanish).
LaurentRational Y_bruteforce(const ZetaInput& zi);

// Closed form before specialisation.
LaurentRational Y_closed_form(const ZetaInput& zi);
// Specialised product with e_p, E0 and L(wedge^2, 0).  Throws on an
// exceptional zero or a non-critical j.
CycNumber Y_closed_form(const ZetaInput& zi, int j);

CycNumber exterior_square_L_at_zero(const ZetaInput& zi);
CycNumber E0_value(const ZetaInput& zi);

CycNumber specialize_at(const LaurentRational& f, long p, int j);

// gamma(pi, s) = L(pi^vee, 1-s) / L(pi, s) as a function of T = p^{-s},
// carried in X1.  Epsilon is 1.
LaurentRational gamma_factor(const std::vector<CycNumber>& params, long p);
// gamma(pi x chi, s1 - s2 + 1/2) in X1, X2 for unramified chi with value twist.
LaurentRational rankin_selberg_gamma(const std::vector<CycNumber>& params, long p, const CycNumber& twist);
// The gamma factor for the parahoric data: chi1 / chi2 = omega^{-1}.
LaurentRational rankin_selberg_gamma(const ZetaInput& zi);

LaurentRational Z_from_Y(const LaurentRational& y, const LaurentRational& gamma);
CycNumber Z_from_Y(const CycNumber& y, const CycNumber& gamma);
// prefactor * e_p * E0 * L(Pi x omega^{-1}, 1); principal series only.
CycNumber Z_closed_form(const ZetaInput& zi, int j);

// Z / (L(pi x chi1, s1 + s2 - 1/2) L(pi x chi1/chi2, s1 - s2 + 1/2)).
LaurentRational Z_normalized(const LaurentRational& z, const std::vector<CycNumber>& params, long p,
                             const CycNumber& chi1, const CycNumber& chi2);

// s_lambda(xs) by Jacobi-Trudi; lambda weakly decreasing, nonnegative.
CycNumber schur_polynomial(const std::vector<int>& lambda, const std::vector<CycNumber>& xs);

// Power series sum c(i, k) U^i V^k recovered as P/Q with deg P, deg Q <= bound
// in each variable and Q(0,0) = 1, from the coefficients with i + k <= N.
// Throws DomainError when no such P/Q fits.
LaurentRational reconstruct_bivariate(const std::function<CycNumber(int, int)>& coeff, int N, int bound = 3);

// Spherical data with chi1, chi2 unramified: the torus sum
//   sum_mu s_mu(alpha) s_mu(chi1 X1, chi1 chi2^{-1} p^{-1} X2^{-1})
// over mu = (mu1 >= mu2 >= 0), reconstructed from total degree <= N.
LaurentRational spherical_Z(const SatakeParams& s, const CycNumber& chi1, const CycNumber& chi2, int N = 30);
// The Y side for the same data (chi1 = 1): sum of (omega^{-1} chi2)^b
// s_{(a+b, b, 0)}(alpha) X1^a X2^b, times f_Phi(1) = 1 / (1 - chi2 X1 X2).
LaurentRational spherical_Y(const SatakeParams& s, const CycNumber& chi2, int N = 30);

// Exact division of Laurent polynomials; nullopt when d does not divide n.
std::optional<LaurentPoly> laurent_divide(const LaurentPoly& n, const LaurentPoly& d);

}  // namespace gl3p

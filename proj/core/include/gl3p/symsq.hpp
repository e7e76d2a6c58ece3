#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gl3p/characters.hpp"
#include "gl3p/exact_arith.hpp"
#include "gl3p/gl3_local.hpp"

namespace gl3p {

// A classical newform of weight k = a + 2 with rational integer Fourier
// coefficients.  hecke_coeffs[n] = a_n for 1 <= n < size (index 0 unused).
struct ModFormData {
    std::string name;
    int weight = 12;
    long level = 1;
    DirichletCharacter nebentype;
    std::vector<Int> hecke_coeffs;
    std::optional<Real> petersson_norm;
    DirichletCharacter theta;  // twist of prime-to-p conductor; values must be rational

    int a() const { return weight - 2; }
    long max_index() const { return static_cast<long>(hecke_coeffs.size()) - 1; }
    const Int& coeff(long n) const;
    // omega_pi(-1) = (-1)^a theta(-1)
    int omega_parity() const { return (a() % 2 == 0 ? 1 : -1) * theta.parity(); }
    // Rational value of the nebentype at p (+-1); UnsupportedError otherwise.
    Rat nebentype_at(long p) const;
};

// Coefficients of Delta = q prod (1 - q^n)^24 up to q^n_max, as (eta^3)^8 with
// Jacobi's series for eta^3.  Index 0 is 0.
std::vector<Int> delta_coefficients(long n_max);
ModFormData delta_form(long n_max);

// First n violating multiplicativity or the prime-power recurrence at a good
// prime, within the stored range.
std::optional<long> hecke_relation_witness(const ModFormData& f);

// Satake parameters of Sym^2(f) x theta x |.|^{-a} at a good p.  With A, B the
// roots of X^2 - a_p X + eps(p) p^{k-1}, the triple is
//   theta(p) (A^2, A B, B^2) / p^{a+1},
// i.e. the p^a normalisation applied to A, B scaled by p^{-1/2}.  A is the
// unit root when f is ordinary at p; its complex embedding has Im >= 0.
struct LiftedSatake {
    long p = 2;
    int weight_a = 0;
    Int a_p;
    AlgNumber A, B;
    AlgNumber alpha, beta, gamma;
    bool p1_ordinary = false;
    std::optional<std::vector<int>> valuations;  // (alpha, beta, gamma), when A is a unit
    int omega_parity = 1;

    // Elementary symmetric functions, always rational.
    std::vector<Rat> elementary() const;
    // Defined when the roots are rational or cyclotomic.
    std::optional<SatakeParams> satake_params() const;
};

LiftedSatake lift_satake(const ModFormData& f, long p);

// Dirichlet coefficients of L(Sym^2 f, s) (classical normalisation: centre at
// k - 1/2) times a quadratic twist chi.
struct LSeriesSpec {
    std::vector<Rat> coeffs;        // coeffs[n], index 0 unused
    std::vector<int> gamma_r;       // Gamma_R(s + mu)
    std::vector<int> gamma_c;       // Gamma_C(s + nu)
    long conductor = 1;
    int weight = 1;                 // Lambda(s) = sign Lambda(weight - s)
    std::optional<int> sign;        // solved from two splittings when absent
    std::vector<std::pair<Rat, Rat>> poles;  // simple poles of Lambda: (location, residue)
    double growth = 0;              // |a_n| <= d(n)^2 n^growth, for truncation
    int motivic_shift = 0;          // L(pi x eta, s) = L(this, s + motivic_shift)
};

// L^{(N_f)}(2s - 2a - 2, eps^2) sum a_{n^2} n^{-s}, up to n = n_terms.  Needs
// a_m for m <= n_terms^2.
LSeriesSpec imprimitive_coeffs(const ModFormData& f, long n_terms);
// The same series from the Euler factors at the primes up to n_terms (level 1
// only), twisted by a quadratic character chi of conductor prime to the level.
LSeriesSpec symsq_lseries(const ModFormData& f, long n_terms, const DirichletCharacter& chi);

LSeriesSpec riemann_zeta_spec(long n_terms);
LSeriesSpec dirichlet_spec(const DirichletCharacter& chi, long n_terms);

struct NumericL {
    Complex value;
    Real error_estimate;
    bool rigorous = false;  // the estimate compares two step sizes
    int sign = 1;
    long terms_used = 0;
};

struct NumericOptions {
    int digits = 40;
    double line_offset = 2;  // distance of the contour from the nearest singularity
};

// Lambda(s) = sum a_n [G(s, n) + sign G(w - s, n)] + polar terms, with G the
// incomplete inverse Mellin transform of the gamma factor computed by the
// trapezoid rule on a vertical line; L(s) = Lambda(s) / gamma(s).
NumericL numeric_L_value(const LSeriesSpec& spec, const Complex& s, const NumericOptions& opt = {});
// Solves the sign from splittings at t = 1 and t = t0.
Complex solve_sign(const LSeriesSpec& spec, const Complex& s, const NumericOptions& opt = {});

// L(pi x eta, -j) = L(Sym^2 f x theta eta, a + 1 - j).
NumericL symsq_L_value(const ModFormData& f, const DirichletCharacter& eta, int j, const NumericOptions& opt = {});

// <f, f> = (k-1)! / (2^{2k-1} pi^{k+1}) L(Sym^2 f, k), level 1.
Real petersson_from_edge(const ModFormData& f, const NumericOptions& opt = {});

struct EpValue {
    std::optional<AlgNumber> exact;  // unramified eta
    Complex value;
};

EpValue symsq_e_p(const LiftedSatake& lift, const DirichletCharacter& eta, int j);

struct InterpolationReport {
    long p = 2;
    int j = 0;
    std::vector<int> critical_points;  // values of j (point -j), left half
    SymbolicPeriod e_infty;
    EpValue e_p;
    Rat euler_factor_at_p{1};  // prod (1 - alpha_i p^j) for unramified eta, else 1
    NumericL L;                // L(pi x eta, -j)
    Complex L_p_removed;       // L^{(p)}
    Complex product;           // e_infty e_p L^{(p)}, period left out
};

// Throws DomainError when (-j, eta) is not critical.
InterpolationReport interpolation_rhs(const ModFormData& f, long p, int j, const DirichletCharacter& eta,
                                      const NumericOptions& opt = {});

// omega(-1) Gamma(a+1-j) (2 pi i)^j / (2^{2a+4} i^b): the constant of the
// classical interpolation formula, b = 0 if omega(-1) = -1 else 1.
struct ClassicalConstant {
    Rat rational;           // omega(-1) Gamma(a+1-j) / 2^{2a+4}
    int power_of_2pi = 0;   // j
    int power_of_i = 0;     // j - b
};
ClassicalConstant classical_constant(int a, int omega_parity, int j);

enum class AlgebraicityStatus { recognized, failed, inconclusive };
std::string to_string(AlgebraicityStatus s);

struct AlgebraicityResult {
    AlgebraicityStatus status = AlgebraicityStatus::failed;
    std::optional<Rat> value;
    Real numeric;            // the normalised real number tested
    Real residual;           // |numeric - value|
    std::string report;
};

struct RecognitionOptions {
    long max_denominator = 1000000;
    int tolerance_digits = 25;
};

// Continued-fraction recognition of x as a rational with bounded denominator.
// inconclusive when the value is known to fewer digits than required.
AlgebraicityResult recognize_rational(const Real& x, const Real& known_error, const RecognitionOptions& opt = {});

// Recognises C_j L(pi x eta, -j) / (pi^{a+1} <f, f>) with the i-power of
// classical_constant removed.  normalise = false omits C_j (negative control).
AlgebraicityResult algebraicity_check(const ModFormData& f, int j, const DirichletCharacter& eta,
                                      std::optional<Real> petersson = std::nullopt, bool normalise = true,
                                      const NumericOptions& opt = {}, const RecognitionOptions& ropt = {});

}  // namespace gl3p

#include "gl3p/symsq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gl3p {

namespace mp = boost::multiprecision;

// ---- form data ------------------------------------------------------------------

const Int& ModFormData::coeff(long n) const {
    if (n < 1 || n > max_index())
        throw DomainError("needs a_n for n = " + std::to_string(n) + ", have n <= " + std::to_string(max_index()));
    return hecke_coeffs[static_cast<std::size_t>(n)];
}

Rat ModFormData::nebentype_at(long p) const {
    CycNumber v = nebentype(p);
    if (!v.is_rational()) throw UnsupportedError("nebentype value at " + std::to_string(p) + " is not rational");
    return v.to_rational();
}

namespace {

Rat rational_value(const DirichletCharacter& chi, long a, const char* what) {
    CycNumber v = chi(a);
    if (!v.is_rational()) throw UnsupportedError(std::string(what) + " must take rational values");
    return v.to_rational();
}

std::vector<Int> series_mul(const std::vector<Int>& a, const std::vector<Int>& b, std::size_t len) {
    std::vector<Int> out(len, Int(0));
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
            if (b[j] != 0) out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

}  // namespace

std::vector<Int> delta_coefficients(long n_max) {
    if (n_max < 1) throw DomainError("delta_coefficients needs n_max >= 1");
    const std::size_t len = static_cast<std::size_t>(n_max);  // powers q^0 .. q^{n_max-1} of prod (1-q^n)^24
    std::vector<Int> cube(len, Int(0));
    for (long k = 0;; ++k) {
        long e = k * (k + 1) / 2;
        if (e >= n_max) break;
        cube[static_cast<std::size_t>(e)] = (k % 2 == 0 ? 1 : -1) * (2 * k + 1);
    }
    std::vector<Int> sq = series_mul(cube, cube, len);
    std::vector<Int> p4 = series_mul(sq, sq, len);
    std::vector<Int> p8 = series_mul(p4, p4, len);
    std::vector<Int> out(len + 1, Int(0));
    for (std::size_t i = 0; i < len; ++i) out[i + 1] = p8[i];
    return out;
}

ModFormData delta_form(long n_max) {
    ModFormData f;
    f.name = "Delta";
    f.weight = 12;
    f.level = 1;
    f.nebentype = DirichletCharacter::trivial(1);
    f.theta = DirichletCharacter::trivial(1);
    f.hecke_coeffs = delta_coefficients(n_max);
    return f;
}

std::optional<long> hecke_relation_witness(const ModFormData& f) {
    const long n_max = f.max_index();
    if (n_max >= 1 && f.coeff(1) != 1) return 1;
    for (long n = 2; n <= n_max; ++n) {
        auto fac = factorize(n);
        long p = fac.front().first;
        int e = fac.front().second;
        long pe = ipow_long(p, e);
        if (fac.size() > 1) {
            if (f.coeff(n) != f.coeff(pe) * f.coeff(n / pe)) return n;
            continue;
        }
        if (e < 2 || f.level % p == 0) continue;
        Rat eps = f.nebentype_at(p);
        Rat rhs = Rat(f.coeff(p) * f.coeff(pe / p)) - eps * Rat(ipow(p, f.weight - 1)) * Rat(f.coeff(pe / p / p));
        if (Rat(f.coeff(n)) != rhs) return n;
    }
    return std::nullopt;
}

// ---- Satake parameters of the lift ------------------------------------------------

std::vector<Rat> LiftedSatake::elementary() const {
    AlgNumber e1 = alpha + beta + gamma;
    AlgNumber e2 = alpha * beta + alpha * gamma + beta * gamma;
    AlgNumber e3 = alpha * beta * gamma;
    return {e1.to_rational(), e2.to_rational(), e3.to_rational()};
}

std::optional<SatakeParams> LiftedSatake::satake_params() const {
    auto to_cyc = [](const AlgNumber& x) -> std::optional<CycNumber> {
        if (x.is_rational()) return CycNumber(x.to_rational());
        if (x.field()->cyclotomic_order() > 0) return CycNumber::from_alg(x);
        return std::nullopt;
    };
    auto a = to_cyc(alpha), b = to_cyc(beta), c = to_cyc(gamma);
    if (!a || !b || !c) return std::nullopt;
    SatakeParams s;
    s.p = p;
    s.alpha = *a;
    s.beta = *b;
    s.gamma = *c;
    s.weight_a = weight_a;
    return s;
}

LiftedSatake lift_satake(const ModFormData& f, long p) {
    if (!is_prime(p)) throw DomainError("lift_satake needs a prime");
    if (f.level % p == 0) throw DomainError("p = " + std::to_string(p) + " divides the level");
    if (f.theta.conductor() % p == 0) throw DomainError("p = " + std::to_string(p) + " divides the conductor of theta");
    LiftedSatake out;
    out.p = p;
    out.weight_a = f.a();
    out.a_p = f.coeff(p);
    out.omega_parity = f.omega_parity();
    const Rat c = f.nebentype_at(p) * Rat(ipow(p, f.weight - 1));
    const Rat ap(out.a_p);
    const Rat disc = ap * ap - 4 * c;
    out.p1_ordinary = out.a_p % p != 0;

    Int num = disc.get_num(), den = disc.get_den();
    bool square = disc >= 0 && mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t());
    if (square) {
        Int rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        Rat r1 = (ap + Rat(rn, rd)) / 2, r2 = (ap - Rat(rn, rd)) / 2;
        if (r1 != 0 && valuation(r1, p) > 0) std::swap(r1, r2);
        out.A = AlgNumber(r1);
        out.B = AlgNumber(r2);
    } else {
        Real d = to_real(disc);
        Complex approx = disc < 0 ? Complex(to_real(ap) / 2, mp::sqrt(-d) / 2) : Complex((to_real(ap) + mp::sqrt(d)) / 2);
        auto k = NumberField::from_polynomial({c, -ap, Rat(1)}, approx,
                                              out.p1_ordinary ? NumberField::PadicRoot::UniqueUnit
                                                              : NumberField::PadicRoot::Smallest,
                                              "Q(A_" + std::to_string(p) + ")");
        out.A = AlgNumber::generator(k);
        out.B = AlgNumber(ap) - out.A;
    }
    const Rat th = rational_value(f.theta, p, "theta");
    const Rat scale = th / Rat(ipow(p, f.a() + 1));
    out.alpha = AlgNumber(scale) * out.A * out.A;
    out.beta = AlgNumber(scale) * out.A * out.B;
    out.gamma = AlgNumber(scale) * out.B * out.B;
    if (out.p1_ordinary) {
        const int prec = 2 * f.weight + 10;
        out.valuations = std::vector<int>{out.alpha.embed_padic(p, prec).valuation(),
                                          out.beta.embed_padic(p, prec).valuation(),
                                          out.gamma.embed_padic(p, prec).valuation()};
    }
    return out;
}

// ---- Dirichlet series ---------------------------------------------------------------

LSeriesSpec imprimitive_coeffs(const ModFormData& f, long n_terms) {
    if (n_terms < 1) throw DomainError("imprimitive_coeffs needs n_terms >= 1");
    if (f.max_index() < n_terms * n_terms)
        throw DomainError("imprimitive_coeffs needs a_n for n <= " + std::to_string(n_terms * n_terms) + ", have " +
                          std::to_string(f.max_index()));
    LSeriesSpec s;
    s.coeffs.assign(static_cast<std::size_t>(n_terms + 1), Rat(0));
    for (long m = 1; m * m <= n_terms; ++m) {
        if (std::gcd(m, f.level) != 1) continue;
        CycNumber e2 = f.nebentype(m).pow(2);
        if (!e2.is_rational()) throw UnsupportedError("nebentype squared must be rational");
        Rat w = e2.to_rational() * Rat(ipow(m, 2 * f.weight - 2));
        for (long d = 1; m * m * d <= n_terms; ++d)
            s.coeffs[static_cast<std::size_t>(m * m * d)] += w * Rat(f.coeff(d * d));
    }
    s.gamma_r = {2 - f.weight};
    s.gamma_c = {0};
    s.conductor = f.level == 1 ? 1 : f.level * f.level;
    s.weight = 2 * f.weight - 1;
    if (f.level == 1) s.sign = 1;
    s.growth = f.weight - 1;
    s.motivic_shift = f.a() + 1;
    return s;
}

LSeriesSpec symsq_lseries(const ModFormData& f, long n_terms, const DirichletCharacter& chi0) {
    if (f.level != 1) throw UnsupportedError("symsq_lseries is implemented for level 1");
    if (n_terms < 1) throw DomainError("symsq_lseries needs n_terms >= 1");
    if (f.max_index() < n_terms)
        throw DomainError("symsq_lseries needs a_p for p <= " + std::to_string(n_terms) + ", have " +
                          std::to_string(f.max_index()));
    const DirichletCharacter chi = chi0.primitive();
    if (chi.order() > 2) throw UnsupportedError("twist must be quadratic or trivial");
    const std::size_t len = static_cast<std::size_t>(n_terms + 1);
    std::vector<Rat> c(len, Rat(0));
    c[1] = 1;
    std::vector<bool> composite(len, false);
    const int k1 = f.weight - 1;
    for (long p = 2; p <= n_terms; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        for (long q = p * p; q <= n_terms; q += p) composite[static_cast<std::size_t>(q)] = true;
        const Rat x = rational_value(chi, p, "twist");
        const Rat pk = Rat(ipow(p, k1));
        const Rat ap(f.coeff(p));
        const Rat e1 = (ap * ap - pk) * x, e2 = pk * (ap * ap - pk) * x * x, e3 = pk * pk * pk * x * x * x;
        // local coefficients b_r of 1 / (1 - e1 X + e2 X^2 - e3 X^3)
        std::vector<std::pair<long, Rat>> local{{1, Rat(1)}};
        std::vector<Rat> b{Rat(1)};
        for (long pr = p; pr <= n_terms; pr *= p) {
            std::size_t r = b.size();
            Rat v = e1 * b[r - 1];
            if (r >= 2) v -= e2 * b[r - 2];
            if (r >= 3) v += e3 * b[r - 3];
            b.push_back(v);
            local.emplace_back(pr, v);
            if (pr > n_terms / p) break;
        }
        // multiply into every n coprime to p, largest first so each n is visited once
        for (long n = n_terms; n >= 1; --n) {
            if (n % p == 0 || c[static_cast<std::size_t>(n)] == 0) continue;
            for (std::size_t i = 1; i < local.size() && n * local[i].first <= n_terms; ++i)
                c[static_cast<std::size_t>(n * local[i].first)] = c[static_cast<std::size_t>(n)] * local[i].second;
        }
    }
    LSeriesSpec s;
    s.coeffs = std::move(c);
    s.gamma_r = {chi.parity() == 1 ? 2 - f.weight : 1 - f.weight};
    s.gamma_c = {0};
    s.conductor = chi.modulus() * chi.modulus() * chi.modulus();
    s.weight = 2 * f.weight - 1;
    if (chi.modulus() == 1) s.sign = 1;
    s.growth = f.weight - 1;
    s.motivic_shift = f.a() + 1;
    return s;
}

LSeriesSpec riemann_zeta_spec(long n_terms) {
    LSeriesSpec s;
    s.coeffs.assign(static_cast<std::size_t>(n_terms + 1), Rat(1));
    s.coeffs[0] = 0;
    s.gamma_r = {0};
    s.weight = 1;
    s.sign = 1;
    s.poles = {{Rat(1), Rat(1)}, {Rat(0), Rat(-1)}};
    return s;
}

LSeriesSpec dirichlet_spec(const DirichletCharacter& chi0, long n_terms) {
    const DirichletCharacter chi = chi0.primitive();
    if (chi.order() > 2) throw UnsupportedError("dirichlet_spec handles real characters");
    if (chi.modulus() == 1) return riemann_zeta_spec(n_terms);
    LSeriesSpec s;
    s.coeffs.assign(static_cast<std::size_t>(n_terms + 1), Rat(0));
    for (long n = 1; n <= n_terms; ++n) s.coeffs[static_cast<std::size_t>(n)] = rational_value(chi, n, "character");
    s.gamma_r = {chi.parity() == 1 ? 0 : 1};
    s.conductor = chi.modulus();
    s.weight = 1;
    return s;
}

// ---- numerical evaluation -----------------------------------------------------------

namespace {

Real pow10(int e) { return mp::pow(Real(10), e); }

class GammaFactor {
public:
    explicit GammaFactor(const LSeriesSpec& s)
        : r_(s.gamma_r), c_(s.gamma_c), log_n_(mp::log(Real(s.conductor))) {}

    // log of N^{z/2} prod Gamma_R(z + mu) prod Gamma_C(z + nu)
    Complex log_value(const Complex& z) const {
        static const Real log_pi = mp::log(real_pi());
        static const Real log_2 = mp::log(Real(2));
        static const Real log_2pi = mp::log(2 * real_pi());
        Complex acc = z * Complex(log_n_ / 2);
        for (int mu : r_) {
            Complex w = (z + Complex(mu)) * Complex(Real(0.5));
            acc += clgamma(w) - w * Complex(log_pi);
        }
        for (int nu : c_) {
            Complex w = z + Complex(nu);
            acc += clgamma(w) + Complex(log_2) - w * Complex(log_2pi);
        }
        return acc;
    }
    Complex value(const Complex& z) const { return cexp(log_value(z)); }

    Real rightmost_pole() const {
        Real r = -1000000;
        for (int mu : r_) r = std::max(r, Real(-mu));
        for (int nu : c_) r = std::max(r, Real(-nu));
        return r;
    }

private:
    std::vector<int> r_, c_;
    Real log_n_;
};

// Trapezoid nodes of gamma(z) / (z - sigma) on Re z = c, step h.
struct Kernel {
    Real c, h;
    std::vector<Complex> pos;  // k = 0, 1, 2, ...
    std::vector<Complex> neg;  // k = 1, 2, ...

    Kernel(const GammaFactor& g, const Complex& sigma, double offset, Real step, int digits) : h(std::move(step)) {
        c = std::max(sigma.re, g.rightmost_pole()) + Real(offset);
        const Real eps = pow10(-(digits + 15));
        auto node = [&](long k) {
            Complex z(c, h * k);
            return g.value(z) / (z - sigma);
        };
        pos.push_back(node(0));
        Real peak = pos[0].abs();
        for (int dir : {1, -1}) {
            auto& out = dir == 1 ? pos : neg;
            int small = 0;
            for (long k = 1; k < 200000; ++k) {
                Complex v = node(dir * k);
                Real m = v.abs();
                peak = std::max(peak, m);
                out.push_back(std::move(v));
                small = m < eps * peak ? small + 1 : 0;
                if (small >= 4) break;
            }
        }
    }

    // (1 / 2 pi) int gamma(z) x^{-z} / (z - sigma) dy, with step h and with step 2h
    std::pair<Complex, Complex> eval(const Real& x) const {
        const Real lx = mp::log(x);
        const Complex rot(mp::cos(h * lx), -mp::sin(h * lx));
        const Complex rinv = rot.conj();
        Complex odd, even = pos[0];
        Complex w = rot;
        for (std::size_t k = 1; k < pos.size(); ++k) {
            (k % 2 == 0 ? even : odd) += pos[k] * w;
            w *= rot;
        }
        w = rinv;
        for (std::size_t k = 1; k <= neg.size(); ++k) {
            (k % 2 == 0 ? even : odd) += neg[k - 1] * w;
            w *= rinv;
        }
        Complex scale(mp::exp(-c * lx) * h / (2 * real_pi()));
        return {(even + odd) * scale, even * Complex(2) * scale};
    }
};

struct PartialSum {
    Complex value;
    Complex coarse;
    Real truncation;
    long terms = 0;
};

// sum_n a_n t^sigma (1 / 2 pi i) int gamma(z) (n t)^{-z} / (z - sigma) dz
PartialSum partial(const LSeriesSpec& spec, const GammaFactor& g, const Complex& sigma, const Real& t, double offset,
                   const Real& h, int digits) {
    Kernel ker(g, sigma, offset, h, digits);
    const Complex tpow = cpow(Complex(t), sigma);
    const Real eps = pow10(-(digits + 5));
    PartialSum out;
    Real running = 0;
    int quiet = 0;
    const long n_avail = static_cast<long>(spec.coeffs.size()) - 1;
    for (long n = 1;; ++n) {
        if (n > n_avail)
            throw DomainError("numeric_L_value needs Dirichlet coefficients up to n = " + std::to_string(n) +
                              " or more; have " + std::to_string(n_avail));
        auto [gn, gc] = ker.eval(t * n);
        Real bound = gn.abs() * mp::pow(Real(n), Real(spec.growth + 1));
        const Rat& a = spec.coeffs[static_cast<std::size_t>(n)];
        if (a != 0) {
            out.value += gn * Complex(to_real(a));
            out.coarse += gc * Complex(to_real(a));
        }
        running = std::max(running, out.value.abs());
        if (bound < eps * std::max(running, pow10(-30))) {
            if (++quiet >= 5) {
                out.terms = n;
                out.truncation = bound * 10;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    out.value *= tpow;
    out.coarse *= tpow;
    return out;
}

Real step_for(double offset, int digits) {
    return 2 * real_pi() * Real(offset) / (Real(digits + 10) * mp::log(Real(10)));
}

struct LambdaValue {
    Complex value;
    Complex coarse;
    Real truncation;
    long terms = 0;
};

LambdaValue lambda(const LSeriesSpec& spec, const GammaFactor& g, const Complex& s, int sign, const Real& h,
                   const NumericOptions& opt) {
    const Complex dual = Complex(spec.weight) - s;
    PartialSum a = partial(spec, g, s, Real(1), opt.line_offset, h, opt.digits);
    PartialSum b = partial(spec, g, dual, Real(1), opt.line_offset, h, opt.digits);
    LambdaValue out;
    out.value = a.value + Complex(sign) * b.value;
    out.coarse = a.coarse + Complex(sign) * b.coarse;
    Complex polar;
    for (const auto& [r, res] : spec.poles) polar += Complex(to_real(res)) / (s - Complex(to_real(r)));
    out.value += polar;
    out.coarse += polar;
    out.truncation = a.truncation + b.truncation;
    out.terms = std::max(a.terms, b.terms);
    return out;
}

}  // namespace

Complex solve_sign(const LSeriesSpec& spec, const Complex& s, const NumericOptions& opt) {
    if (!spec.poles.empty()) throw DomainError("solve_sign: the sign must be supplied when Lambda has poles");
    GammaFactor g(spec);
    const Real h = step_for(opt.line_offset, opt.digits);
    const Real t0 = Real(23) / 20;
    const Complex dual = Complex(spec.weight) - s;
    Complex a1 = partial(spec, g, s, Real(1), opt.line_offset, h, opt.digits).value;
    Complex at = partial(spec, g, s, t0, opt.line_offset, h, opt.digits).value;
    Complex b1 = partial(spec, g, dual, Real(1), opt.line_offset, h, opt.digits).value;
    Complex bt = partial(spec, g, dual, 1 / t0, opt.line_offset, h, opt.digits).value;
    Complex den = b1 - bt;
    if (den.abs() < pow10(-opt.digits)) throw DomainError("solve_sign: degenerate splitting, pick another s");
    return (at - a1) / den;
}

NumericL numeric_L_value(const LSeriesSpec& spec, const Complex& s, const NumericOptions& opt) {
    if (opt.digits < 5 || opt.digits > kRealDigits - 14)
        throw DomainError("digits must lie in [5, " + std::to_string(kRealDigits - 14) + "]");
    GammaFactor g(spec);
    NumericL out;
    if (spec.sign) {
        out.sign = *spec.sign;
    } else {
        Complex eps = solve_sign(spec, Complex(Real(spec.weight) / 2, Real(1) / 7), opt);
        Real r = mp::round(eps.re);
        if (mp::abs(mp::abs(r) - 1) > 0 || (eps - Complex(r)).abs() > pow10(-opt.digits / 2))
            throw VerificationError("solved sign " + to_string(eps, 15) + " is not +-1; functional equation data inconsistent");
        out.sign = r > 0 ? 1 : -1;
    }
    const Real h = step_for(opt.line_offset, opt.digits);
    LambdaValue lam = lambda(spec, g, s, out.sign, h, opt);
    Complex gs = g.value(s);
    if (gs.abs() == 0) throw DomainError("gamma factor vanishes at s");
    out.value = lam.value / gs;
    // The discretisation error behaves like exp(-2 pi offset / step), so the
    // error at step h is about the square of the relative error at step 2h.
    Real diff = (lam.value - lam.coarse).abs();
    Real scale = std::max(lam.value.abs(), diff);
    Real disc = scale > 0 ? diff * diff / scale : Real(0);
    out.error_estimate = (std::max(disc, lam.truncation) + scale * pow10(-kRealDigits + 6)) / gs.abs();
    out.terms_used = lam.terms;
    out.rigorous = false;
    return out;
}

NumericL symsq_L_value(const ModFormData& f, const DirichletCharacter& eta, int j, const NumericOptions& opt) {
    DirichletCharacter chi = (f.theta * eta).primitive();
    LSeriesSpec spec = symsq_lseries(f, f.max_index(), chi);
    return numeric_L_value(spec, Complex(Real(f.a() + 1 - j)), opt);
}

namespace {

NumericL edge_value(const ModFormData& f, const NumericOptions& opt) {
    if (f.level != 1) throw UnsupportedError("petersson_from_edge is implemented for level 1");
    LSeriesSpec spec = symsq_lseries(f, f.max_index(), DirichletCharacter::trivial(1));
    return numeric_L_value(spec, Complex(Real(f.weight)), opt);
}

Real edge_factor(int k) {
    return to_real(Rat(factorial(k - 1))) / (mp::pow(Real(2), 2 * k - 1) * mp::pow(real_pi(), k + 1));
}

}  // namespace

Real petersson_from_edge(const ModFormData& f, const NumericOptions& opt) {
    return edge_factor(f.weight) * edge_value(f, opt).value.re;
}

// ---- interpolation data -------------------------------------------------------------

EpValue symsq_e_p(const LiftedSatake& lift, const DirichletCharacter& eta, int j) {
    const long p = lift.p;
    DirichletCharacter prim = eta.primitive();
    long m = prim.modulus();
    int n = 0;
    while (m % p == 0) {
        m /= p;
        ++n;
    }
    if (m != 1) throw DomainError("character " + eta.label() + " does not have p-power conductor");
    EpValue out;
    if (n == 0) {
        AlgNumber den = AlgNumber(1) - AlgNumber(Rat(ipow(p, j))) * lift.alpha;
        if (den.is_zero()) throw DomainError("exceptional zero: 1 - p^j alpha vanishes at j = " + std::to_string(j));
        AlgNumber num = AlgNumber(1) - AlgNumber(rpow(Rat(p), -j - 1)) * lift.alpha.inverse();
        out.exact = num / den;
        out.value = out.exact->embed_complex();
        return out;
    }
    AlgNumber base = AlgNumber(Rat(ipow(p, j + 1))) * lift.alpha;
    out.value = gauss_sum(prim.inverse()).embed_complex() * base.pow(-n).embed_complex();
    return out;
}

InterpolationReport interpolation_rhs(const ModFormData& f, long p, int j, const DirichletCharacter& eta,
                                      const NumericOptions& opt) {
    const int a = f.a();
    auto crit = critical_set(a, f.omega_parity(), eta, CritSide::minus);
    if (std::find(crit.begin(), crit.end(), -j) == crit.end())
        throw DomainError("(-" + std::to_string(j) + ", " + eta.label() + ") is not a critical point on the left half");
    InterpolationReport r;
    r.p = p;
    r.j = j;
    for (int c : crit) r.critical_points.push_back(-c);
    std::sort(r.critical_points.begin(), r.critical_points.end());
    LiftedSatake lift = lift_satake(f, p);
    r.e_infty = e_infty(a, j);
    r.e_p = symsq_e_p(lift, eta, j);
    if (eta.primitive().modulus() == 1) {
        auto e = lift.elementary();
        Rat pj = rpow(Rat(p), j);
        r.euler_factor_at_p = 1 - e[0] * pj + e[1] * pj * pj - e[2] * pj * pj * pj;
    }
    r.L = symsq_L_value(f, eta, j, opt);
    r.L_p_removed = r.L.value * Complex(to_real(r.euler_factor_at_p));
    r.product = r.e_infty.embed_complex() * r.e_p.value * r.L_p_removed;
    return r;
}

ClassicalConstant classical_constant(int a, int omega_parity, int j) {
    if (j < 0 || j > a) throw DomainError("classical_constant needs 0 <= j <= a");
    if (omega_parity != 1 && omega_parity != -1) throw DomainError("parity must be +1 or -1");
    ClassicalConstant c;
    c.rational = Rat(omega_parity) * Rat(factorial(a - j)) / Rat(ipow(2, 2 * a + 4));
    c.power_of_2pi = j;
    c.power_of_i = j - (omega_parity == -1 ? 0 : 1);
    return c;
}

// ---- rational recognition ---------------------------------------------------------------

std::string to_string(AlgebraicityStatus s) {
    switch (s) {
        case AlgebraicityStatus::recognized: return "recognized";
        case AlgebraicityStatus::failed: return "failed";
        case AlgebraicityStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

AlgebraicityResult recognize_rational(const Real& x, const Real& known_error, const RecognitionOptions& opt) {
    AlgebraicityResult r;
    r.numeric = x;
    const Real tol = pow10(-opt.tolerance_digits) * std::max(Real(1), mp::abs(x));
    if (known_error > tol) {
        r.status = AlgebraicityStatus::inconclusive;
        r.residual = known_error;
        r.report = "value known to " + to_string(known_error, 3) + ", tolerance " + to_string(tol, 3);
        return r;
    }
    Int h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    Real y = x;
    Real best = mp::abs(x);
    Rat best_q(0);
    for (int it = 0; it < 200; ++it) {
        Real fl = mp::floor(y);
        if (mp::abs(fl) > Real(1e17)) break;
        Int ai(static_cast<long>(fl.convert_to<long long>()));
        Int h = ai * h1 + h2, k = ai * k1 + k2;
        if (k > opt.max_denominator) break;
        h2 = h1; h1 = h; k2 = k1; k1 = k;
        Rat q(h, k);
        q.canonicalize();
        Real res = mp::abs(x - to_real(q));
        if (res < best) {
            best = res;
            best_q = q;
        }
        if (res <= tol) {
            r.status = AlgebraicityStatus::recognized;
            r.value = q;
            r.residual = res;
            r.report = "recognized " + to_string(q) + " with residual " + to_string(res, 3);
            return r;
        }
        Real frac = y - fl;
        if (frac < pow10(-kRealDigits + 4)) break;
        y = 1 / frac;
    }
    r.status = AlgebraicityStatus::failed;
    r.residual = best;
    r.report = "no rational with denominator <= " + std::to_string(opt.max_denominator) + " within " +
               to_string(tol, 3) + "; closest " + to_string(best_q) + " off by " + to_string(best, 3);
    return r;
}

AlgebraicityResult algebraicity_check(const ModFormData& f, int j, const DirichletCharacter& eta,
                                      std::optional<Real> petersson, bool normalise, const NumericOptions& opt,
                                      const RecognitionOptions& ropt) {
    const int a = f.a();
    auto crit = critical_set(a, f.omega_parity(), eta, CritSide::minus);
    if (std::find(crit.begin(), crit.end(), -j) == crit.end())
        throw DomainError("(-" + std::to_string(j) + ", " + eta.label() + ") is not a critical point on the left half");
    if (!(f.theta * eta).primitive().is_trivial())
        throw UnsupportedError("rational recognition is implemented for the untwisted value");
    Real pet, pet_err;
    if (petersson) {
        pet = *petersson;
        pet_err = mp::abs(pet) * pow10(-opt.digits);
    } else if (f.petersson_norm) {
        pet = *f.petersson_norm;
        pet_err = mp::abs(pet) * pow10(-opt.digits);
    } else {
        NumericL e = edge_value(f, opt);
        pet = edge_factor(f.weight) * e.value.re;
        pet_err = edge_factor(f.weight) * e.error_estimate;
    }
    NumericL L = symsq_L_value(f, eta, j, opt);
    Real x = L.value.re / (mp::pow(real_pi(), a + 1) * pet);
    if (normalise) {
        ClassicalConstant c = classical_constant(a, f.omega_parity(), j);
        x *= to_real(c.rational) * mp::pow(2 * real_pi(), c.power_of_2pi);
    }
    Real rel = L.error_estimate / mp::abs(L.value.re) + pet_err / mp::abs(pet);
    AlgebraicityResult r = recognize_rational(x, mp::abs(x) * rel, ropt);
    r.report = "j = " + std::to_string(j) + (normalise ? "" : " (constant omitted)") + ": " + r.report;
    return r;
}

}  // namespace gl3p

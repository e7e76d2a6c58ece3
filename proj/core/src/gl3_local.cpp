#include "gl3p/gl3_local.hpp"

#include <algorithm>

namespace gl3p {

namespace {

// |.|^k evaluated at p
CycNumber abs_power(long p, int k) { return CycNumber(rpow(Rat(p), -k)); }

LocalChar twist_abs(const LocalChar& c, long p, int k) { return {c.value_at_p * abs_power(p, k), c.restriction}; }

int p_power_exponent(long m, long p) {
    int e = 0;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    if (m != 1) return -1;
    return e;
}

void expect_chars(const LocalRepGL3& rep, std::size_t n) {
    if (rep.chars.size() != n)
        throw DomainError(to_string(rep.kind) + " needs " + std::to_string(n) + " inducing characters, got " +
                          std::to_string(rep.chars.size()));
}

}  // namespace

int padic_valuation(const CycNumber& x0, long p) {
    if (x0.is_zero()) throw DomainError("valuation of zero");
    CycNumber x = x0.minimised();
    if (x.is_rational()) return valuation(x.to_rational(), p);
    const long n = x.conductor();
    if ((p - 1) % n == 0) {
        auto e = x.embed_padic(p, 40);
        if (e.is_zero()) throw UnsupportedError("valuation exceeds the working p-adic precision");
        return e.valuation();
    }
    // rational times a root of unity
    for (long k = 0; k < n; ++k) {
        CycNumber y = x * CycNumber::zeta(n, k);
        if (y.is_rational()) return valuation(y.to_rational(), p);
    }
    throw UnsupportedError("no p-adic valuation for " + x0.str() + " at p = " + std::to_string(p) +
                           " (conductor must divide p - 1)");
}

void SatakeParams::validate() const {
    if (!is_prime(p)) throw DomainError("Satake parameters need a prime p");
    if (weight_a < 0) throw DomainError("weight a must be >= 0");
    for (const auto& v : values()) {
        if (v.is_zero()) throw DomainError("Satake parameters must be nonzero");
        if (!cohomological) continue;
        int s = padic_valuation(v, p);
        if (s < -1 - weight_a || s > 1 + weight_a)
            throw DomainError("Satake parameter " + v.str() + " has valuation " + std::to_string(s) +
                              " outside [-1-a, 1+a]");
    }
}

// ---- representations --------------------------------------------------------

std::string to_string(RepKind k) {
    switch (k) {
        case RepKind::supercuspidal: return "supercuspidal";
        case RepKind::steinberg_twist: return "steinberg_twist";
        case RepKind::induced_theta_sc: return "induced_theta_sc";
        case RepKind::induced_theta_st: return "induced_theta_st";
        case RepKind::principal_series: return "principal_series";
    }
    return "?";
}

RepKind rep_kind_from_string(const std::string& s) {
    for (auto k : {RepKind::supercuspidal, RepKind::steinberg_twist, RepKind::induced_theta_sc,
                   RepKind::induced_theta_st, RepKind::principal_series})
        if (to_string(k) == s) return k;
    throw DomainError("unknown representation kind '" + s + "'");
}

LocalRepGL3 LocalRepGL3::principal_series(long p, int a, LocalChar c1, LocalChar c2, LocalChar c3) {
    return {RepKind::principal_series, p, a, {std::move(c1), std::move(c2), std::move(c3)}};
}

LocalRepGL3 LocalRepGL3::unramified(const SatakeParams& s) {
    return principal_series(s.p, s.weight_a, LocalChar::unramified(s.alpha), LocalChar::unramified(s.beta),
                            LocalChar::unramified(s.gamma));
}

LocalRepGL3 LocalRepGL3::steinberg_twist(long p, int a, LocalChar lambda) {
    return {RepKind::steinberg_twist, p, a, {std::move(lambda)}};
}

LocalRepGL3 LocalRepGL3::induced_theta_sc(long p, int a, LocalChar theta, LocalChar omega_sigma) {
    return {RepKind::induced_theta_sc, p, a, {std::move(theta), std::move(omega_sigma)}};
}

LocalRepGL3 LocalRepGL3::induced_theta_st(long p, int a, LocalChar theta, LocalChar mu) {
    return {RepKind::induced_theta_st, p, a, {std::move(theta), std::move(mu)}};
}

LocalRepGL3 LocalRepGL3::supercuspidal(long p, int a, LocalChar omega) {
    return {RepKind::supercuspidal, p, a, {std::move(omega)}};
}

LocalChar LocalRepGL3::central_character() const {
    switch (kind) {
        case RepKind::supercuspidal:
            expect_chars(*this, 1);
            return chars[0];
        case RepKind::steinberg_twist:
            expect_chars(*this, 1);
            return chars[0] * chars[0] * chars[0];
        case RepKind::induced_theta_sc:
            expect_chars(*this, 2);
            return chars[0] * chars[1];
        case RepKind::induced_theta_st:
            // theta lambda^2 = theta mu^2 |.|^{-1}
            expect_chars(*this, 2);
            return twist_abs(chars[0] * chars[1] * chars[1], p, -1);
        case RepKind::principal_series:
            expect_chars(*this, 3);
            return chars[0] * chars[1] * chars[2];
    }
    throw DomainError("bad representation kind");
}

LocalRepGL3 LocalRepGL3::dual() const {
    LocalRepGL3 d = *this;
    for (auto& c : d.chars) c = c.inverse();
    // lambda^{-1}|.|^{1/2} = mu^{-1} |.|
    if (kind == RepKind::induced_theta_st) d.chars[1] = twist_abs(d.chars[1], p, 1);
    return d;
}

bool same_refinement(const Refinement& a, const Refinement& b) {
    return a.parabolic == b.parabolic && a.value() == b.value() &&
           a.character.restriction.primitive() == b.character.restriction.primitive();
}

std::vector<Refinement> classify_refinements(const LocalRepGL3& rep) {
    std::vector<Refinement> out;
    auto add = [&](int i, const LocalChar& c) {
        if (c.value_at_p.is_zero()) throw DomainError("character value at p must be nonzero");
        out.push_back({i, c, Rat(padic_valuation(c.value_at_p, rep.p))});
    };
    const long p = rep.p;
    switch (rep.kind) {
        case RepKind::supercuspidal:
            expect_chars(rep, 1);
            break;
        case RepKind::steinberg_twist: {
            expect_chars(rep, 1);
            const auto& l = rep.chars[0];
            add(1, twist_abs(l, p, 1));
            add(2, twist_abs(l * l, p, 1));
            break;
        }
        case RepKind::induced_theta_sc:
            expect_chars(rep, 2);
            add(1, rep.chars[0]);
            add(2, rep.chars[1]);
            break;
        case RepKind::induced_theta_st: {
            expect_chars(rep, 2);
            const auto& theta = rep.chars[0];
            const auto& mu = rep.chars[1];
            add(1, theta);
            add(1, mu);
            add(2, twist_abs(mu * mu, p, -1));
            add(2, mu * theta);
            break;
        }
        case RepKind::principal_series: {
            expect_chars(rep, 3);
            const auto& c = rep.chars;
            for (const auto& x : c) add(1, x);
            add(2, c[0] * c[1]);
            add(2, c[1] * c[2]);
            add(2, c[2] * c[0]);
            break;
        }
    }
    return out;
}

// ---- recurrence data ---------------------------------------------------------

RefinedData RefinedData::principal(long p, const CycNumber& alpha, const CycNumber& b, const CycNumber& c) {
    return {p, alpha, 0, {CycNumber(1), -(b + c), b * c}};
}

RefinedData RefinedData::steinberg(long p, const CycNumber& alpha, const CycNumber& c) {
    return {p, alpha, 1, {CycNumber(1), -c}};
}

RefinedData RefinedData::supercuspidal(long p, const CycNumber& alpha, int r) {
    if (r < 2) throw DomainError("supercuspidal GL2 representations have conductor >= 2");
    return {p, alpha, r, {CycNumber(1)}};
}

std::vector<CycNumber> RefinedData::b_sequence(int count) const {
    const auto& d = sigma_L_denominator;
    if (d.empty() || d[0] != CycNumber(1)) throw DomainError("L-factor denominator must have constant term 1");
    if (d.size() > 3) throw DomainError("GL2 L-factor denominator has degree at most 2");
    std::vector<CycNumber> b;
    for (int n = 0; n < count; ++n) {
        CycNumber v = n == 0 ? CycNumber(1) : CycNumber(0);
        for (std::size_t k = 1; k < d.size(); ++k)
            if (n >= static_cast<int>(k)) v -= d[k] * b[n - k];
        b.push_back(v);
    }
    return b;
}

CycNumber RefinedData::b(int n) const {
    if (n < 0) return CycNumber(0);
    return b_sequence(n + 1).back();
}

// ---- Hecke eigenvalues and ordinarity ---------------------------------------

HeckeEigenvalues hecke_eigenvalues(const SatakeParams& s, std::optional<CycNumber> omega_at_p) {
    const CycNumber scale(Rat(ipow(s.p, s.weight_a + 1)));
    HeckeEigenvalues h;
    h.a_p1 = scale * (s.alpha + s.beta + s.gamma);
    h.a_p2 = scale * (s.alpha * s.beta + s.beta * s.gamma + s.gamma * s.alpha);
    if (omega_at_p) h.conjugate_symmetric = h.a_p2 == *omega_at_p * h.a_p1.conj();
    return h;
}

OrdinarityResult is_ordinary(const SatakeParams& s, int parabolic) {
    if (parabolic != 1 && parabolic != 2) throw DomainError("parabolic must be 1 or 2");
    auto h = hecke_eigenvalues(s);
    const CycNumber& e = parabolic == 1 ? h.a_p1 : h.a_p2;
    if (e.is_zero()) return {false, "Hecke eigenvalue is zero"};
    int v = padic_valuation(e, s.p);
    if (v == 0) return {true, "Hecke eigenvalue is a p-adic unit"};
    return {false, "Hecke eigenvalue has valuation " + std::to_string(v)};
}

namespace {

std::optional<Refinement> minimal_slope_refinement(const LocalRepGL3& rep, int parabolic) {
    if (parabolic != 1 && parabolic != 2) throw DomainError("parabolic must be 1 or 2");
    for (const auto& r : classify_refinements(rep))
        if (r.parabolic == parabolic && r.slope == -1 - rep.weight_a) return r;
    return std::nullopt;
}

}  // namespace

OrdinarityResult is_ordinary(const LocalRepGL3& rep, int parabolic) {
    if (rep.kind == RepKind::supercuspidal) {
        if (parabolic != 1 && parabolic != 2) throw DomainError("parabolic must be 1 or 2");
        return {false, "no refinements"};
    }
    auto r = minimal_slope_refinement(rep, parabolic);
    if (!r) return {false, "no refinement of slope " + std::to_string(-1 - rep.weight_a)};
    if (r->ramified()) return {false, "the refinement of slope " + std::to_string(-1 - rep.weight_a) + " is ramified"};
    return {true, "unramified refinement of slope " + std::to_string(-1 - rep.weight_a)};
}

bool is_nearly_ordinary(const LocalRepGL3& rep, int parabolic) {
    return minimal_slope_refinement(rep, parabolic).has_value();
}

std::vector<CycNumber> local_L_factor(const SatakeParams& s) {
    const auto& a = s.alpha;
    const auto& b = s.beta;
    const auto& c = s.gamma;
    return {CycNumber(1), -(a + b + c), a * b + b * c + c * a, -(a * b * c)};
}

// ---- critical values and Euler factors --------------------------------------

std::vector<int> critical_set(int a, int omega_parity, const DirichletCharacter& eta, CritSide side) {
    if (a < 0) throw DomainError("weight a must be >= 0");
    if (omega_parity != 1 && omega_parity != -1) throw DomainError("parity must be +1 or -1");
    const int sign = omega_parity * eta.parity();
    std::vector<int> out;
    int lo = side == CritSide::minus ? -a : 1;
    int hi = side == CritSide::minus ? 0 : 1 + a;
    int want = side == CritSide::minus ? sign : -sign;
    for (int j = lo; j <= hi; ++j)
        if ((j % 2 == 0 ? 1 : -1) == want) out.push_back(j);
    return out;
}

SymbolicPeriod e_infty(int a, int j) {
    if (j < 0 || j > a) throw DomainError("e_infty needs 0 <= j <= a");
    return SymbolicPeriod(Rat(2), j - a - 1, a + 1 - j);
}

CycNumber e_p(const CycNumber& alpha, long p, const DirichletCharacter& eta, int j, int a, int omega_parity) {
    if (!is_prime(p)) throw DomainError("e_p needs a prime");
    if (alpha.is_zero()) throw DomainError("refinement value must be nonzero");
    auto prim = eta.primitive();
    int n = p_power_exponent(prim.modulus(), p);
    if (n < 0) throw DomainError("character " + eta.label() + " does not have p-power conductor");
    auto crit = critical_set(a, omega_parity, eta, CritSide::minus);
    if (std::find(crit.begin(), crit.end(), -j) == crit.end())
        throw DomainError("(-" + std::to_string(j) + ", " + eta.label() + ") is not a critical point on the left half");
    if (n == 0) {
        CycNumber pj(Rat(ipow(p, j)));
        CycNumber den = CycNumber(1) - pj * alpha;
        if (den.is_zero())
            throw DomainError("exceptional zero: 1 - p^j alpha vanishes at j = " + std::to_string(j));
        CycNumber num = CycNumber(1) - CycNumber(rpow(Rat(p), -j - 1)) * alpha.inverse();
        return num / den;
    }
    CycNumber base = CycNumber(Rat(ipow(p, j + 1))) * alpha;
    return gauss_sum(prim.inverse()) * base.pow(-n);
}

E0Result E0_factor(const LocalRepGL3& rep, const Refinement& refinement, const CycNumber& chi_at_p) {
    E0Result r;
    if (refinement.parabolic == 1) {
        switch (rep.kind) {
            case RepKind::principal_series: r.irreducibly_induced = true; break;
            case RepKind::induced_theta_sc:
            case RepKind::induced_theta_st:
                r.irreducibly_induced = refinement.value() == rep.chars.at(0).value_at_p &&
                                        refinement.character.restriction == rep.chars.at(0).restriction;
                break;
            default: break;
        }
    }
    if (r.irreducibly_induced)
        r.value = CycNumber(1) - rep.central_character().value_at_p * chi_at_p / refinement.value();
    r.padic_unit = !r.value.is_zero() && padic_valuation(r.value, rep.p) == 0;
    bool p1_ordinary =
        refinement.parabolic == 1 && refinement.slope == -1 - rep.weight_a && !refinement.ramified();
    if (p1_ordinary && !r.padic_unit)
        throw VerificationError("E0 factor " + r.value.str() + " is not a p-adic unit for an ordinary refinement");
    return r;
}

CycNumber whittaker_torus_value(const RefinedData& rd, int m, int n) {
    if (m < 0 || n < 0) return CycNumber(0);
    return rd.alpha.pow(m + n) * CycNumber(rpow(Rat(rd.p), -m - n)) * rd.b(n);
}

// ---- level combinatorics ----------------------------------------------------

long level_intersection_index_enumerated(long p, int n, int t) {
    if (!is_prime(p)) throw DomainError("level index needs a prime");
    if (n < 1 || t < n) throw DomainError("level index needs 1 <= n <= t");
    const long pt = ipow_long(p, t), pn = ipow_long(p, n);
    if (pt > 250) throw UnsupportedError("enumeration modulus p^t too large");
    // (a, b, z) with a, z units mod p^t and b arbitrary; c = 0, d = 1 are forced.
    long full = 0, sub = 0;
    for (long a = 0; a < pt; ++a) {
        if (a % p == 0) continue;
        for (long z = 0; z < pt; ++z) {
            if (z % p == 0) continue;
            for (long b = 0; b < pt; ++b) {
                ++full;
                if (b % pn == 0 && (a - z) % pn == 0) ++sub;
            }
        }
    }
    return full / sub;
}

long level_intersection_index(long p, int n, int t) {
    if (!is_prime(p)) throw DomainError("level index needs a prime");
    if (n < 1 || t < n) throw DomainError("level index needs 1 <= n <= t");
    long formula = ipow_long(p, 2 * n - 1) * (p - 1);
    if (ipow_long(p, t) <= 200) {
        long counted = level_intersection_index_enumerated(p, n, t);
        if (counted != formula)
            throw VerificationError("level index " + std::to_string(formula) + " disagrees with enumeration " +
                                    std::to_string(counted));
    }
    return formula;
}

}  // namespace gl3p

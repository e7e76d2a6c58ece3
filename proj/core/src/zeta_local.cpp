#include "gl3p/zeta_local.hpp"

#include <algorithm>

#include "gl3p/linalg.hpp"

namespace gl3p {

namespace {

CycNumber p_power(long p, int k) { return CycNumber(rpow(Rat(p), k)); }

int p_power_exponent(long m, long p) {
    int e = 0;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    return m == 1 ? e : -1;
}

LocalChar unr(const CycNumber& v) { return LocalChar::unramified(v); }

// (1 - x1 X1^e1 X2^e2) as a Laurent polynomial
LaurentPoly one_minus(const CycNumber& c, int e1, int e2) { return LaurentPoly(1) - LaurentPoly::monomial(c, e1, e2); }

// Connection polynomial 1 + c_1 x + ... + c_L x^L of the shortest linear
// recurrence generating s.
std::vector<CycNumber> berlekamp_massey(const std::vector<CycNumber>& s) {
    std::vector<CycNumber> c{CycNumber(1)}, b{CycNumber(1)};
    std::size_t len = 0, m = 1;
    CycNumber last(1);
    for (std::size_t n = 0; n < s.size(); ++n) {
        CycNumber d = s[n];
        for (std::size_t i = 1; i <= len && i < c.size(); ++i) d += c[i] * s[n - i];
        if (d.is_zero()) {
            ++m;
            continue;
        }
        auto t = c;
        CycNumber f = d / last;
        if (c.size() < b.size() + m) c.resize(b.size() + m, CycNumber(0));
        for (std::size_t i = 0; i < b.size(); ++i) c[i + m] -= f * b[i];
        if (2 * len <= n) {
            len = n + 1 - len;
            b = std::move(t);
            last = d;
            m = 1;
        } else {
            ++m;
        }
    }
    c.resize(len + 1, CycNumber(0));
    return c;
}

// Row a of the double sum as a rational function in X2 times X1^a.
LaurentRational row_function(const std::vector<CycNumber>& s, int a) {
    auto c = berlekamp_massey(s);
    const std::size_t len = c.size() - 1;
    if (2 * len + 8 > s.size()) throw DomainError("no closed-form tail: row " + std::to_string(a) + " has no short recurrence");
    LaurentPoly num, den;
    for (std::size_t k = 0; k < len; ++k) {
        CycNumber v(0);
        for (std::size_t i = 0; i <= k; ++i) v += c[i] * s[k - i];
        num += LaurentPoly::monomial(v, a, static_cast<int>(k));
    }
    for (std::size_t k = 0; k <= len; ++k) den += LaurentPoly::monomial(c[k], 0, static_cast<int>(k));
    return {num, den};
}

bool all_zero(const std::vector<CycNumber>& v) {
    return std::all_of(v.begin(), v.end(), [](const CycNumber& x) { return x.is_zero(); });
}

// ratio r with next = r * row, if one exists
std::optional<CycNumber> row_ratio(const std::vector<CycNumber>& row, const std::vector<CycNumber>& next) {
    auto it = std::find_if(row.begin(), row.end(), [](const CycNumber& x) { return !x.is_zero(); });
    if (it == row.end()) return all_zero(next) ? std::optional<CycNumber>(CycNumber(0)) : std::nullopt;
    CycNumber r = next[static_cast<std::size_t>(it - row.begin())] / *it;
    for (std::size_t b = 0; b < row.size(); ++b)
        if (next[b] != r * row[b]) return std::nullopt;
    return r;
}

LaurentRational outer_factor(const ZetaInput& zi) {
    Rat p(zi.p);
    return LaurentRational(CycNumber(1 / (rpow(p, 2 * zi.depth()) * (1 - 1 / (p * p)))));
}

CycNumber prefactor(const ZetaInput& zi) {
    Rat p(zi.p);
    int n = zi.n();
    Rat d = rpow(p, 2 * zi.depth() + n) * (1 - 1 / p) * (1 - 1 / (p * p));
    return zi.alpha.pow(n) / CycNumber(d);
}

// L(sigma x alpha, X2) = 1 / den(alpha X2)
LaurentRational sigma_times_alpha(const ZetaInput& zi) {
    auto rd = zi.refined();
    LaurentPoly den;
    for (std::size_t k = 0; k < rd.sigma_L_denominator.size(); ++k)
        den += LaurentPoly::monomial(rd.sigma_L_denominator[k] * zi.alpha.pow(static_cast<long>(k)), 0,
                                     static_cast<int>(k));
    return {LaurentPoly(1), den};
}

LaurentPoly shifted(const LaurentPoly& f, int s1, int s2) { return f * LaurentPoly::monomial(1, s1, s2); }

}  // namespace

// ---- input ---------------------------------------------------------------------

ZetaInput ZetaInput::principal(long p, const CycNumber& alpha, const CycNumber& b, const CycNumber& c,
                               DirichletCharacter eta1) {
    ZetaInput z;
    z.p = p;
    z.alpha = alpha;
    z.sigma = SigmaKind::principal;
    z.sigma_params = {b, c};
    z.eta1 = std::move(eta1);
    return z;
}

ZetaInput ZetaInput::steinberg(long p, const CycNumber& alpha, const CycNumber& c, DirichletCharacter eta1) {
    ZetaInput z;
    z.p = p;
    z.alpha = alpha;
    z.sigma = SigmaKind::steinberg;
    z.sigma_params = {c};
    z.eta1 = std::move(eta1);
    return z;
}

int ZetaInput::eta_exponent() const {
    auto prim = eta1.primitive();
    int e = p_power_exponent(prim.modulus(), p);
    if (e < 0) throw DomainError("eta1 must have p-power conductor");
    return e;
}

int ZetaInput::n() const { return std::max(1, eta_exponent()); }

int ZetaInput::depth() const {
    int r = sigma == SigmaKind::steinberg ? 1 : 0;
    int d = R.value_or(std::max(n(), r));
    if (d < n()) throw DomainError("Schwartz depth R must be at least n");
    return d;
}

void ZetaInput::validate() const {
    if (!is_prime(p)) throw DomainError("p must be prime");
    if (alpha.is_zero()) throw DomainError("alpha must be nonzero");
    std::size_t want = sigma == SigmaKind::principal ? 2 : 1;
    if (sigma_params.size() != want) throw DomainError("wrong number of sigma parameters");
    for (const auto& x : sigma_params)
        if (x.is_zero()) throw DomainError("sigma parameters must be nonzero");
    if (!eta2_at_p.primitive().is_trivial()) throw UnsupportedError("only trivial eta2 at p is supported");
    if (omega_parity != 1 && omega_parity != -1) throw DomainError("omega parity must be +1 or -1");
    (void)depth();
}

RefinedData ZetaInput::refined() const {
    validate();
    if (sigma == SigmaKind::principal) return RefinedData::principal(p, alpha, sigma_params[0], sigma_params[1]);
    return RefinedData::steinberg(p, alpha, sigma_params[0]);
}

LocalRepGL3 ZetaInput::rep() const {
    validate();
    if (sigma == SigmaKind::principal)
        return LocalRepGL3::principal_series(p, weight_a, unr(alpha), unr(sigma_params[0]), unr(sigma_params[1]));
    return LocalRepGL3::induced_theta_st(p, weight_a, unr(alpha), unr(sigma_params[0]));
}

CycNumber ZetaInput::central_value() const { return rep().central_character().value_at_p; }

// ---- Y ------------------------------------------------------------------------

CycNumber unit_integral(long p, const DirichletCharacter& eta, int a) {
    auto prim = eta.primitive();
    int n = p_power_exponent(prim.modulus(), p);
    if (n < 0) throw DomainError("unit_integral needs a character of p-power conductor");
    if (n > 0) {
        if (a != -n) return CycNumber(0);
        Rat pn(ipow(p, n));
        return gauss_sum(prim.inverse()) / CycNumber(pn * (1 - Rat(1, p)));
    }
    if (a >= 0) return CycNumber(1);
    if (a == -1) return CycNumber(Rat(-1, p - 1));
    return CycNumber(0);
}

CycNumber Y_coefficient(const ZetaInput& zi, int a, int b) {
    const int n = zi.n();
    CycNumber ia = unit_integral(zi.p, zi.eta1, a);
    if (ia.is_zero()) return ia;
    auto w = whittaker_torus_value(zi.refined(), n + a, b);
    return w * p_power(zi.p, a + b) * ia;
}

LaurentRational Y_bruteforce(const ZetaInput& zi) {
    zi.validate();
    const int n = zi.n();
    const int terms = 40, rows_after = 14, confirm = 8;
    const int a_lo = -n - 3, a_hi = -n + rows_after;
    auto rd = zi.refined();
    for (int b = -3; b < 0; ++b)
        if (!whittaker_torus_value(rd, n, b).is_zero()) throw DomainError("torus values not supported in b >= 0");

    std::vector<std::vector<CycNumber>> rows;
    for (int a = a_lo; a <= a_hi; ++a) {
        // W(diag(p^{n+a+b}, p^b, 1)) p^{a+b} I(a)
        CycNumber ia = unit_integral(zi.p, zi.eta1, a);
        std::vector<CycNumber> row;
        for (int b = 0; b < terms; ++b)
            row.push_back(ia.is_zero() ? ia : whittaker_torus_value(rd, n + a, b) * p_power(zi.p, a + b) * ia);
        rows.push_back(std::move(row));
    }
    for (int i = 0; i < 3; ++i)
        if (!all_zero(rows[i])) throw DomainError("no closed-form tail: support is not bounded below");

    // first row from which the rows are geometric in X1
    const int count = static_cast<int>(rows.size());
    int start = -1;
    CycNumber ratio(0);
    for (int i = 3; i + confirm < count && start < 0; ++i) {
        auto r = row_ratio(rows[i], rows[i + 1]);
        if (!r) continue;
        bool ok = true;
        for (int k = i + 1; k + 1 < count && ok; ++k) {
            auto rk = row_ratio(rows[k], rows[k + 1]);
            ok = rk && *rk == *r;
        }
        if (ok) {
            start = i;
            ratio = *r;
        }
    }
    if (start < 0) throw DomainError("no closed-form tail: rows do not become geometric");

    LaurentRational sum(0);
    auto add = [&](const LaurentRational& f) {
        if (f.numerator().is_zero()) return;
        if (sum.numerator().is_zero()) {
            sum = f;
        } else if (sum.denominator() == f.denominator()) {
            sum = LaurentRational(sum.numerator() + f.numerator(), sum.denominator());
        } else {
            sum = sum + f;
        }
    };
    for (int i = 0; i < start; ++i)
        if (!all_zero(rows[i])) add(row_function(rows[i], a_lo + i));
    if (!all_zero(rows[start])) {
        auto tail = row_function(rows[start], a_lo + start);
        add(LaurentRational(tail.numerator(), tail.denominator() * one_minus(ratio, 1, 0)));
    }
    return outer_factor(zi) * sum;
}

LaurentRational Y_closed_form(const ZetaInput& zi) {
    zi.validate();
    const long p = zi.p;
    const int n = zi.n();
    Rat pr(p);
    Rat d = rpow(pr, 2 * zi.depth()) * (1 - 1 / pr) * (1 - 1 / (pr * pr));
    if (zi.eta_exponent() == 0) {
        // alpha / (p^{2R+1}(1-p^-1)(1-p^-2)) (1 - alpha^-1 p^-1 X1^-1) / (1 - alpha X1)
        CycNumber k = zi.alpha / CycNumber(d * pr);
        LaurentRational f(LaurentPoly::monomial(k, 0, 0) * one_minus(zi.alpha.inverse() / CycNumber(pr), -1, 0),
                          one_minus(zi.alpha, 1, 0));
        return f * sigma_times_alpha(zi);
    }
    CycNumber g = gauss_sum(zi.eta1.primitive().inverse());
    CycNumber k = g / CycNumber(d * rpow(pr, 2 * n));
    return LaurentRational(LaurentPoly::monomial(k, -n, 0)) * sigma_times_alpha(zi);
}

CycNumber exterior_square_L_at_zero(const ZetaInput& zi) {
    zi.validate();
    CycNumber den;
    if (zi.sigma == SigmaKind::principal) {
        const auto& b = zi.sigma_params[0];
        const auto& c = zi.sigma_params[1];
        den = (CycNumber(1) - zi.alpha * b) * (CycNumber(1) - zi.alpha * c) * (CycNumber(1) - b * c);
    } else {
        // Langlands parameter alpha + sp(2) x lambda, with det = lambda^2
        const auto& c = zi.sigma_params[0];
        den = (CycNumber(1) - zi.alpha * c) * (CycNumber(1) - c * c * CycNumber(zi.p));
    }
    if (den.is_zero()) throw DomainError("L(wedge^2, 0) has a pole");
    return den.inverse();
}

CycNumber E0_value(const ZetaInput& zi) {
    auto rep = zi.rep();
    for (const auto& r : classify_refinements(rep))
        if (r.parabolic == 1 && !r.ramified() && r.value() == zi.alpha) return E0_factor(rep, r).value;
    throw DomainError("alpha is not a P1-refinement of the representation");
}

CycNumber Y_closed_form(const ZetaInput& zi, int j) {
    zi.validate();
    CycNumber ep = e_p(zi.alpha, zi.p, zi.eta1, j, zi.weight_a, zi.omega_parity);
    return prefactor(zi) * ep * E0_value(zi) * exterior_square_L_at_zero(zi);
}

CycNumber specialize_at(const LaurentRational& f, long p, int j) {
    return f.specialize(CycNumber(rpow(Rat(p), j)), CycNumber(1));
}

// ---- gamma factors and Z --------------------------------------------------------

LaurentRational gamma_factor(const std::vector<CycNumber>& params, long p) {
    LaurentPoly num(1), den(1);
    for (const auto& a : params) {
        if (a.is_zero()) throw DomainError("Satake parameters must be nonzero");
        num = num * one_minus(a, 1, 0);
        den = den * one_minus(a.inverse() / CycNumber(p), -1, 0);
    }
    return {num, den};
}

LaurentRational rankin_selberg_gamma(const std::vector<CycNumber>& params, long p, const CycNumber& twist) {
    std::vector<CycNumber> tw;
    for (const auto& a : params) tw.push_back(a * twist);
    // T = p^{-(s1 - s2 + 1/2)} = p^{-1} X2^{-1}
    return gamma_factor(tw, p).substitute(LaurentPoly::monomial(CycNumber(Rat(1, p)), 0, -1), LaurentPoly::x2());
}

LaurentRational rankin_selberg_gamma(const ZetaInput& zi) {
    zi.validate();
    if (zi.sigma != SigmaKind::principal) throw UnsupportedError("gamma factor of a ramified representation");
    std::vector<CycNumber> params{zi.alpha, zi.sigma_params[0], zi.sigma_params[1]};
    return rankin_selberg_gamma(params, zi.p, zi.central_value().inverse());
}

LaurentRational Z_from_Y(const LaurentRational& y, const LaurentRational& gamma) {
    if (gamma.numerator().is_zero()) throw DomainError("gamma factor vanishes identically");
    return y / gamma;
}

CycNumber Z_from_Y(const CycNumber& y, const CycNumber& gamma) {
    if (gamma.is_zero()) throw DomainError("gamma factor vanishes at the point");
    return y / gamma;
}

CycNumber Z_closed_form(const ZetaInput& zi, int j) {
    zi.validate();
    if (zi.sigma != SigmaKind::principal) throw UnsupportedError("epsilon factor of a ramified representation");
    CycNumber ep = e_p(zi.alpha, zi.p, zi.eta1, j, zi.weight_a, zi.omega_parity);
    CycNumber w = zi.central_value();
    CycNumber l(1);
    for (const auto& a : {zi.alpha, zi.sigma_params[0], zi.sigma_params[1]}) {
        CycNumber d = CycNumber(1) - a / (w * CycNumber(zi.p));
        if (d.is_zero()) throw DomainError("L(Pi x omega^{-1}, 1) has a pole");
        l *= d.inverse();
    }
    return prefactor(zi) * ep * E0_value(zi) * l;
}

LaurentRational Z_normalized(const LaurentRational& z, const std::vector<CycNumber>& params, long p,
                             const CycNumber& chi1, const CycNumber& chi2) {
    LaurentPoly inv(1);
    CycNumber v = chi1 / (chi2 * CycNumber(p));
    for (const auto& a : params) inv = inv * one_minus(a * chi1, 1, 0) * one_minus(a * v, 0, -1);
    return z * LaurentRational(inv);
}

// ---- spherical data -------------------------------------------------------------

CycNumber schur_polynomial(const std::vector<int>& lambda, const std::vector<CycNumber>& xs) {
    const int vars = static_cast<int>(xs.size());
    int top = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i] < 0 || (i > 0 && lambda[i] > lambda[i - 1])) throw DomainError("partition must be decreasing");
        top = std::max(top, lambda[i]);
    }
    if (static_cast<int>(std::count_if(lambda.begin(), lambda.end(), [](int x) { return x > 0; })) > vars)
        return CycNumber(0);
    const int deg = top + static_cast<int>(lambda.size());
    // complete homogeneous h_k, k <= deg, by adding one variable at a time
    std::vector<CycNumber> h(deg + 1, CycNumber(0));
    h[0] = 1;
    for (const auto& x : xs)
        for (int k = 1; k <= deg; ++k) h[k] += x * h[k - 1];
    const int l = static_cast<int>(lambda.size());
    Matrix<CycNumber> m(l, std::vector<CycNumber>(l, CycNumber(0)));
    for (int i = 0; i < l; ++i)
        for (int k = 0; k < l; ++k) {
            int idx = lambda[i] - i + k;
            if (idx >= 0 && idx <= deg) m[i][k] = h[idx];
        }
    return determinant(m);
}

LaurentRational reconstruct_bivariate(const std::function<CycNumber(int, int)>& coeff, int N, int bound) {
    if (N < 4 * bound + 2) throw DomainError("truncation too short for the degree bound");
    // unknowns: P_{ik} (bound+1)^2, then Q_{ik} except Q_00 = 1
    const int side = bound + 1, np = side * side, nq = side * side - 1;
    std::vector<std::vector<CycNumber>> c(N + 1, std::vector<CycNumber>(N + 1, CycNumber(0)));
    for (int i = 0; i <= N; ++i)
        for (int k = 0; i + k <= N; ++k) c[i][k] = coeff(i, k);
    auto q_index = [&](int i, int k) { return np + i * side + k - 1; };
    Matrix<CycNumber> a;
    std::vector<CycNumber> rhs;
    for (int i = 0; i <= N; ++i) {
        for (int k = 0; i + k <= N; ++k) {
            // P_{ik} - sum_{u,v} Q_{uv} c_{i-u, k-v} = c_{ik}
            std::vector<CycNumber> row(np + nq, CycNumber(0));
            if (i <= bound && k <= bound) row[i * side + k] = 1;
            for (int u = 0; u <= std::min(i, bound); ++u)
                for (int v = 0; v <= std::min(k, bound); ++v)
                    if (u + v > 0) row[q_index(u, v)] = -c[i - u][k - v];
            a.push_back(std::move(row));
            rhs.push_back(c[i][k]);
        }
    }
    auto x = solve(a, rhs, np + nq);
    if (!x) throw DomainError("truncated series does not fit the degree bounds");
    LaurentPoly num, den(1);
    for (int i = 0; i <= bound; ++i)
        for (int k = 0; k <= bound; ++k) {
            num += LaurentPoly::monomial((*x)[i * side + k], i, k);
            if (i + k > 0) den += LaurentPoly::monomial((*x)[q_index(i, k)], i, k);
        }
    return {num, den};
}

namespace {

// coefficient of U^i V^k in sum_mu s_mu(alpha) s_mu(U, V)
CycNumber cauchy_coefficient(const std::vector<CycNumber>& alpha, int i, int k) {
    // s_{(m1, m2)}(U, V) = (UV)^{m2} (U^{m1-m2} + ... + V^{m1-m2})
    // so U^i V^k appears once for every m2 <= min(i, k), with m1 = i + k - m2
    CycNumber acc(0);
    for (int m2 = 0; m2 <= std::min(i, k); ++m2) acc += schur_polynomial({i + k - m2, m2, 0}, alpha);
    return acc;
}

}  // namespace

LaurentRational spherical_Z(const SatakeParams& s, const CycNumber& chi1, const CycNumber& chi2, int N) {
    auto alpha = s.values();
    CycNumber v = chi1 / (chi2 * CycNumber(s.p));
    // variables X1 and W = X2^{-1}
    auto coeff = [&](int i, int k) { return cauchy_coefficient(alpha, i, k) * chi1.pow(i) * v.pow(k); };
    auto f = reconstruct_bivariate(coeff, N);
    return f.substitute(LaurentPoly::x1(), LaurentPoly::monomial(1, 0, -1));
}

LaurentRational spherical_Y(const SatakeParams& s, const CycNumber& chi2, int N) {
    auto alpha = s.values();
    CycNumber t = chi2 / s.central_value();
    auto coeff = [&](int a, int b) { return schur_polynomial({a + b, b, 0}, alpha) * t.pow(b); };
    auto f = reconstruct_bivariate(coeff, N);
    return f / LaurentRational(one_minus(chi2, 1, 1));
}

std::optional<LaurentPoly> laurent_divide(const LaurentPoly& n, const LaurentPoly& d) {
    if (d.is_zero()) throw DomainError("division by the zero polynomial");
    if (n.is_zero()) return LaurentPoly();
    auto [d1, d1h] = d.degree_range(0);
    auto [d2, d2h] = d.degree_range(1);
    auto [n1, n1h] = n.degree_range(0);
    auto [n2, n2h] = n.degree_range(1);
    (void)d1h, (void)d2h, (void)n1h, (void)n2h;
    LaurentPoly dd = shifted(d, -d1, -d2), r = shifted(n, -n1, -n2), q;
    const auto lead = *dd.terms().rbegin();
    while (!r.is_zero()) {
        const auto& [e, c] = *r.terms().rbegin();
        int s1 = e.first - lead.first.first, s2 = e.second - lead.first.second;
        if (s1 < 0 || s2 < 0) return std::nullopt;
        auto m = LaurentPoly::monomial(c / lead.second, s1, s2);
        q += m;
        r -= m * dd;
    }
    return shifted(q, n1 - d1, n2 - d2);
}

}  // namespace gl3p

#include "gl3p/eisenstein.hpp"

#include <cmath>
#include <numeric>

namespace gl3p {

namespace {

using cd = std::complex<double>;

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

// B_k(x) = sum_i binom(k, i) B_i x^{k-i}
Rat bernoulli_poly(int k, const Rat& x) {
    Rat s = 0;
    Int binom = 1;
    for (int i = 0; i <= k; ++i) {
        s += Rat(binom) * bernoulli(i) * rpow(x, k - i);
        binom = binom * (k - i) / (i + 1);
    }
    return s;
}

cd to_cd(const CycNumber& x) { return x.embed_complex().to_std(); }

// sum_{n >= N} (w + n)^{-k} by Euler-Maclaurin.
cd hurwitz_tail(cd w, long N, int k) {
    cd z = w + static_cast<double>(N);
    cd s = std::pow(z, 1 - k) / static_cast<double>(k - 1) + std::pow(z, -k) / 2.0;
    double rising = k;  // (k)_{2m-1}
    double fact = 2;    // (2m)!
    for (int m = 1; m <= 8; ++m) {
        double b = bernoulli(2 * m).get_d();
        s += b / fact * rising * std::pow(z, -k - 2 * m + 1);
        rising *= (k + 2 * m - 1) * (k + 2 * m);
        fact *= (2 * m + 1) * (2 * m + 2);
    }
    return s;
}

}  // namespace

// ---- SchwartzData ---------------------------------------------------------

SchwartzData::SchwartzData(long modulus) : m_(modulus) {
    if (modulus < 1) throw DomainError("Schwartz data: modulus must be positive");
    factors_ = modulus == 1 ? std::vector<std::pair<long, int>>{} : factorize(modulus);
    values_.assign(static_cast<std::size_t>(modulus * modulus), CycNumber(0));
}

SchwartzData SchwartzData::unit() { return point(1, 0, 0); }

SchwartzData SchwartzData::point(long modulus, long a, long b, const CycNumber& value) {
    SchwartzData s(modulus);
    s.set(a, b, value);
    return s;
}

SchwartzData SchwartzData::tower(long p, int t) {
    if (!is_prime(p) || t < 0) throw DomainError("tower data needs a prime p and t >= 0");
    return point(ipow_long(p, t), 0, 1);
}

SchwartzData SchwartzData::from_support(long modulus,
                                        const std::vector<std::pair<std::pair<long, long>, CycNumber>>& support) {
    SchwartzData s(modulus);
    for (const auto& [pt, val] : support) s.set(pt.first, pt.second, s.at(pt.first, pt.second) + val);
    return s;
}

const CycNumber& SchwartzData::at(long u, long v) const {
    return values_[static_cast<std::size_t>(mod(u, m_) * m_ + mod(v, m_))];
}

void SchwartzData::set(long u, long v, const CycNumber& value) {
    values_[static_cast<std::size_t>(mod(u, m_) * m_ + mod(v, m_))] = value;
}

bool SchwartzData::is_zero() const {
    for (const auto& x : values_)
        if (!x.is_zero()) return false;
    return true;
}

std::vector<std::pair<std::pair<long, long>, CycNumber>> SchwartzData::support() const {
    std::vector<std::pair<std::pair<long, long>, CycNumber>> out;
    for (long u = 0; u < m_; ++u)
        for (long v = 0; v < m_; ++v)
            if (!at(u, v).is_zero()) out.push_back({{u, v}, at(u, v)});
    return out;
}

SchwartzData SchwartzData::lift(long new_modulus) const {
    if (new_modulus % m_ != 0) throw DomainError("Schwartz data: new modulus must be a multiple");
    SchwartzData s(new_modulus);
    for (long u = 0; u < new_modulus; ++u)
        for (long v = 0; v < new_modulus; ++v) s.set(u, v, at(u, v));
    return s;
}

SchwartzData SchwartzData::translate(const IntMat2& g) const {
    SchwartzData s(m_);
    for (long u = 0; u < m_; ++u)
        for (long v = 0; v < m_; ++v) s.set(u, v, at(u * g[0][0] + v * g[1][0], u * g[0][1] + v * g[1][1]));
    return s;
}

SchwartzData SchwartzData::scale(long lambda) const {
    if (std::gcd(mod(lambda, m_), m_) != 1 && m_ > 1) throw DomainError("scale: lambda must be a unit");
    return translate({{{lambda, 0}, {0, lambda}}});
}

SchwartzData& SchwartzData::operator+=(const SchwartzData& o) {
    if (o.m_ != m_) {
        long m = lcm_long(m_, o.m_);
        *this = lift(m);
        SchwartzData b = o.lift(m);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += b.values_[i];
        return *this;
    }
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

SchwartzData& SchwartzData::operator*=(const CycNumber& c) {
    for (auto& x : values_) x *= c;
    return *this;
}

bool operator==(const SchwartzData& a, const SchwartzData& b) {
    long m = lcm_long(a.m_, b.m_);
    SchwartzData x = a.lift(m), y = b.lift(m);
    return x.values_ == y.values_;
}

// ---- Fourier transform and projectors -------------------------------------

CycNumber fourier_transform(const SchwartzData& phi, long a, long b) {
    long m = phi.modulus();
    CycNumber s(0);
    for (const auto& [pt, val] : phi.support()) s += val * CycNumber::zeta(m, mod(a * pt.second - b * pt.first, m));
    return s * CycNumber(Rat(1, m * m));
}

SchwartzData r_chi_project(const SchwartzData& phi, const DirichletCharacter& chi) {
    long m = lcm_long(phi.modulus(), chi.modulus());
    SchwartzData base = phi.lift(m);
    DirichletCharacter c = chi.lift(m);
    auto units = UnitGroup::of(m)->units();
    SchwartzData out(m);
    for (long a : units) out += c(a).inverse() * base.scale(a);
    out *= CycNumber(Rat(1, static_cast<long>(units.size())));
    return out;
}

std::vector<IntMat2> trace_cosets(long p, int t) {
    long pt = ipow_long(p, t);
    std::vector<IntMat2> out;
    for (long v = 0; v < p; ++v)
        for (long w = 0; w < p; ++w) out.push_back({{{1, 0}, {v * pt, 1 + w * pt}}});
    return out;
}

DistributionResult schwartz_distribution_check(long p, int t) {
    return schwartz_distribution_check(p, t, trace_cosets(p, t));
}

DistributionResult schwartz_distribution_check(long p, int t, const std::vector<IntMat2>& cosets) {
    if (t < 1) throw DomainError("distribution check needs t >= 1");
    long m = ipow_long(p, t + 1);
    SchwartzData upper = SchwartzData::tower(p, t + 1);
    SchwartzData lower = SchwartzData::tower(p, t).lift(m);
    SchwartzData sum(m);
    for (const auto& g : cosets) sum += upper.translate(g);
    DistributionResult r;
    for (long u = 0; u < m; ++u)
        for (long v = 0; v < m; ++v)
            if (sum.at(u, v) != lower.at(u, v)) {
                r.ok = false;
                r.witness = std::make_pair(u, v);
                r.lhs = sum.at(u, v);
                r.rhs = lower.at(u, v);
                return r;
            }
    return r;
}

// ---- q-expansions ---------------------------------------------------------

QExpansion QExpansion::relevel(long new_level) const {
    if (new_level % level != 0) throw DomainError("relevel: new level must be a multiple");
    long f = new_level / level;
    QExpansion q{weight, new_level, std::vector<CycNumber>(static_cast<std::size_t>(truncation() * f + 1))};
    for (std::size_t n = 0; n < coeffs.size(); ++n) q.coeffs[n * static_cast<std::size_t>(f)] = coeffs[n];
    return q;
}

cd QExpansion::evaluate(cd tau) const {
    cd q = std::exp(cd(0, 2 * M_PI) * tau / static_cast<double>(level));
    cd s = 0, qn = 1;
    for (const auto& c : coeffs) {
        if (!c.is_zero()) s += to_cd(c) * qn;
        qn *= q;
    }
    return s;
}

bool operator==(const QExpansion& a, const QExpansion& b) {
    if (a.weight != b.weight) return false;
    long m = lcm_long(a.level, b.level);
    QExpansion x = a.relevel(m), y = b.relevel(m);
    std::size_t n = std::min(x.coeffs.size(), y.coeffs.size());
    for (std::size_t i = 0; i < n; ++i)
        if (x.coeffs[i] != y.coeffs[i]) return false;
    return true;
}

QExpansion qexp_eisenstein(const SchwartzData& phi, int j, int trunc) {
    if (j < 0) throw DomainError("qexp: j must be >= 0");
    if (trunc < 0) throw DomainError("qexp: truncation must be >= 0");
    if (j == 0 && !phi.in_S0()) throw DomainError("qexp: weight 2 needs Phi(0,0) = 0 (series does not converge)");
    const long m = phi.modulus();
    const int k = j + 2;
    QExpansion q{k, m, std::vector<CycNumber>(static_cast<std::size_t>(trunc + 1))};

    // inner[d][a] = sum_v Phi(d, v) zeta_M^{a v}
    std::vector<std::vector<CycNumber>> inner(static_cast<std::size_t>(m), std::vector<CycNumber>(static_cast<std::size_t>(m)));
    for (const auto& [pt, val] : phi.support())
        for (long a = 0; a < m; ++a) inner[pt.first][a] += val * CycNumber::zeta(m, mod(a * pt.second, m));

    CycNumber constant(0);
    for (const auto& [pt, val] : phi.support())
        constant += val * CycNumber(bernoulli_poly(k, Rat(mod(-pt.first, m), m)));
    Rat sign = (j % 2 == 0) ? Rat(-1) : Rat(1);
    q.coeffs[0] = constant * CycNumber(sign * Rat(ipow(m, j)) / Rat(k));

    Rat eps = (j % 2 == 0) ? Rat(1) : Rat(-1);
    for (int n = 1; n <= trunc; ++n) {
        CycNumber s(0);
        for (long d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            long a = n / d;
            CycNumber term = inner[mod(d, m)][mod(a, m)] + CycNumber(eps) * inner[mod(-d, m)][mod(-a, m)];
            if (term.is_zero()) continue;
            s += term * CycNumber(Rat(ipow(d, k - 1)));
        }
        q.coeffs[static_cast<std::size_t>(n)] = s * CycNumber(Rat(1, m));
    }
    return q;
}

LatticeSum lattice_sum_numeric(const SchwartzData& phi, int j, cd tau, int cutoff) {
    if (tau.imag() <= 0) throw DomainError("lattice sum: tau must lie in the upper half plane");
    if (j < 0 || cutoff < 0) throw DomainError("lattice sum: bad j or cutoff");
    const long m = phi.modulus();
    const int k = j + 2;
    std::vector<std::vector<cd>> g(static_cast<std::size_t>(m), std::vector<cd>(static_cast<std::size_t>(m)));
    double gmax = 0;
    for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b) {
            g[a][b] = to_cd(fourier_transform(phi, a, b));
            gmax = std::max(gmax, std::abs(g[a][b]));
        }

    cd total = 0;
    for (long a = -cutoff; a <= cutoff; ++a) {
        for (long r = 0; r < m; ++r) {
            cd ga = g[mod(a, m)][r];
            if (std::abs(ga) == 0) continue;
            cd w = (static_cast<double>(a) * tau + static_cast<double>(r)) / static_cast<double>(m);
            long N = 40 + 2 * static_cast<long>(std::ceil(std::abs(w)));
            cd s = 0;
            for (long n = -N + 1; n <= N - 1; ++n) {
                if (a == 0 && r + m * n == 0) continue;
                s += std::pow(w + static_cast<double>(n), -k);
            }
            s += hurwitz_tail(w, N, k);
            s += (k % 2 == 0 ? 1.0 : -1.0) * hurwitz_tail(-w, N, k);
            total += ga * s;
        }
    }
    double fact = factorial(k - 1).get_d();
    cd pref = fact / std::pow(cd(0, -2 * M_PI), k);

    // Row a contributes at most M gmax sum_d d^{k-1} x^{|a| d}.
    double x = std::exp(-2 * M_PI * tau.imag() / static_cast<double>(m));
    double bound = 0;
    for (long a = cutoff + 1;; ++a) {
        double row = 0;
        for (long d = 1;; ++d) {
            double t = std::pow(static_cast<double>(d), k - 1) * std::pow(x, static_cast<double>(a * d));
            row += t;
            if (t < 1e-30 * std::max(row, 1e-300) && d > k) break;
        }
        bound += row;
        if (row < 1e-30 * std::max(bound, 1e-300)) break;
    }
    return {pref * total, 2 * static_cast<double>(m) * gmax * bound};
}

// ---- c-smoothing ----------------------------------------------------------

SchwartzData c_smooth_data(const SchwartzData& phi, long c, int j) {
    long m = phi.modulus();
    if (c <= 1 || std::gcd(c, 6 * m) != 1) throw DomainError("c-smoothing needs c > 1 coprime to 6 and the level");
    SchwartzData shifted = m == 1 ? phi : phi.scale(inverse_mod(c, m));
    return CycNumber(Rat(c * c)) * phi + CycNumber(-Rat(1) / Rat(ipow(c, j))) * shifted;
}

QExpansion c_smooth(const SchwartzData& phi, long c, int j, int trunc) {
    return qexp_eisenstein(c_smooth_data(phi, c, j), j, trunc);
}

Int coefficient_denominator(const QExpansion& q) {
    Int d = 1;
    for (const auto& c : q.coeffs)
        for (const auto& x : c.coeffs()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    return d;
}

// ---- Kummer congruences ---------------------------------------------------

EisensteinFamily level_one_family(int trunc) {
    return [trunc](int j) { return qexp_eisenstein(SchwartzData::unit(), j, trunc); };
}

EisensteinFamily tower_family(long p, int t, int trunc) {
    return [p, t, trunc](int j) {
        QExpansion q = qexp_eisenstein(SchwartzData::tower(p, t), j, trunc);
        CycNumber f(Rat(1) / Rat(ipow(p, t * j)));
        for (auto& c : q.coeffs) c *= f;
        return q;
    };
}

namespace {

bool congruent(const CycNumber& a, const CycNumber& b, long p, int t) {
    CycNumber d = a - b;
    for (const auto& x : d.coeffs())
        if (x != 0 && valuation(x, p) < t) return false;
    return true;
}

}  // namespace

bool kummer_moment_check(const EisensteinFamily& family, long p, int t, int n, int j, int jp) {
    QExpansion a = family(j), b = family(jp);
    if (n < 0 || n > a.truncation() || n > b.truncation()) throw DomainError("kummer check: index out of range");
    return congruent(a.coeffs[n], b.coeffs[n], p, t);
}

std::optional<int> kummer_witness(const EisensteinFamily& family, long p, int t, int n_max, int j, int jp) {
    QExpansion a = family(j), b = family(jp);
    int top = std::min({n_max, a.truncation(), b.truncation()});
    for (int n = 1; n <= top; ++n)
        if (!congruent(a.coeffs[n], b.coeffs[n], p, t)) return n;
    return std::nullopt;
}

}  // namespace gl3p

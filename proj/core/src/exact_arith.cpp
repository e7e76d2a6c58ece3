#include "gl3p/exact_arith.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "gl3p/linalg.hpp"

namespace gl3p {

// ---- integers ----------------------------------------------------------------

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long powmod(long base, long exp, long m) {
    if (m == 1) return 0;
    __int128 b = mod(base, m);
    __int128 acc = 1;
    if (exp < 0) {
        b = inverse_mod(static_cast<long>(b), m);
        exp = -exp;
    }
    while (exp) {
        if (exp & 1) acc = acc * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<long>(acc);
}

long inverse_mod(long a, long m) {
    long g = m, x = 0, x1 = 1, r = mod(a, m);
    while (r) {
        long q = g / r;
        std::tie(g, r) = std::make_pair(r, g - q * r);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw DomainError("inverse_mod: " + std::to_string(a) + " not invertible mod " +
                                  std::to_string(m));
    return mod(x, m);
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> out;
    for (long d = 2; d * d <= n; ++d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

long euler_phi(long n) {
    long r = n;
    for (auto [q, e] : factorize(n)) r = r / q * (q - 1);
    return r;
}

long ipow_long(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

Int ipow(long b, int e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(std::labs(b)), static_cast<unsigned long>(e));
    if (b < 0 && (e & 1)) r = -r;
    return r;
}

Rat rpow(const Rat& x, int e) {
    Int n, d;
    unsigned long ue = static_cast<unsigned long>(std::abs(e));
    mpz_pow_ui(n.get_mpz_t(), x.get_num_mpz_t(), ue);
    mpz_pow_ui(d.get_mpz_t(), x.get_den_mpz_t(), ue);
    if (e < 0) {
        if (n == 0) throw DomainError("rpow: zero to a negative power");
        std::swap(n, d);
    }
    Rat r(n, d);
    r.canonicalize();
    return r;
}

Int factorial(int n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Rat bernoulli(int n) {
    static std::mutex mu;
    static std::vector<Rat> cache{Rat(1)};
    std::lock_guard lock(mu);
    while (static_cast<int>(cache.size()) <= n) {
        int m = static_cast<int>(cache.size());
        Rat s = 0;
        Int binom = 1;  // C(m+1, k)
        for (int k = 0; k < m; ++k) {
            s += binom * cache[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        cache.push_back(-s / (m + 1));
    }
    return cache[n];
}

int valuation(const Int& x, long p) {
    if (x == 0) throw DomainError("valuation of zero");
    Int y = x;
    int v = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), static_cast<unsigned long>(p))) {
        y /= p;
        ++v;
    }
    return v;
}

int valuation(const Rat& x, long p) {
    if (x == 0) throw DomainError("valuation of zero");
    return valuation(Int(x.get_num()), p) - valuation(Int(x.get_den()), p);
}

Real to_real(const Int& x) { return Real(x.get_str()); }
Real to_real(const Rat& x) { return Real(x.get_num().get_str()) / Real(x.get_den().get_str()); }
std::string to_string(const Rat& x) { return x.get_str(); }

// ---- p-adic ------------------------------------------------------------------

namespace {

Int mod_int(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int invert_int(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw DomainError("not invertible modulo " + m.get_str());
    return r;
}

}  // namespace

PadicNumber PadicNumber::zero(long p, int absolute_precision) {
    return PadicNumber(p, absolute_precision, Int(0), 0, true);
}

PadicNumber PadicNumber::normalise(long p, int val, Int raw, int abs_prec) {
    if (abs_prec <= val) return zero(p, abs_prec);
    Int m = ipow(p, abs_prec - val);
    raw = mod_int(raw, m);
    if (raw == 0) return zero(p, abs_prec);
    int v = gl3p::valuation(raw, p);
    raw /= ipow(p, v);
    int prec = abs_prec - val - v;
    return PadicNumber(p, val + v, mod_int(raw, ipow(p, prec)), prec, false);
}

PadicNumber PadicNumber::from_rational(const Rat& x, long p, int relative_precision) {
    if (!is_prime(p)) throw DomainError("p-adic numbers need a prime, got " + std::to_string(p));
    if (relative_precision < 1) throw DomainError("precision must be positive");
    if (x == 0) return zero(p, relative_precision);
    int v = gl3p::valuation(x, p);
    Int num = x.get_num(), den = x.get_den();
    if (v > 0) num /= ipow(p, v);
    if (v < 0) den /= ipow(p, -v);
    Int m = ipow(p, relative_precision);
    Int u = mod_int(num * invert_int(den, m), m);
    return PadicNumber(p, v, u, relative_precision, false);
}

PadicNumber PadicNumber::from_integer(const Int& x, long p, int relative_precision) {
    return from_rational(Rat(x), p, relative_precision);
}

Int PadicNumber::residue(int k) const {
    if (k > absolute_precision())
        throw DomainError("residue requested beyond known precision");
    if (zero_) return 0;
    if (val_ < 0) throw DomainError("residue of a non-integral p-adic number");
    return mod_int(unit_ * ipow(p_, val_), ipow(p_, k));
}

bool PadicNumber::congruent(const PadicNumber& o) const { return (*this - o).is_zero(); }

bool PadicNumber::congruent(const PadicNumber& o, int m) const {
    if (m > absolute_precision() || m > o.absolute_precision())
        throw DomainError("congruence modulus exceeds known precision");
    PadicNumber d = *this - o;
    return d.is_zero() || d.valuation() >= m;
}

PadicNumber PadicNumber::operator-() const {
    if (zero_) return *this;
    return PadicNumber(p_, val_, mod_int(-unit_, ipow(p_, prec_)), prec_, false);
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
    if (a.p_ != b.p_) throw DomainError("p-adic primes differ");
    int A = std::min(a.absolute_precision(), b.absolute_precision());
    if (a.zero_ && b.zero_) return PadicNumber::zero(a.p_, A);
    if (a.zero_) return PadicNumber::normalise(b.p_, b.val_, b.unit_, A);
    if (b.zero_) return PadicNumber::normalise(a.p_, a.val_, a.unit_, A);
    int m = std::min(a.val_, b.val_);
    Int raw = a.unit_ * ipow(a.p_, a.val_ - m) + b.unit_ * ipow(a.p_, b.val_ - m);
    return PadicNumber::normalise(a.p_, m, raw, A);
}

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
    if (a.p_ != b.p_) throw DomainError("p-adic primes differ");
    if (a.zero_ && b.zero_) return PadicNumber::zero(a.p_, a.val_ + b.val_);
    if (a.zero_) return PadicNumber::zero(a.p_, a.val_ + b.val_);
    if (b.zero_) return PadicNumber::zero(a.p_, a.val_ + b.val_);
    int prec = std::min(a.prec_, b.prec_);
    Int m = ipow(a.p_, prec);
    return PadicNumber(a.p_, a.val_ + b.val_, mod_int(a.unit_ * b.unit_, m), prec, false);
}

PadicNumber PadicNumber::inverse() const {
    if (zero_) throw DomainError("p-adic division by zero");
    Int m = ipow(p_, prec_);
    return PadicNumber(p_, -val_, invert_int(unit_, m), prec_, false);
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return a * b.inverse(); }

PadicNumber PadicNumber::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    PadicNumber acc = from_rational(1, p_, zero_ ? std::max(1, val_) : prec_);
    PadicNumber base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

std::string PadicNumber::str() const {
    std::ostringstream os;
    if (zero_) {
        os << "O(" << p_ << "^" << val_ << ")";
        return os.str();
    }
    os << unit_.get_str();
    if (val_ != 0) os << "*" << p_ << "^" << val_;
    os << " + O(" << p_ << "^" << absolute_precision() << ")";
    return os.str();
}

PadicNumber teichmuller(long a, long p, int precision) {
    if (!is_prime(p)) throw DomainError("teichmuller: modulus must be prime");
    if (mod(a, p) == 0) throw DomainError("teichmuller: argument divisible by p");
    Int m = ipow(p, precision);
    Int x = mod_int(Int(a), m);
    for (int it = 0; it <= precision + 1; ++it) {
        Int y;
        mpz_powm_ui(y.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p), m.get_mpz_t());
        if (y == x) break;
        x = y;
    }
    return PadicNumber::from_integer(x, p, precision);
}

// ---- polynomials -------------------------------------------------------------

void poly_trim(RatPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    poly_trim(r);
    return r;
}

RatPoly poly_add(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

RatPoly poly_sub(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    poly_trim(r);
    return r;
}

std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b0) {
    RatPoly b = b0;
    poly_trim(b);
    if (b.empty()) throw DomainError("polynomial division by zero");
    RatPoly r = a;
    poly_trim(r);
    if (r.size() < b.size()) return {{}, r};
    RatPoly q(r.size() - b.size() + 1, Rat(0));
    const Rat lead = b.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        Rat c = r[k + b.size() - 1] / lead;
        q[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
    }
    r.resize(b.size() - 1);
    poly_trim(r);
    poly_trim(q);
    return {q, r};
}

std::tuple<RatPoly, RatPoly, RatPoly> poly_xgcd(const RatPoly& a, const RatPoly& b) {
    RatPoly r0 = a, r1 = b, s0{Rat(1)}, s1{}, t0{}, t1{Rat(1)};
    poly_trim(r0);
    poly_trim(r1);
    while (!r1.empty()) {
        auto [q, r] = poly_divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        RatPoly s2 = poly_sub(s0, poly_mul(q, s1));
        RatPoly t2 = poly_sub(t0, poly_mul(q, t1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.empty()) {
        Rat lead = r0.back();
        for (auto& c : r0) c /= lead;
        for (auto& c : s0) c /= lead;
        for (auto& c : t0) c /= lead;
    }
    return {r0, s0, t0};
}

std::vector<Int> cyclotomic_polynomial(long n) {
    static std::mutex mu;
    static std::unordered_map<long, std::vector<Int>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    if (n < 1) throw DomainError("cyclotomic polynomial of non-positive order");
    // x^n - 1 divided by Phi_d for proper divisors d
    RatPoly f(n + 1, Rat(0));
    f[0] = -1;
    f[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d) continue;
        auto phi_d = cyclotomic_polynomial(d);
        RatPoly g(phi_d.begin(), phi_d.end());
        f = poly_divmod(f, g).first;
    }
    std::vector<Int> out;
    for (auto& c : f) out.push_back(c.get_num());
    std::lock_guard lock(mu);
    cache.emplace(n, out);
    return out;
}

long primitive_root(long p) {
    if (p == 2) return 1;
    auto fac = factorize(p - 1);
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : fac) {
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw DomainError("no primitive root");
}

// ---- number fields -----------------------------------------------------------

NumberField::NumberField(RatPoly f, long cyc, Complex root, PadicRoot choice, std::string name)
    : f_(std::move(f)), cyc_(cyc), root_(std::move(root)), choice_(choice), name_(std::move(name)) {}

FieldPtr NumberField::rationals() {
    static const FieldPtr q(new NumberField({Rat(0), Rat(1)}, 1, Complex(0), PadicRoot::Smallest, "Q"));
    return q;
}

FieldPtr NumberField::cyclotomic(long n) {
    if (n < 1) throw DomainError("cyclotomic field of non-positive order");
    if (n <= 2) return rationals();
    static std::mutex mu;
    static std::unordered_map<long, FieldPtr> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    auto phi = cyclotomic_polynomial(n);
    RatPoly f(phi.begin(), phi.end());
    FieldPtr k(new NumberField(std::move(f), n, root_of_unity(1, n), PadicRoot::Smallest,
                               "Q(zeta_" + std::to_string(n) + ")"));
    cache.emplace(n, k);
    return k;
}

FieldPtr NumberField::from_polynomial(RatPoly f, Complex approx, PadicRoot padic, std::string name) {
    poly_trim(f);
    if (f.size() < 2 || f.back() != 1) throw DomainError("number field needs a monic polynomial of degree >= 1");
    // polish the complex root with Newton steps
    RatPoly df;
    for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * Rat(static_cast<long>(i)));
    auto eval = [](const RatPoly& g, const Complex& z) {
        Complex acc(0);
        for (std::size_t i = g.size(); i-- > 0;) acc = acc * z + Complex(to_real(g[i]));
        return acc;
    };
    Complex z = approx;
    for (int it = 0; it < 200; ++it) {
        Complex step = eval(f, z) / eval(df, z);
        z -= step;
        if (step.abs() < Real("1e-60")) break;
    }
    return FieldPtr(new NumberField(std::move(f), 0, z, padic, name.empty() ? "Q[x]/(f)" : name));
}

namespace {

Rat eval_mod(const RatPoly& f, long x, long m) {
    // f must be p-integral; returns f(x) mod m as an integer in [0, m)
    Int acc = 0;
    Int M = m;
    for (std::size_t i = f.size(); i-- > 0;) {
        Rat c = f[i];
        Int cm = mod_int(Int(c.get_num()) * invert_int(Int(c.get_den()), M), M);
        acc = mod_int(acc * x + cm, M);
    }
    return Rat(acc);
}

}  // namespace

PadicNumber NumberField::generator_padic(long p, int precision) const {
    if (!is_prime(p)) throw DomainError("generator_padic: p must be prime");
    if (cyc_ == 1) return PadicNumber::zero(p, precision);  // the field Q, generated by the root of x
    if (cyc_ > 2) {
        if ((p - 1) % cyc_ != 0)
            throw UnsupportedError("no Teichmuller embedding of " + name_ + " into Q_" + std::to_string(p));
        long g = primitive_root(p);
        return teichmuller(g, p, precision).pow((p - 1) / cyc_);
    }
    for (const auto& c : f_) {
        if (c != 0 && valuation(c, p) < 0)
            throw UnsupportedError("defining polynomial is not p-integral");
    }
    RatPoly df;
    for (std::size_t i = 1; i < f_.size(); ++i) df.push_back(f_[i] * Rat(static_cast<long>(i)));
    std::vector<long> roots;
    for (long r = 0; r < p; ++r) {
        if (eval_mod(f_, r, p) == 0 && eval_mod(df, r, p) != 0) roots.push_back(r);
    }
    long chosen = -1;
    if (choice_ == PadicRoot::Smallest) {
        if (!roots.empty()) chosen = roots.front();
    } else {
        std::vector<long> units;
        for (long r : roots)
            if (r != 0) units.push_back(r);
        if (units.size() == 1) chosen = units.front();
    }
    if (chosen < 0) throw UnsupportedError("no suitable simple root of the defining polynomial mod " + std::to_string(p));
    Int m = ipow(p, precision);
    Int x = chosen;
    auto ev = [&](const RatPoly& g, const Int& v) {
        Int acc = 0;
        for (std::size_t i = g.size(); i-- > 0;) {
            Int cm = mod_int(Int(g[i].get_num()) * invert_int(Int(g[i].get_den()), m), m);
            acc = mod_int(acc * v + cm, m);
        }
        return acc;
    };
    for (int it = 0; it < 2 * precision + 2; ++it) {
        Int fx = ev(f_, x);
        if (fx == 0) break;
        x = mod_int(x - fx * invert_int(ev(df, x), m), m);
    }
    return PadicNumber::from_integer(x, p, precision);
}

// ---- algebraic numbers -------------------------------------------------------

AlgNumber::AlgNumber() : k_(NumberField::rationals()), c_{Rat(0)} {}
AlgNumber::AlgNumber(const Rat& r) : k_(NumberField::rationals()), c_{r} { c_[0].canonicalize(); }

AlgNumber::AlgNumber(FieldPtr k, RatPoly coeffs) : k_(std::move(k)), c_(std::move(coeffs)) { reduce(); }

AlgNumber AlgNumber::generator(FieldPtr k) { return AlgNumber(std::move(k), {Rat(0), Rat(1)}); }

AlgNumber AlgNumber::rational(FieldPtr k, const Rat& r) { return AlgNumber(std::move(k), {r}); }

void AlgNumber::reduce() {
    const int d = k_->degree();
    if (static_cast<int>(c_.size()) > d) c_ = poly_divmod(c_, k_->modulus()).second;
    c_.resize(d, Rat(0));
    for (auto& x : c_) x.canonicalize();
}

bool AlgNumber::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return x == 0; });
}

bool AlgNumber::is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rat& x) { return x == 0; });
}

Rat AlgNumber::to_rational() const {
    if (!is_rational()) throw DomainError("algebraic number is not rational");
    return c_[0];
}

std::pair<AlgNumber, AlgNumber> align_fields(const AlgNumber& a, const AlgNumber& b) {
    if (a.field()->same_as(*b.field())) return {a, b};
    if (a.is_rational()) return {AlgNumber::rational(b.field(), a.to_rational()), b};
    if (b.is_rational()) return {a, AlgNumber::rational(a.field(), b.to_rational())};
    throw DomainError("arithmetic between different number fields");
}

AlgNumber AlgNumber::operator-() const {
    AlgNumber r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

AlgNumber operator+(const AlgNumber& a0, const AlgNumber& b0) {
    auto [a, b] = align_fields(a0, b0);
    RatPoly c = a.c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
    return AlgNumber(a.k_, std::move(c));
}

AlgNumber operator-(const AlgNumber& a, const AlgNumber& b) { return a + (-b); }

AlgNumber operator*(const AlgNumber& a0, const AlgNumber& b0) {
    auto [a, b] = align_fields(a0, b0);
    return AlgNumber(a.k_, poly_mul(a.c_, b.c_));
}

AlgNumber AlgNumber::inverse() const {
    if (is_zero()) throw DomainError("division by zero in a number field");
    RatPoly c = c_;
    poly_trim(c);
    auto [g, s, t] = poly_xgcd(c, k_->modulus());
    if (g.size() != 1) throw DomainError("defining polynomial is reducible");
    return AlgNumber(k_, s);
}

AlgNumber operator/(const AlgNumber& a, const AlgNumber& b) { return a * b.inverse(); }

bool operator==(const AlgNumber& a0, const AlgNumber& b0) {
    if (!a0.field()->same_as(*b0.field()) && !a0.is_rational() && !b0.is_rational()) return false;
    auto [a, b] = align_fields(a0, b0);
    return a.c_ == b.c_;
}

AlgNumber AlgNumber::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    AlgNumber acc = rational(k_, 1), base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

Complex AlgNumber::embed_complex() const {
    const Complex& z = k_->generator_complex();
    Complex acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + Complex(to_real(c_[i]));
    return acc;
}

PadicNumber AlgNumber::embed_padic(long p, int precision) const {
    if (is_rational()) return PadicNumber::from_rational(c_[0], p, precision);
    PadicNumber z = k_->generator_padic(p, precision);
    PadicNumber acc = PadicNumber::zero(p, precision);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + PadicNumber::from_rational(c_[i], p, precision);
    return acc;
}

Rat AlgNumber::norm() const {
    const int d = k_->degree();
    Matrix<Rat> m(d, std::vector<Rat>(d, Rat(0)));
    for (int j = 0; j < d; ++j) {
        RatPoly basis(j + 1, Rat(0));
        basis[j] = 1;
        AlgNumber col = *this * AlgNumber(k_, basis);
        for (int i = 0; i < d; ++i) m[i][j] = col.c_[i];
    }
    return determinant(m);
}

std::string AlgNumber::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i].get_str();
        if (i == 1) os << "*t";
        if (i > 1) os << "*t^" << i;
    }
    if (first) os << "0";
    return os.str();
}

// ---- cyclotomic --------------------------------------------------------------

namespace {

// Sparse reduction of zeta_n^k (0 <= k < n) in the power basis.
struct PowerTable {
    long n;
    long phi;
    std::vector<std::vector<std::pair<int, Int>>> rows;
};

std::shared_ptr<const PowerTable> power_table(long n) {
    static std::mutex mu;
    static std::unordered_map<long, std::shared_ptr<const PowerTable>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    auto phi_poly = cyclotomic_polynomial(n);
    const long phi = static_cast<long>(phi_poly.size()) - 1;
    auto t = std::make_shared<PowerTable>();
    t->n = n;
    t->phi = phi;
    std::vector<Int> cur(phi, 0);
    if (phi > 0) cur[0] = 1;
    for (long k = 0; k < n; ++k) {
        std::vector<std::pair<int, Int>> row;
        for (long i = 0; i < phi; ++i)
            if (cur[i] != 0) row.emplace_back(static_cast<int>(i), cur[i]);
        if (phi == 0) row.emplace_back(0, Int(1));
        t->rows.push_back(std::move(row));
        // multiply by x, reduce by the monic Phi_n
        Int top = cur[phi - 1];
        for (long i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (long i = 0; i < phi; ++i) cur[i] -= top * phi_poly[i];
    }
    std::lock_guard lock(mu);
    cache.emplace(n, t);
    return t;
}

// Adds c * zeta_n^k into out.
void accumulate(std::vector<Rat>& out, const PowerTable& t, long k, const Rat& c) {
    for (const auto& [i, v] : t.rows[mod(k, t.n)]) out[i] += c * v;
}

}  // namespace

CycNumber::CycNumber(const Rat& r) : n_(1), c_{r} { c_[0].canonicalize(); }

CycNumber::CycNumber(long conductor, std::vector<Rat> coeffs) : n_(conductor) {
    if (conductor < 1) throw DomainError("cyclotomic conductor must be positive");
    auto t = power_table(conductor);
    if (static_cast<long>(coeffs.size()) <= t->phi) {
        coeffs.resize(t->phi, Rat(0));
        c_ = std::move(coeffs);
    } else {
        c_.assign(t->phi, Rat(0));
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            if (coeffs[k] != 0) accumulate(c_, *t, static_cast<long>(k), coeffs[k]);
    }
    for (auto& x : c_) x.canonicalize();
}

CycNumber CycNumber::zeta(long n, long k) {
    auto t = power_table(n);
    std::vector<Rat> c(t->phi, Rat(0));
    accumulate(c, *t, k, 1);
    return CycNumber(n, std::move(c));
}

bool CycNumber::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return x == 0; });
}

bool CycNumber::is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rat& x) { return x == 0; });
}

Rat CycNumber::to_rational() const {
    if (!is_rational()) throw DomainError("cyclotomic number is not rational: " + str());
    return c_[0];
}

CycNumber CycNumber::lift(long m) const {
    if (m == n_) return *this;
    if (m % n_ != 0) throw DomainError("lift: conductor does not divide target");
    auto t = power_table(m);
    std::vector<Rat> c(t->phi, Rat(0));
    const long step = m / n_;
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) accumulate(c, *t, static_cast<long>(k) * step, c_[k]);
    CycNumber r;
    r.n_ = m;
    r.c_ = std::move(c);
    return r;
}

CycNumber CycNumber::minimised() const {
    if (is_rational()) return CycNumber(c_[0]);
    for (long d = 3; d < n_; ++d) {
        if (n_ % d) continue;
        auto td = power_table(d);
        // columns: zeta_d^j lifted, j < phi(d)
        const long phi_d = td->phi;
        Matrix<Rat> a(c_.size(), std::vector<Rat>(phi_d, Rat(0)));
        for (long j = 0; j < phi_d; ++j) {
            CycNumber col = zeta(d, j).lift(n_);
            for (std::size_t i = 0; i < c_.size(); ++i) a[i][j] = col.c_[i];
        }
        if (auto x = solve(a, c_, static_cast<int>(phi_d))) return CycNumber(d, *x);
    }
    return *this;
}

CycNumber CycNumber::operator-() const {
    CycNumber r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

CycNumber& CycNumber::operator+=(const CycNumber& o) {
    if (o.n_ != n_) {
        long l = std::lcm(n_, o.n_);
        *this = lift(l);
        CycNumber b = o.lift(l);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
        return *this;
    }
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& o) { return *this += -o; }

CycNumber& CycNumber::operator*=(const CycNumber& o) {
    if (o.is_rational()) {
        const Rat s = o.c_[0];
        for (auto& c : c_) c *= s;
        return *this;
    }
    if (is_rational()) {
        const Rat s = c_[0];
        *this = o;
        for (auto& c : c_) c *= s;
        return *this;
    }
    long l = std::lcm(n_, o.n_);
    CycNumber a = lift(l), b = o.lift(l);
    auto t = power_table(l);
    std::vector<Rat> raw(2 * t->phi, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            if (b.c_[j] != 0) raw[i + j] += a.c_[i] * b.c_[j];
    }
    std::vector<Rat> c(t->phi, Rat(0));
    for (std::size_t k = 0; k < raw.size(); ++k)
        if (raw[k] != 0) accumulate(c, *t, static_cast<long>(k), raw[k]);
    n_ = l;
    c_ = std::move(c);
    return *this;
}

bool operator==(const CycNumber& a, const CycNumber& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    long l = std::lcm(a.n_, b.n_);
    return a.lift(l).c_ == b.lift(l).c_;
}

CycNumber CycNumber::inverse() const {
    if (is_zero()) throw DomainError("division by zero in a cyclotomic field");
    if (is_rational()) return CycNumber(1 / c_[0]);
    return from_alg(to_alg().inverse());
}

CycNumber CycNumber::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycNumber acc(1), base = *this;
    while (e) {
        if (e & 1) acc *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return acc;
}

CycNumber CycNumber::galois(long a) const {
    if (std::gcd(mod(a, n_), n_) != 1 && n_ > 1) throw DomainError("galois: exponent not a unit");
    auto t = power_table(n_);
    std::vector<Rat> c(t->phi, Rat(0));
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) accumulate(c, *t, static_cast<long>(k) * a, c_[k]);
    return CycNumber(n_, std::move(c));
}

CycNumber CycNumber::conj() const { return galois(-1); }

Rat CycNumber::norm() const {
    CycNumber acc(1);
    for (long a = 1; a <= std::max(1L, n_); ++a)
        if (std::gcd(a, n_) == 1) acc *= galois(a);
    return acc.to_rational();
}

Complex CycNumber::embed_complex() const {
    Complex acc(0);
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) acc += Complex(to_real(c_[k])) * root_of_unity(static_cast<long>(k), n_);
    return acc;
}

PadicNumber CycNumber::embed_padic(long p, int precision) const {
    CycNumber m = minimised();
    if (m.is_rational()) return PadicNumber::from_rational(m.c_[0], p, precision);
    return m.to_alg().embed_padic(p, precision);
}

AlgNumber CycNumber::to_alg() const { return AlgNumber(NumberField::cyclotomic(n_), c_); }

CycNumber CycNumber::from_alg(const AlgNumber& x) {
    if (x.is_rational()) return CycNumber(x.to_rational());
    long n = x.field()->cyclotomic_order();
    if (n < 3) throw DomainError("from_alg: not a cyclotomic field");
    return CycNumber(n, x.coeffs());
}

std::string CycNumber::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i].get_str();
        if (i == 1) os << "*z" << n_;
        if (i > 1) os << "*z" << n_ << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

Complex cyc_embed_complex(const CycNumber& x, int digits) {
    if (digits > kRealDigits - 4) throw UnsupportedError("requested more digits than the working precision");
    return x.embed_complex();
}

// ---- Laurent polynomials -----------------------------------------------------

LaurentPoly::LaurentPoly(const CycNumber& c) {
    if (!c.is_zero()) t_.emplace(Exponent{0, 0}, c);
}

LaurentPoly LaurentPoly::monomial(const CycNumber& c, int e1, int e2) {
    LaurentPoly r;
    if (!c.is_zero()) r.t_.emplace(Exponent{e1, e2}, c);
    return r;
}

CycNumber LaurentPoly::coeff(int e1, int e2) const {
    auto it = t_.find({e1, e2});
    return it == t_.end() ? CycNumber(0) : it->second;
}

std::pair<int, int> LaurentPoly::degree_range(int var) const {
    if (t_.empty()) return {0, 0};
    int lo = 1 << 30, hi = -(1 << 30);
    for (const auto& [e, c] : t_) {
        int x = var == 0 ? e.first : e.second;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return {lo, hi};
}

void LaurentPoly::add_term(const Exponent& e, const CycNumber& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.t_)
        for (const auto& [eb, cb] : b.t_) r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    return r;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (auto ia = a.t_.begin(), ib = b.t_.begin(); ia != a.t_.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
}

LaurentPoly LaurentPoly::pow(int e) const {
    if (e < 0) {
        if (!is_monomial()) throw DomainError("negative power of a non-monomial Laurent polynomial");
        const auto& [ex, c] = *t_.begin();
        return monomial(c.pow(e), ex.first * e, ex.second * e);
    }
    LaurentPoly acc(1), base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

CycNumber LaurentPoly::evaluate(const CycNumber& x1, const CycNumber& x2) const {
    CycNumber acc(0);
    std::map<int, CycNumber> p1, p2;
    auto power = [](std::map<int, CycNumber>& cache, const CycNumber& x, int e) -> const CycNumber& {
        auto it = cache.find(e);
        if (it == cache.end()) {
            if (e < 0 && x.is_zero()) throw DomainError("negative power of zero in specialization");
            it = cache.emplace(e, x.pow(e)).first;
        }
        return it->second;
    };
    for (const auto& [e, c] : t_) acc += c * power(p1, x1, e.first) * power(p2, x2, e.second);
    return acc;
}

LaurentPoly LaurentPoly::substitute(const LaurentPoly& m1, const LaurentPoly& m2) const {
    if (!m1.is_monomial() || !m2.is_monomial()) throw DomainError("substitute expects monomials");
    const auto& [f1, c1] = *m1.t_.begin();
    const auto& [f2, c2] = *m2.t_.begin();
    LaurentPoly r;
    for (const auto& [e, c] : t_) {
        r.add_term({f1.first * e.first + f2.first * e.second, f1.second * e.first + f2.second * e.second},
                   c * c1.pow(e.first) * c2.pow(e.second));
    }
    return r;
}

std::string LaurentPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (e.first) os << "*X1^" << e.first;
        if (e.second) os << "*X2^" << e.second;
    }
    return os.str();
}

LaurentRational::LaurentRational(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("Laurent rational function with zero denominator");
    normalise();
}

void LaurentRational::normalise() {
    if (num_.is_zero()) {
        den_ = LaurentPoly(1);
        return;
    }
    // scale so that the denominator's first term is 1 * X^0
    const auto& [e, c] = *den_.terms().begin();
    LaurentPoly m = LaurentPoly::monomial(c.inverse(), -e.first, -e.second);
    num_ = num_ * m;
    den_ = den_ * m;
}

LaurentRational operator+(const LaurentRational& a, const LaurentRational& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

LaurentRational operator-(const LaurentRational& a, const LaurentRational& b) { return a + (-b); }

LaurentRational operator*(const LaurentRational& a, const LaurentRational& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
}

LaurentRational LaurentRational::inverse() const {
    if (num_.is_zero()) throw DomainError("inverse of the zero rational function");
    return {den_, num_};
}

LaurentRational operator/(const LaurentRational& a, const LaurentRational& b) { return a * b.inverse(); }

LaurentRational LaurentRational::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    return {num_.pow(e), den_.pow(e)};
}

CycNumber LaurentRational::specialize(const CycNumber& x1, const CycNumber& x2) const {
    CycNumber d = den_.evaluate(x1, x2);
    if (d.is_zero()) throw DomainError("specialization hits a pole");
    return num_.evaluate(x1, x2) / d;
}

LaurentRational LaurentRational::substitute(const LaurentPoly& m1, const LaurentPoly& m2) const {
    return {num_.substitute(m1, m2), den_.substitute(m1, m2)};
}

std::string LaurentRational::str() const { return "[" + num_.str() + "] / [" + den_.str() + "]"; }

bool laurent_equal(const LaurentRational& f, const LaurentRational& g) {
    return f.numerator() * g.denominator() == g.numerator() * f.denominator();
}

LaurentRational geometric_series(const LaurentRational& first, const LaurentRational& ratio) {
    return first / (LaurentRational(1) - ratio);
}

// ---- symbolic periods ---------------------------------------------------------

SymbolicPeriod::SymbolicPeriod(Rat r, int k, int m) : rational_part(std::move(r)), power_of_2pi_i(k), gamma_arg(m) {
    if (m < 1) throw DomainError("Gamma argument must be a positive integer");
}

Rat SymbolicPeriod::folded() const { return rational_part * Rat(factorial(gamma_arg - 1)); }

Complex SymbolicPeriod::embed_complex() const {
    Complex two_pi_i(Real(0), 2 * real_pi());
    return Complex(to_real(folded())) * cpow(two_pi_i, power_of_2pi_i);
}

SymbolicPeriod SymbolicPeriod::inverse() const {
    Rat f = folded();
    if (f == 0) throw DomainError("inverse of a zero period");
    return SymbolicPeriod(1 / f, -power_of_2pi_i, 1);
}

std::string SymbolicPeriod::str() const {
    std::ostringstream os;
    os << rational_part.get_str() << " * (2*pi*i)^" << power_of_2pi_i << " * Gamma(" << gamma_arg << ")";
    return os.str();
}

SymbolicPeriod operator*(const SymbolicPeriod& a, const SymbolicPeriod& b) {
    const SymbolicPeriod& big = a.gamma_arg >= b.gamma_arg ? a : b;
    const SymbolicPeriod& small = a.gamma_arg >= b.gamma_arg ? b : a;
    return SymbolicPeriod(big.rational_part * small.folded(), a.power_of_2pi_i + b.power_of_2pi_i, big.gamma_arg);
}

SymbolicPeriod operator/(const SymbolicPeriod& a, const SymbolicPeriod& b) {
    if (a.gamma_arg >= b.gamma_arg) {
        if (b.rational_part == 0) throw DomainError("division by a zero period");
        Rat r = a.rational_part / (b.rational_part * Rat(factorial(b.gamma_arg - 1)));
        return SymbolicPeriod(r, a.power_of_2pi_i - b.power_of_2pi_i, a.gamma_arg);
    }
    return a * b.inverse();
}

bool operator==(const SymbolicPeriod& a, const SymbolicPeriod& b) {
    return a.power_of_2pi_i == b.power_of_2pi_i && a.folded() == b.folded();
}

}  // namespace gl3p

#include "gl3p/characters.hpp"

#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace gl3p {

namespace {

// x = r mod q, x = 1 mod rest (q, rest coprime)
long crt_one(long r, long q, long rest) {
    if (q == 1) return 1 % (q * rest);
    long t = mod((r - 1) * inverse_mod(mod(rest, q), q), q);
    return mod(1 + rest * t, q * rest);
}

long multiplicative_order(long g, long m) {
    long x = mod(g, m), k = 1;
    while (x != 1 % m) {
        x = x * g % m;
        ++k;
    }
    return k;
}

Rat frac_part(Rat x) {
    x.canonicalize();
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - Rat(fl);
}

std::string default_label(long m, const std::vector<long>& exps) {
    std::ostringstream os;
    os << "chi_" << m << "[";
    for (std::size_t i = 0; i < exps.size(); ++i) os << (i ? "," : "") << exps[i];
    os << "]";
    return os.str();
}

}  // namespace

// ---- UnitGroup ---------------------------------------------------------------

UnitGroup::UnitGroup(long m) : m_(m) {
    if (m < 1) throw DomainError("modulus must be positive");
    for (auto [q, e] : factorize(m)) {
        long qe = ipow_long(q, e);
        long rest = m / qe;
        if (q == 2) {
            if (e >= 2) {
                gens_.push_back(crt_one(qe - 1, qe, rest));
                orders_.push_back(2);
            }
            if (e >= 3) {
                gens_.push_back(crt_one(5, qe, rest));
                orders_.push_back(qe / 4);
            }
            continue;
        }
        long q2 = q * q, g = 2;
        while (multiplicative_order(g, q2) != q * (q - 1)) ++g;
        gens_.push_back(crt_one(g % qe, qe, rest));
        orders_.push_back(qe / q * (q - 1));
    }
    for (long o : orders_) {
        order_ *= o;
        exponent_ = std::lcm(exponent_, o);
    }
    table_.assign(m, {});
    std::vector<int> idx(gens_.size(), 0);
    // mixed-radix walk over all exponent tuples
    for (long count = 0; count < order_; ++count) {
        long x = 1 % m;
        for (std::size_t i = 0; i < gens_.size(); ++i) x = x * powmod(gens_[i], idx[i], m) % m;
        table_[x] = idx;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (++idx[i] < orders_[i]) break;
            idx[i] = 0;
        }
    }
}

std::shared_ptr<const UnitGroup> UnitGroup::of(long modulus) {
    static std::mutex mu;
    static std::unordered_map<long, std::shared_ptr<const UnitGroup>> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(modulus); it != cache.end()) return it->second;
    std::shared_ptr<const UnitGroup> g(new UnitGroup(modulus));
    cache.emplace(modulus, g);
    return g;
}

std::optional<std::vector<long>> UnitGroup::logs(long a) const {
    long r = mod(a, m_);
    if (std::gcd(r, m_) != 1 && m_ != 1) return std::nullopt;
    const auto& t = table_[r];
    return std::vector<long>(t.begin(), t.end());
}

std::vector<long> UnitGroup::units() const {
    std::vector<long> u;
    for (long a = 0; a < m_; ++a)
        if (std::gcd(a, m_) == 1) u.push_back(a);
    if (m_ == 1) u = {0};
    return u;
}

// ---- DirichletCharacter --------------------------------------------------------

DirichletCharacter::DirichletCharacter(long m, std::vector<Rat> img, std::string label)
    : m_(m), img_(std::move(img)), label_(std::move(label)) {
    if (label_.empty()) label_ = default_label(m_, exponents());
}

DirichletCharacter DirichletCharacter::trivial(long modulus) {
    auto g = UnitGroup::of(modulus);
    return DirichletCharacter(modulus, std::vector<Rat>(g->generators().size(), Rat(0)), {});
}

DirichletCharacter DirichletCharacter::from_exponents(long modulus, const std::vector<long>& exps,
                                                      std::string label) {
    auto g = UnitGroup::of(modulus);
    if (exps.size() != g->orders().size())
        throw DomainError("expected " + std::to_string(g->orders().size()) + " generator exponents for modulus " +
                          std::to_string(modulus));
    std::vector<Rat> img;
    for (std::size_t i = 0; i < exps.size(); ++i) img.push_back(frac_part(Rat(exps[i], g->orders()[i])));
    return DirichletCharacter(modulus, std::move(img), std::move(label));
}

DirichletCharacter DirichletCharacter::from_function(long modulus, const std::function<Rat(long)>& frac,
                                                     std::string label) {
    auto g = UnitGroup::of(modulus);
    std::vector<Rat> img;
    for (std::size_t i = 0; i < g->generators().size(); ++i) {
        Rat r = frac_part(frac(g->generators()[i]));
        Rat check = r * g->orders()[i];
        if (check.get_den() != 1) throw DomainError("value is not a root of unity of the generator's order");
        img.push_back(r);
    }
    return DirichletCharacter(modulus, std::move(img), std::move(label));
}

DirichletCharacter DirichletCharacter::quadratic(long p) {
    if (!is_prime(p) || p == 2) throw DomainError("quadratic character needs an odd prime");
    return from_function(
        p, [p](long a) { return powmod(a, (p - 1) / 2, p) == 1 ? Rat(0) : Rat(1, 2); },
        "legendre_" + std::to_string(p));
}

DirichletCharacter DirichletCharacter::teichmuller_power(long p, long k) {
    if (!is_prime(p)) throw DomainError("teichmuller character needs a prime");
    long g = primitive_root(p);
    std::vector<long> dlog(p, 0);
    long x = 1;
    for (long i = 0; i < p - 1; ++i) {
        dlog[x] = i;
        x = x * g % p;
    }
    return from_function(
        p, [&](long a) { return Rat(k * dlog[mod(a, p)], p - 1); },
        "omega_" + std::to_string(p) + "^" + std::to_string(k));
}

std::vector<DirichletCharacter> DirichletCharacter::all(long modulus) {
    auto g = UnitGroup::of(modulus);
    std::vector<DirichletCharacter> out;
    std::vector<long> idx(g->orders().size(), 0);
    for (long count = 0; count < g->order(); ++count) {
        out.push_back(from_exponents(modulus, idx));
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (++idx[i] < g->orders()[i]) break;
            idx[i] = 0;
        }
    }
    return out;
}

std::vector<long> DirichletCharacter::exponents() const {
    auto g = UnitGroup::of(m_);
    std::vector<long> e;
    for (std::size_t i = 0; i < img_.size(); ++i) e.push_back(Rat(img_[i] * g->orders()[i]).get_num().get_si());
    return e;
}

DirichletCharacter DirichletCharacter::with_label(std::string label) const {
    DirichletCharacter c = *this;
    c.label_ = std::move(label);
    return c;
}

long DirichletCharacter::order() const {
    long o = 1;
    for (const auto& r : img_) o = std::lcm(o, r.get_den().get_si());
    return o;
}

long DirichletCharacter::conductor() const {
    for (long f = 1; f <= m_; ++f) {
        if (m_ % f) continue;
        bool ok = true;
        for (long a = 1 % m_; a < m_ + (m_ == 1) && ok; a += f) {
            if (std::gcd(a, m_) != 1) continue;
            if (*angle(a) != 0) ok = false;
        }
        if (ok) return f;
    }
    return m_;
}

bool DirichletCharacter::is_trivial() const {
    for (const auto& r : img_)
        if (r != 0) return false;
    return true;
}

int DirichletCharacter::parity() const { return *angle(-1) == 0 ? 1 : -1; }

std::optional<Rat> DirichletCharacter::angle(long a) const {
    auto l = UnitGroup::of(m_)->logs(a);
    if (!l) return std::nullopt;
    Rat s = 0;
    for (std::size_t i = 0; i < img_.size(); ++i) s += img_[i] * (*l)[i];
    return frac_part(s);
}

CycNumber DirichletCharacter::operator()(long a) const {
    auto t = angle(a);
    if (!t) return CycNumber(0);
    long den = t->get_den().get_si();
    return CycNumber::zeta(den, t->get_num().get_si());
}

DirichletCharacter DirichletCharacter::primitive() const {
    long f = conductor();
    if (f == m_) return *this;
    return from_function(f, [&](long a) {
        long x = mod(a, f);
        while (std::gcd(x, m_) != 1) x += f;
        return *angle(x);
    });
}

DirichletCharacter DirichletCharacter::lift(long new_modulus) const {
    if (new_modulus % m_) throw DomainError("lift: modulus must be a multiple");
    if (new_modulus == m_) return *this;
    return from_function(new_modulus, [&](long a) { return *angle(a); });
}

DirichletCharacter DirichletCharacter::inverse() const { return pow(-1); }

DirichletCharacter DirichletCharacter::pow(long k) const {
    std::vector<Rat> img;
    for (const auto& r : img_) img.push_back(frac_part(r * k));
    return DirichletCharacter(m_, std::move(img), {});
}

DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
    long l = std::lcm(a.m_, b.m_);
    DirichletCharacter x = a.lift(l), y = b.lift(l);
    std::vector<Rat> img;
    for (std::size_t i = 0; i < x.img_.size(); ++i) img.push_back(frac_part(x.img_[i] + y.img_[i]));
    return DirichletCharacter(l, std::move(img), {});
}

bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    long l = std::lcm(a.m_, b.m_);
    return a.lift(l).img_ == b.lift(l).img_;
}

// ---- free operations -----------------------------------------------------------

CycNumber evaluate(const DirichletCharacter& chi, long a) { return chi(a); }

CycNumber gauss_sum(const DirichletCharacter& chi) {
    if (!chi.is_primitive())
        throw DomainError("gauss_sum needs a primitive character; reduce with primitive() first");
    const long n = chi.modulus();
    if (n == 1) return CycNumber(1);
    const long l = std::lcm(n, chi.order());
    std::vector<Rat> raw(l, Rat(0));
    for (long a = 1; a < n; ++a) {
        auto t = chi.angle(a);
        if (!t) continue;
        long k = Rat(*t * l).get_num().get_si() + a * (l / n);
        raw[mod(k, l)] += 1;
    }
    return CycNumber(l, raw);
}

int parity(const DirichletCharacter& chi) { return chi.parity(); }

long conductor(const DirichletCharacter& chi) { return chi.conductor(); }

CharacterDecomposition decompose_at_p(const DirichletCharacter& chi, long p) {
    if (!is_prime(p)) throw DomainError("decompose_at_p needs a prime");
    const long m = chi.modulus();
    long pe = 1;
    while (m % (pe * p) == 0) pe *= p;
    const long rest = m / pe;
    auto at = pe == 1 ? DirichletCharacter::trivial(1)
                      : DirichletCharacter::from_function(pe, [&](long a) { return *chi.angle(crt_one(a, pe, rest)); });
    auto away = rest == 1 ? DirichletCharacter::trivial(1)
                          : DirichletCharacter::from_function(rest, [&](long b) { return *chi.angle(crt_one(b, rest, pe)); });
    return {at, away};
}

PadicNumber padic_value(const DirichletCharacter& chi, long a, long p, int precision) {
    if (!is_prime(p)) throw DomainError("padic_value needs a prime");
    if ((p - 1) % chi.order() != 0)
        throw UnsupportedError("character of order " + std::to_string(chi.order()) +
                               " has no Teichmuller embedding into Q_" + std::to_string(p));
    auto t = chi.angle(a);
    if (!t) return PadicNumber::zero(p, precision);
    long k = Rat(*t * (p - 1)).get_num().get_si();
    if (k == 0) return PadicNumber::from_rational(1, p, precision);
    return teichmuller(primitive_root(p), p, precision).pow(k);
}

}  // namespace gl3p

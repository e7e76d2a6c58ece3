#include "gl3p/iwasawa.hpp"

#include <numeric>
#include <sstream>

#include "gl3p/linalg.hpp"

namespace gl3p {

namespace {

long rat_mod_p(const Rat& x, long p) {
    long num = mod(Int(x.get_num() % p).get_si(), p);
    long den = mod(Int(x.get_den() % p).get_si(), p);
    return num * inverse_mod(den, p) % p;
}

}  // namespace

GroupRingElem::GroupRingElem(long p, int n) : p_(p), n_(n) {
    if (!is_prime(p)) throw DomainError("group ring needs a prime");
    if (n < 1) throw DomainError("group ring level must be >= 1");
    c_.assign(ipow_long(p, n), Rat(0));
}

GroupRingElem GroupRingElem::basis(long p, int n, long a) {
    GroupRingElem x(p, n);
    x.set(a, 1);
    return x;
}

const Rat& GroupRingElem::coeff(long a) const { return c_[mod(a, modulus())]; }

void GroupRingElem::set(long a, Rat v) {
    long r = mod(a, modulus());
    if (r % p_ == 0) throw DomainError("group ring index " + std::to_string(a) + " is not a unit mod p^n");
    c_[r] = std::move(v);
}

void GroupRingElem::add(long a, const Rat& v) {
    long r = mod(a, modulus());
    if (r % p_ == 0) throw DomainError("group ring index " + std::to_string(a) + " is not a unit mod p^n");
    c_[r] += v;
}

std::vector<long> GroupRingElem::support_keys() const {
    std::vector<long> k;
    for (long a = 1; a < modulus(); ++a)
        if (a % p_) k.push_back(a);
    return k;
}

bool GroupRingElem::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool GroupRingElem::is_integral() const {
    for (const auto& c : c_)
        if (c != 0 && valuation(c, p_) < 0) return false;
    return true;
}

std::optional<int> GroupRingElem::min_valuation() const {
    std::optional<int> v;
    for (const auto& c : c_) {
        if (c == 0) continue;
        int w = valuation(c, p_);
        if (!v || w < *v) v = w;
    }
    return v;
}

void GroupRingElem::check_compatible(const GroupRingElem& o) const {
    if (o.p_ != p_ || o.n_ != n_) throw DomainError("group ring elements live at different levels");
}

GroupRingElem GroupRingElem::operator-() const {
    GroupRingElem r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

GroupRingElem& GroupRingElem::operator+=(const GroupRingElem& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

GroupRingElem& GroupRingElem::operator-=(const GroupRingElem& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b) {
    a.check_compatible(b);
    GroupRingElem r(a.p_, a.n_);
    const long m = a.modulus();
    for (long x = 1; x < m; ++x) {
        if (a.c_[x] == 0) continue;
        for (long y = 1; y < m; ++y)
            if (b.c_[y] != 0) r.c_[x * y % m] += a.c_[x] * b.c_[y];
    }
    return r;
}

GroupRingElem operator*(GroupRingElem a, const Rat& s) {
    for (auto& c : a.c_) c *= s;
    return a;
}

bool operator==(const GroupRingElem& a, const GroupRingElem& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.c_ == b.c_;
}

std::string GroupRingElem::str() const {
    std::ostringstream os;
    bool first = true;
    for (long a = 0; a < modulus(); ++a) {
        if (c_[a] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[a].get_str() << "*[" << a << "]";
    }
    if (first) os << "0";
    return os.str();
}

GroupRingElem norm_map(const GroupRingElem& x) {
    if (x.level() < 2) throw DomainError("norm_map needs level >= 2");
    GroupRingElem r(x.prime(), x.level() - 1);
    const long m = r.modulus();
    for (long a : x.support_keys())
        if (x.coeff(a) != 0) r.add(a % m, x.coeff(a));
    return r;
}

namespace {

DirichletCharacter at_level(const DirichletCharacter& eta, long p, int n) {
    long pn = ipow_long(p, n);
    if (eta.modulus() == pn) return eta;
    DirichletCharacter prim = eta.primitive();
    if (pn % prim.modulus() != 0)
        throw DomainError("character " + eta.label() + " does not factor through (Z/" + std::to_string(pn) + ")^x");
    return prim.lift(pn);
}

}  // namespace

CycNumber evaluate_twisted(const GroupRingElem& x, const DirichletCharacter& eta0, int j,
                           long (*lift)(long residue, long modulus)) {
    DirichletCharacter eta = at_level(eta0, x.prime(), x.level());
    const long l = eta.order();
    std::vector<Rat> raw(l, Rat(0));
    for (long a : x.support_keys()) {
        const Rat& c = x.coeff(a);
        if (c == 0) continue;
        Rat t = *eta.angle(a) * l;
        Rat w = c;
        if (j != 0) w *= Rat(ipow(lift(a, x.modulus()), j));
        raw[t.get_num().get_si()] += w;
    }
    return CycNumber(l, raw);
}

CycNumber evaluate(const GroupRingElem& x, const DirichletCharacter& eta) {
    return evaluate_twisted(x, eta, 0, [](long r, long) { return r; });
}

GroupRingElem moment_twist(const GroupRingElem& x, int j) {
    if (j < 0) throw DomainError("moment_twist needs j >= 0");
    GroupRingElem r(x.prime(), x.level());
    for (long a : x.support_keys())
        if (x.coeff(a) != 0) r.set(a, x.coeff(a) * Rat(ipow(a, j)));
    return r;
}

bool cyc_congruent(const CycNumber& a, const CycNumber& b, long p, int k) {
    CycNumber d = a - b;
    for (const auto& c : d.coeffs())
        if (c != 0 && valuation(c, p) < k) return false;
    return true;
}

Measure tower_to_measure(const MeasureTower& t) {
    if (t.eigenvalue == 0) throw DomainError("tower eigenvalue is zero");
    if (t.levels.empty()) throw DomainError("tower has no levels");
    Measure m;
    m.p = t.p;
    bool integral = true;
    for (std::size_t i = 0; i < t.levels.size(); ++i) {
        const auto& x = t.levels[i];
        if (x.level() != static_cast<int>(i) + 1 || x.prime() != t.p)
            throw DomainError("tower level " + std::to_string(i + 1) + " has the wrong shape");
        integral = integral && x.is_integral();
        m.levels.push_back(x * rpow(t.eigenvalue, -static_cast<int>(i + 1)));
    }
    for (std::size_t i = 0; i + 1 < m.levels.size(); ++i) {
        if (!(norm_map(m.levels[i + 1]) == m.levels[i]))
            throw DomainError("tower is not norm-compatible between levels " + std::to_string(i + 1) + " and " +
                              std::to_string(i + 2));
    }
    m.bounded = integral && valuation(t.eigenvalue, t.p) == 0;
    return m;
}

MeasureTower synthetic_tower(const GroupRingElem& top, const Rat& eigenvalue, int weight_a) {
    MeasureTower t;
    t.p = top.prime();
    t.weight_a = weight_a;
    t.eigenvalue = eigenvalue;
    std::vector<GroupRingElem> down{top};
    while (down.back().level() > 1) down.push_back(norm_map(down.back()));
    for (auto it = down.rbegin(); it != down.rend(); ++it)
        t.levels.push_back(*it * rpow(eigenvalue, it->level()));
    return t;
}

Measure measure_from_top(const GroupRingElem& top) {
    Measure m;
    m.p = top.prime();
    std::vector<GroupRingElem> down{top};
    while (down.back().level() > 1) down.push_back(norm_map(down.back()));
    m.levels.assign(down.rbegin(), down.rend());
    m.bounded = top.is_integral();
    return m;
}

void check_compatible(const Measure& m) {
    for (std::size_t i = 0; i + 1 < m.levels.size(); ++i)
        if (!(norm_map(m.levels[i + 1]) == m.levels[i]))
            throw VerificationError("measure is not norm-compatible at level " + std::to_string(i + 1));
}

GroupRingElem smoothing_factor(long p, int n, long c, int j, const DirichletCharacter& chi) {
    // coprimality to 6 matters for the geometric construction only
    if (std::gcd(c, p) != 1) throw DomainError("smoothing integer is not a unit mod p");
    CycNumber v = chi(c);
    if (v.is_zero()) throw DomainError("character vanishes at the smoothing integer");
    if (!v.is_rational()) throw UnsupportedError("smoothing character must take the value +-1 at c");
    Rat chi_c = v.to_rational();
    long pn = ipow_long(p, n);
    GroupRingElem f = GroupRingElem::constant(p, n, Rat(c) * Rat(c));
    f.add(inverse_mod(c, pn), -rpow(Rat(c), -j) / chi_c);
    return f;
}

std::optional<DirichletCharacter> non_unit_character(const GroupRingElem& x) {
    const long p = x.prime();
    const long g = primitive_root(p);
    for (const auto& eta : DirichletCharacter::all(x.modulus())) {
        const long l = eta.order();
        long pe = 1;
        while (l % (pe * p) == 0) pe *= p;
        const long m = l / pe;
        const long s = m == 1 ? 0 : inverse_mod(pe % m, m);
        const long root = powmod(g, (p - 1) / m, p);
        long acc = 0;
        for (long a : x.support_keys()) {
            const Rat& c = x.coeff(a);
            if (c == 0) continue;
            long t = Rat(*eta.angle(a) * l).get_num().get_si();
            acc = (acc + rat_mod_p(c, p) * powmod(root, s * t, p)) % p;
        }
        if (acc == 0) return eta;
    }
    return std::nullopt;
}

bool is_invertible(const GroupRingElem& x) {
    if (!x.is_integral()) return false;
    return !non_unit_character(x).has_value();
}

GroupRingElem group_ring_inverse(const GroupRingElem& x) {
    const auto keys = x.support_keys();
    const int d = static_cast<int>(keys.size());
    const long m = x.modulus();
    std::vector<int> index(m, -1);
    for (int i = 0; i < d; ++i) index[keys[i]] = i;
    // column k: x * [keys[k]]
    Matrix<Rat> a(d, std::vector<Rat>(d, Rat(0)));
    for (int k = 0; k < d; ++k)
        for (long s : keys)
            if (x.coeff(s) != 0) a[index[s * keys[k] % m]][k] += x.coeff(s);
    std::vector<Rat> rhs(d, Rat(0));
    rhs[index[1]] = 1;
    auto sol = solve(a, rhs, d);
    if (!sol) throw DomainError("group ring element is a zero divisor");
    GroupRingElem y(x.prime(), x.level());
    for (int k = 0; k < d; ++k)
        if ((*sol)[k] != 0) y.set(keys[k], (*sol)[k]);
    if (!(x * y == GroupRingElem::basis(x.prime(), x.level(), 1)))
        throw DomainError("group ring element is a zero divisor");
    return y;
}

Measure remove_smoothing(const Measure& smoothed, long c, int j, const DirichletCharacter& chi) {
    Measure out;
    out.p = smoothed.p;
    bool integral = true;
    for (const auto& x : smoothed.levels) {
        GroupRingElem f = smoothing_factor(x.prime(), x.level(), c, j, chi);
        if (auto bad = non_unit_character(f))
            throw DomainError("smoothing factor for c=" + std::to_string(c) + " is not invertible at level " +
                              std::to_string(x.level()) + ": character " + bad->label());
        GroupRingElem y = group_ring_inverse(f) * x;
        integral = integral && y.is_integral();
        out.levels.push_back(std::move(y));
    }
    out.bounded = smoothed.bounded && integral;
    return out;
}

Measure apply_smoothing(const Measure& m, long c, int j, const DirichletCharacter& chi) {
    Measure out;
    out.p = m.p;
    out.bounded = m.bounded;
    for (const auto& x : m.levels) out.levels.push_back(smoothing_factor(x.prime(), x.level(), c, j, chi) * x);
    return out;
}

Measure moment_twist(const Measure& m, int j) {
    Measure out;
    out.p = m.p;
    out.bounded = m.bounded;
    for (const auto& x : m.levels) out.levels.push_back(moment_twist(x, j));
    return out;
}

}  // namespace gl3p

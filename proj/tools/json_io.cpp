#include "json_io.hpp"

#include <charconv>
#include <optional>

namespace gl3p::cli {

namespace {

std::string escape_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

std::optional<long> parse_long(const std::string& s) {
    long v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<Rat> parse_rat(const std::string& s) {
    auto slash = s.find('/');
    auto is_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!is_int(num)) return std::nullopt;
    Int n(num);
    if (slash == std::string::npos) return Rat(n);
    std::string den = s.substr(slash + 1);
    if (!is_int(den) || den[0] == '-' || den[0] == '+') return std::nullopt;
    Int d(den);
    if (d == 0) return std::nullopt;
    Rat r(n, d);
    r.canonicalize();
    return r;
}

// Re-raises library DomainErrors against the node they came from.
template <class F>
auto guarded(const Node& n, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const DomainError& e) {
        n.fail(e.what());
    }
}

DirichletCharacter character_from_string(const std::string& s, const std::function<void(const std::string&)>& bad) {
    if (s == "trivial" || s == "1") return DirichletCharacter::trivial(1);
    if (s.rfind("quad:", 0) == 0) {
        auto p = parse_long(s.substr(5));
        if (!p || *p < 3 || !is_prime(*p)) bad("quadratic character needs an odd prime, got '" + s + "'");
        return DirichletCharacter::quadratic(*p);
    }
    if (s.rfind("mod:", 0) == 0) {
        auto rest = s.substr(4);
        auto colon = rest.find(':');
        auto m = parse_long(rest.substr(0, colon));
        if (!m || *m < 1) bad("bad modulus in character '" + s + "'");
        std::vector<long> exps;
        if (colon != std::string::npos) {
            std::string list = rest.substr(colon + 1);
            std::size_t pos = 0;
            while (pos <= list.size() && !list.empty()) {
                auto comma = list.find(',', pos);
                auto e = parse_long(list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
                if (!e) bad("bad exponent list in character '" + s + "'");
                exps.push_back(*e);
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
        }
        try {
            return DirichletCharacter::from_exponents(*m, exps);
        } catch (const DomainError& e) {
            bad(e.what());
        }
    }
    bad("unknown character '" + s + "' (expected trivial, quad:P or mod:M:e1,...)");
    return DirichletCharacter::trivial(1);
}

}  // namespace

bool Node::has(const std::string& key) const { return v_->is_object() && v_->contains(key); }

Node Node::at(const std::string& key) const {
    if (!v_->is_object()) fail("expected an object");
    auto it = v_->find(key);
    std::string p = ptr_ + "/" + escape_token(key);
    if (it == v_->end()) throw InputError(p, "missing field");
    return Node(*it, p);
}

Node Node::at(std::size_t i) const {
    if (!v_->is_array()) fail("expected an array");
    if (i >= v_->size()) fail("array too short");
    return Node((*v_)[i], ptr_ + "/" + std::to_string(i));
}

std::size_t Node::size() const {
    if (!v_->is_array()) fail("expected an array");
    return v_->size();
}

void Node::fail(const std::string& what) const { throw InputError(ptr_, what); }

long Node::as_long() const {
    if (v_->is_number_integer()) return v_->get<long>();
    if (v_->is_string())
        if (auto v = parse_long(v_->get<std::string>())) return *v;
    fail("expected an integer");
}

int Node::as_int() const {
    long v = as_long();
    if (v < -1000000 || v > 1000000) fail("integer out of range");
    return static_cast<int>(v);
}

std::string Node::as_string() const {
    if (!v_->is_string()) fail("expected a string");
    return v_->get<std::string>();
}

Rat Node::as_rat() const {
    if (v_->is_number_integer()) return Rat(v_->get<long>());
    if (v_->is_string())
        if (auto r = parse_rat(v_->get<std::string>())) return *r;
    fail("expected a rational number (integer or \"a/b\" string)");
}

Int Node::as_int_big() const {
    if (v_->is_number_integer()) return Int(v_->get<long>());
    if (v_->is_string()) {
        auto r = parse_rat(v_->get<std::string>());
        if (r && r->get_den() == 1) return r->get_num();
    }
    fail("expected an integer (number or decimal string)");
}

CycNumber Node::as_cyc() const {
    if (!v_->is_object()) return CycNumber(as_rat());
    if (has("zeta")) {
        Node z = at("zeta");
        long n = z.at(0).as_long();
        long k = z.at(1).as_long();
        if (n < 1) z.at(0).fail("root of unity order must be positive");
        CycNumber r = CycNumber::zeta(n, k);
        if (has("times")) r *= at("times").as_rat();
        return r;
    }
    Node cn = at("conductor");
    long n = cn.as_long();
    if (n < 1 || n > 100000) cn.fail("conductor must lie in [1, 100000]");
    Node cs = at("coeffs");
    std::vector<Rat> coeffs;
    for (std::size_t i = 0; i < cs.size(); ++i) coeffs.push_back(cs.at(i).as_rat());
    return guarded(*this, [&] { return CycNumber(n, coeffs); });
}

DirichletCharacter Node::as_character() const {
    if (v_->is_string())
        return character_from_string(v_->get<std::string>(), [this](const std::string& m) { fail(m); });
    if (!v_->is_object()) fail("expected a character: string or {modulus, exponents}");
    if (has("quadratic")) {
        long p = at("quadratic").as_long();
        if (p < 3 || !is_prime(p)) at("quadratic").fail("expected an odd prime");
        return DirichletCharacter::quadratic(p);
    }
    Node mn = at("modulus");
    long m = mn.as_long();
    if (m < 1 || m > 1000000) mn.fail("modulus must lie in [1, 10^6]");
    std::vector<long> exps;
    if (has("exponents")) {
        Node es = at("exponents");
        for (std::size_t i = 0; i < es.size(); ++i) exps.push_back(es.at(i).as_long());
    }
    return guarded(*this, [&] { return DirichletCharacter::from_exponents(m, exps); });
}

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("", "malformed JSON at byte " + std::to_string(e.byte));
    }
}

DirichletCharacter character_from_flag(const std::string& spec, const std::string& flag) {
    return character_from_string(spec, [&](const std::string& m) -> void { throw InputError(flag, m); });
}

Rat rat_from_flag(const std::string& s, const std::string& flag) {
    if (auto r = parse_rat(s)) return *r;
    throw InputError(flag, "expected a rational number, got '" + s + "'");
}

CycNumber cyc_from_flag(const std::string& s, const std::string& flag) {
    if (auto r = parse_rat(s)) return CycNumber(*r);
    json doc;
    try {
        doc = json::parse(s);
    } catch (const json::parse_error&) {
        throw InputError(flag, "expected a rational or a cyclotomic JSON object, got '" + s + "'");
    }
    try {
        return Node(doc).as_cyc();
    } catch (const InputError& e) {
        throw InputError(flag + e.pointer(), e.what());
    }
}

LocalChar local_char_from(const Node& n) {
    if (!n.value().is_object()) return LocalChar::unramified(n.as_cyc());
    LocalChar c;
    c.value_at_p = n.at("value").as_cyc();
    if (n.has("restriction")) c.restriction = n.at("restriction").as_character();
    return c;
}

SatakeParams satake_from(const Node& n) {
    SatakeParams s;
    s.p = n.at("p").as_long();
    if (s.p < 2 || !is_prime(s.p)) n.at("p").fail("expected a prime");
    Node v = n.at("satake");
    if (v.size() != 3) v.fail("expected three Satake parameters");
    s.alpha = v.at(0).as_cyc();
    s.beta = v.at(1).as_cyc();
    s.gamma = v.at(2).as_cyc();
    if (n.has("weight_a")) s.weight_a = n.at("weight_a").as_int();
    for (int i = 0; i < 3; ++i)
        if (s.values()[static_cast<std::size_t>(i)].is_zero()) v.at(static_cast<std::size_t>(i)).fail("Satake parameter is zero");
    return s;
}

LocalRepGL3 local_rep_from(const Node& n) {
    if (n.has("satake")) return LocalRepGL3::unramified(satake_from(n));
    Node pn = n.at("p");
    long p = pn.as_long();
    if (p < 2 || !is_prime(p)) pn.fail("expected a prime");
    int a = n.has("weight_a") ? n.at("weight_a").as_int() : 0;
    if (a < 0) n.at("weight_a").fail("weight must be nonnegative");
    Node kn = n.at("kind");
    RepKind kind = guarded(kn, [&] { return rep_kind_from_string(kn.as_string()); });
    Node cs = n.at("chars");
    std::vector<LocalChar> chars;
    for (std::size_t i = 0; i < cs.size(); ++i) chars.push_back(local_char_from(cs.at(i)));
    std::size_t want = kind == RepKind::principal_series ? 3
                       : (kind == RepKind::induced_theta_sc || kind == RepKind::induced_theta_st) ? 2
                                                                                                   : 1;
    if (chars.size() != want) cs.fail("expected " + std::to_string(want) + " characters for " + to_string(kind));
    return guarded(n, [&] {
        switch (kind) {
            case RepKind::principal_series: return LocalRepGL3::principal_series(p, a, chars[0], chars[1], chars[2]);
            case RepKind::steinberg_twist: return LocalRepGL3::steinberg_twist(p, a, chars[0]);
            case RepKind::induced_theta_sc: return LocalRepGL3::induced_theta_sc(p, a, chars[0], chars[1]);
            case RepKind::induced_theta_st: return LocalRepGL3::induced_theta_st(p, a, chars[0], chars[1]);
            case RepKind::supercuspidal: break;
        }
        return LocalRepGL3::supercuspidal(p, a, chars[0]);
    });
}

ZetaInput zeta_input_from(const Node& n) {
    Node pn = n.at("p");
    long p = pn.as_long();
    if (p < 2 || !is_prime(p)) pn.fail("expected a prime");
    CycNumber alpha = n.at("alpha").as_cyc();
    std::string kind = n.has("sigma") ? n.at("sigma").as_string() : "principal";
    DirichletCharacter eta = n.has("eta1") ? n.at("eta1").as_character() : DirichletCharacter::trivial(1);
    Node sp = n.at("sigma_params");
    ZetaInput zi;
    if (kind == "principal") {
        if (sp.size() != 2) sp.fail("principal sigma needs two parameters (B, C)");
        zi = ZetaInput::principal(p, alpha, sp.at(0).as_cyc(), sp.at(1).as_cyc(), eta);
    } else if (kind == "steinberg") {
        if (sp.size() != 1) sp.fail("steinberg sigma needs one parameter");
        zi = ZetaInput::steinberg(p, alpha, sp.at(0).as_cyc(), eta);
    } else {
        n.at("sigma").fail("expected \"principal\" or \"steinberg\"");
    }
    if (n.has("weight_a")) zi.weight_a = n.at("weight_a").as_int();
    if (n.has("omega_parity")) {
        int w = n.at("omega_parity").as_int();
        if (w != 1 && w != -1) n.at("omega_parity").fail("expected 1 or -1");
        zi.omega_parity = w;
    }
    if (n.has("R")) zi.R = n.at("R").as_int();
    guarded(n, [&] { zi.validate(); });
    return zi;
}

SchwartzData schwartz_from(const Node& n) {
    Node mn = n.at("modulus");
    long m = mn.as_long();
    if (m < 1 || m > 10000) mn.fail("modulus must lie in [1, 10000]");
    std::vector<std::pair<std::pair<long, long>, CycNumber>> support;
    Node s = n.at("support");
    for (std::size_t i = 0; i < s.size(); ++i) {
        Node e = s.at(i);
        Node pt = e.at("point");
        if (pt.size() != 2) pt.fail("expected [u, v]");
        CycNumber v = e.has("value") ? e.at("value").as_cyc() : CycNumber(1);
        support.push_back({{pt.at(0).as_long(), pt.at(1).as_long()}, v});
    }
    return guarded(n, [&] { return SchwartzData::from_support(m, support); });
}

GroupRingElem group_ring_from(const Node& n, long p) {
    Node ln = n.has("n") ? n.at("n") : n.at("level");
    int level = ln.as_int();
    if (level < 1 || ipow(p, level) > 100000) ln.fail("level out of range");
    GroupRingElem x(p, level);
    Node cs = n.at("coeffs");
    if (!cs.value().is_object()) cs.fail("expected an object mapping residues to rationals");
    for (auto it = cs.value().begin(); it != cs.value().end(); ++it) {
        Node e = cs.at(it.key());
        auto a = parse_long(it.key());
        if (!a) e.fail("key is not an integer residue");
        long r = mod(*a, x.modulus());
        if (r % p == 0) e.fail("residue is not a unit");
        x.add(r, e.as_rat());
    }
    return x;
}

ModFormData modform_from(const Node& n) {
    if (n.has("schema") && n.at("schema").as_string() != "gl3p.modform/1")
        n.at("schema").fail("unsupported schema (expected gl3p.modform/1)");
    ModFormData f;
    if (n.has("name")) f.name = n.at("name").as_string();
    f.weight = n.at("weight").as_int();
    if (f.weight < 2) n.at("weight").fail("weight must be at least 2");
    f.level = n.has("level") ? n.at("level").as_long() : 1;
    if (f.level < 1) n.at("level").fail("level must be positive");
    f.nebentype = n.has("nebentype") ? n.at("nebentype").as_character() : DirichletCharacter::trivial(1);
    f.theta = n.has("theta") ? n.at("theta").as_character() : DirichletCharacter::trivial(1);
    if (n.has("petersson_norm") && !n.at("petersson_norm").value().is_null()) {
        Node pn = n.at("petersson_norm");
        try {
            f.petersson_norm = real_from_string(pn.as_string());
        } catch (const InputError&) {
            throw;
        } catch (const std::exception&) {
            pn.fail("expected a decimal string");
        }
    }
    Node hc = n.at("hecke_coeffs");
    f.hecke_coeffs.assign(hc.size() + 1, Int(0));
    for (std::size_t i = 0; i < hc.size(); ++i) f.hecke_coeffs[i + 1] = hc.at(i).as_int_big();
    if (hc.size() == 0) hc.fail("no coefficients");
    return f;
}

json to_json(const Rat& x) { return to_string(x); }

json to_json(const CycNumber& x) {
    CycNumber m = x.minimised();
    if (m.is_rational()) return to_string(m.to_rational());
    json coeffs = json::array();
    for (const auto& c : m.coeffs()) coeffs.push_back(to_string(c));
    return json{{"conductor", m.conductor()}, {"coeffs", coeffs}, {"str", m.str()}};
}

json to_json(const DirichletCharacter& chi) {
    return json{{"modulus", chi.modulus()},
                {"exponents", chi.exponents()},
                {"conductor", chi.conductor()},
                {"parity", chi.parity()}};
}

json to_json(const LocalChar& c) { return json{{"value", to_json(c.value_at_p)}, {"restriction", to_json(c.restriction)}}; }

json to_json(const LaurentPoly& f) {
    json terms = json::array();
    for (const auto& [e, c] : f.terms()) terms.push_back(json{{"x1", e.first}, {"x2", e.second}, {"coeff", to_json(c)}});
    return terms;
}

json to_json(const LaurentRational& f) {
    return json{{"numerator", to_json(f.numerator())}, {"denominator", to_json(f.denominator())}, {"str", f.str()}};
}

json to_json(const SymbolicPeriod& s) {
    return json{{"symbolic", s.str()},
                {"rational_part", to_string(s.rational_part)},
                {"power_of_2pi_i", s.power_of_2pi_i},
                {"gamma_arg", s.gamma_arg},
                {"folded", to_string(s.folded())}};
}

json to_json(const GroupRingElem& x) {
    json coeffs = json::object();
    for (long a : x.support_keys())
        if (x.coeff(a) != 0) coeffs[std::to_string(a)] = to_string(x.coeff(a));
    return json{{"n", x.level()}, {"coeffs", coeffs}};
}

json to_json(const Complex& z, int digits) {
    return json{{"re", to_string(z.re, digits)}, {"im", to_string(z.im, digits)}};
}

json to_json(const Real& x, int digits) { return to_string(x, digits); }

}  // namespace gl3p::cli

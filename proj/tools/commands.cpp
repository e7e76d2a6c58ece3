#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "gl3p/branching.hpp"
#include "json_io.hpp"

#ifndef GL3P_FIXTURES_DIR
#define GL3P_FIXTURES_DIR "fixtures"
#endif

namespace gl3p::cli {

namespace {

struct Outcome {
    json body = json::object();
    std::vector<std::string> failures;
};

struct Context {
    int digits = 40;
    std::string in_path;
    std::istream* in = nullptr;

    json read_input() const {
        std::string text;
        if (in_path.empty() || in_path == "-") {
            std::ostringstream ss;
            ss << in->rdbuf();
            text = ss.str();
        } else {
            std::ifstream f(in_path);
            if (!f) throw InputError("--in", "cannot read " + in_path);
            std::ostringstream ss;
            ss << f.rdbuf();
            text = ss.str();
        }
        return parse_document(text);
    }

    NumericOptions numeric() const {
        NumericOptions o;
        o.digits = digits;
        return o;
    }
};

int parse_parity(const std::string& s) {
    if (s == "even" || s == "1" || s == "+1") return 1;
    if (s == "odd" || s == "-1") return -1;
    throw InputError("--omega-parity", "expected even or odd, got '" + s + "'");
}

void require_prime(long p, const std::string& flag) {
    if (p < 2 || !is_prime(p)) throw InputError(flag, std::to_string(p) + " is not a prime");
}

int default_digits() {
    const char* env = std::getenv("GL3P_DIGITS");
    if (!env || !*env) return 40;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 5 || v > 50) throw InputError("GL3P_DIGITS", "expected an integer in [5, 50]");
    return static_cast<int>(v);
}

// ---- crit / ep / einf -----------------------------------------------------

Outcome cmd_crit(int a, const std::string& parity, const std::string& eta_spec) {
    if (a < 0) throw InputError("--a", "weight must be nonnegative");
    int w = parse_parity(parity);
    auto eta = character_from_flag(eta_spec, "--eta");
    Outcome o;
    o.body = {{"a", a},
              {"omega_parity", w},
              {"eta", to_json(eta)},
              {"minus", critical_set(a, w, eta, CritSide::minus)},
              {"plus", critical_set(a, w, eta, CritSide::plus)}};
    return o;
}

Outcome cmd_ep(const Context& ctx, long p, int j, int a, const std::string& parity, const std::string& alpha,
               const std::string& eta_spec) {
    require_prime(p, "--p");
    if (a < 0) throw InputError("--a", "weight must be nonnegative");
    auto eta = character_from_flag(eta_spec, "--eta");
    CycNumber al = cyc_from_flag(alpha, "--alpha");
    if (al.is_zero()) throw InputError("--alpha", "alpha must be nonzero");
    CycNumber v = e_p(al, p, eta, j, a, parse_parity(parity));
    Outcome o;
    o.body = {{"p", p},
              {"j", j},
              {"a", a},
              {"alpha", to_json(al)},
              {"eta", to_json(eta)},
              {"value", to_json(v)},
              {"approx", to_json(cyc_embed_complex(v, ctx.digits), ctx.digits)}};
    return o;
}

Outcome cmd_einf(const Context& ctx, int a, int j, std::optional<int> base) {
    if (a < 0) throw InputError("--a", "weight must be nonnegative");
    if (j < 0 || j > a) throw InputError("--j", "need 0 <= j <= a");
    auto e = e_infty(a, j);
    Outcome o;
    o.body = {{"a", a}, {"j", j}, {"e_infty", to_json(e)}, {"approx", to_json(e.embed_complex(), ctx.digits)}};
    if (base) {
        if (*base < 0 || *base > a) throw InputError("--base-j", "need 0 <= base-j <= a");
        o.body["base_j"] = *base;
        o.body["ratio"] = to_json(e / e_infty(a, *base));
    }
    return o;
}

// ---- refine -----------------------------------------------------------------

bool contains_refinement(const std::vector<Refinement>& v, const Refinement& r) {
    return std::any_of(v.begin(), v.end(), [&](const Refinement& x) { return same_refinement(x, r); });
}

Outcome cmd_refine(const Context& ctx) {
    json doc = ctx.read_input();
    Node root(doc);
    auto rep = local_rep_from(root);
    Outcome o;
    o.body["p"] = rep.p;
    o.body["weight_a"] = rep.weight_a;
    o.body["kind"] = to_string(rep.kind);
    o.body["central_character"] = to_json(rep.central_character());

    auto refs = classify_refinements(rep);
    json list = json::array();
    for (const auto& r : refs) {
        json e{{"parabolic", r.parabolic},
               {"character", to_json(r.character)},
               {"slope", to_string(r.slope)},
               {"ramified", r.ramified()}};
        if (r.parabolic == 1) {
            auto e0 = E0_factor(rep, r);
            e["E0"] = {{"value", to_json(e0.value)},
                       {"irreducibly_induced", e0.irreducibly_induced},
                       {"padic_unit", e0.padic_unit}};
        }
        list.push_back(e);
    }
    o.body["refinements"] = list;
    for (int par : {1, 2}) {
        auto ord = is_ordinary(rep, par);
        std::string key = "P" + std::to_string(par);
        o.body["ordinary"][key] = {{"ordinary", ord.ordinary}, {"reason", ord.reason}};
        o.body["nearly_ordinary"][key] = is_nearly_ordinary(rep, par);
    }

    // P1-refinements of rep correspond to P2-refinements of the dual
    auto dual = classify_refinements(rep.dual());
    auto omega_inv = rep.central_character().inverse();
    bool bijection = true;
    std::size_t n1 = 0;
    for (const auto& r : refs) {
        if (r.parabolic != 1) continue;
        ++n1;
        auto c = omega_inv * r.character;
        bijection = bijection && contains_refinement(dual, Refinement{2, c, Rat(padic_valuation(c.value_at_p, rep.p))});
    }
    bijection = bijection && n1 == static_cast<std::size_t>(std::count_if(
                                       dual.begin(), dual.end(), [](const Refinement& x) { return x.parabolic == 2; }));
    o.body["dual_bijection"] = bijection;
    if (!bijection) o.failures.push_back("refinement/dual bijection");

    if (root.has("satake")) {
        auto s = satake_from(root);
        auto h = hecke_eigenvalues(s);
        o.body["hecke"] = {{"a_p1", to_json(h.a_p1)}, {"a_p2", to_json(h.a_p2)}};
        json lf = json::array();
        for (const auto& c : local_L_factor(s)) lf.push_back(to_json(c));
        o.body["L_factor"] = lf;
    }
    return o;
}

// ---- zeta -------------------------------------------------------------------

Outcome cmd_zeta(const Context& ctx, const std::string& form, std::optional<int> j) {
    json doc = ctx.read_input();
    Node root(doc);
    Outcome o;
    o.body["form"] = form;
    if (form == "spherical") {
        auto s = satake_from(root);
        CycNumber chi1 = root.has("chi1") ? root.at("chi1").as_cyc() : CycNumber(1);
        CycNumber chi2 = root.has("chi2") ? root.at("chi2").as_cyc() : CycNumber(1);
        int N = root.has("N") ? root.at("N").as_int() : 30;
        if (N < 4 || N > 80) root.at("N").fail("N must lie in [4, 80]");
        if (chi1.is_zero()) root.at("chi1").fail("must be nonzero");
        if (chi2.is_zero()) root.at("chi2").fail("must be nonzero");
        auto z = spherical_Z(s, chi1, chi2, N);
        auto zt = Z_normalized(z, s.values(), s.p, chi1, chi2);
        bool one = laurent_equal(zt, LaurentRational(1));
        o.body["Z"] = to_json(z);
        o.body["Z_normalized"] = to_json(zt);
        o.body["normalized_is_one"] = one;
        if (!one) o.failures.push_back("normalised spherical Z is not 1");
        if (chi1 == CycNumber(1)) {
            auto y = spherical_Y(s, chi2, N);
            bool ok = laurent_equal(y, rankin_selberg_gamma(s.values(), s.p, chi2.inverse()) * z);
            o.body["Y"] = to_json(y);
            o.body["gamma_identity"] = ok;
            if (!ok) o.failures.push_back("Y = gamma Z");
        }
        return o;
    }

    auto zi = zeta_input_from(root);
    if (form == "closed") {
        o.body["Y"] = to_json(Y_closed_form(zi));
        if (j) {
            o.body["j"] = *j;
            o.body["Y_at_j"] = to_json(Y_closed_form(zi, *j));
            if (zi.sigma == SigmaKind::principal) o.body["Z_at_j"] = to_json(Z_closed_form(zi, *j));
        }
    } else if (form == "bruteforce") {
        auto yb = Y_bruteforce(zi);
        bool ok = laurent_equal(yb, Y_closed_form(zi));
        o.body["Y"] = to_json(yb);
        o.body["matches_closed_form"] = ok;
        if (!ok) o.failures.push_back("brute-force Y differs from the closed form");
        if (j) {
            auto v = specialize_at(yb, zi.p, *j);
            bool okj = v == Y_closed_form(zi, *j);
            o.body["j"] = *j;
            o.body["Y_at_j"] = to_json(v);
            o.body["matches_closed_form_at_j"] = okj;
            if (!okj) o.failures.push_back("specialisation at j differs from the closed form");
        }
    } else {
        if (zi.sigma != SigmaKind::principal) throw UnsupportedError("normalized form needs a principal series sigma");
        auto z = Z_from_Y(Y_bruteforce(zi), rankin_selberg_gamma(zi));
        auto zt = Z_normalized(z, {zi.alpha, zi.sigma_params[0], zi.sigma_params[1]}, zi.p, 1, zi.central_value());
        o.body["Z"] = to_json(z);
        o.body["Z_normalized"] = to_json(zt);
        o.body["E0"] = to_json(E0_value(zi));
    }
    return o;
}

// ---- branch -----------------------------------------------------------------

Outcome cmd_branch(int a, std::optional<int> j) {
    if (a < 0 || a > 8) throw InputError("--a", "need 0 <= a <= 8");
    Gl3Irrep v(a);
    auto d = restrict_decompose(v);
    Outcome o;
    json table = json::array();
    for (const auto& [ij, m] : d.multiplicity)
        table.push_back({{"i", ij.first}, {"j", ij.second}, {"multiplicity", m}, {"dimension", ij.first + ij.second + 1}});
    json other = json::array();
    for (const auto& [w, m] : d.other)
        other.push_back({{"r", w.r}, {"s", w.s}, {"t", w.t}, {"multiplicity", m}});
    bool dims = d.total_dimension() == dimension(a) && v.dimension() == dimension(a);
    o.body = {{"a", a},
              {"dimension", v.dimension()},
              {"weyl_dimension", dimension(a)},
              {"table", table},
              {"other", other},
              {"total_dimension", d.total_dimension()},
              {"dimension_check", dims},
              {"multiplicity_one", d.all_ones()}};
    if (!dims) o.failures.push_back("dimension bookkeeping");
    if (!d.all_ones()) o.failures.push_back("multiplicity one");
    if (j) {
        if (*j < 0 || *j > a) throw InputError("--j", "need 0 <= j <= a");
        auto br = br_map(v, *j);
        bool equiv = check_equivariance(v, br);
        bool integral = true;
        json rows = json::array();
        for (const auto& row : br.matrix) {
            json r = json::array();
            for (const auto& x : row) {
                integral = integral && x.get_den() == 1;
                r.push_back(to_string(x));
            }
            rows.push_back(r);
        }
        o.body["br_map"] = {{"j", *j},
                            {"solution_dimension", br.solution_dimension},
                            {"equivariant", equiv},
                            {"integral", integral},
                            {"matrix", rows}};
        if (!equiv) o.failures.push_back("br equivariance");
    }
    return o;
}

// ---- eis --------------------------------------------------------------------

json qexp_json(const QExpansion& q) {
    json coeffs = json::array();
    for (const auto& c : q.coeffs) coeffs.push_back(to_json(c));
    return {{"weight", q.weight}, {"level", q.level}, {"coeffs", coeffs}, {"denominator", coefficient_denominator(q).get_str()}};
}

Outcome cmd_eis_qexp(const Context& ctx, int j, int trunc, std::optional<long> c, int cutoff) {
    if (j < 0 || j > 40) throw InputError("--j", "need 0 <= j <= 40");
    if (trunc < 1 || trunc > 2000) throw InputError("--trunc", "need 1 <= trunc <= 2000");
    json doc = ctx.read_input();
    auto phi = schwartz_from(Node(doc));
    Outcome o;
    QExpansion q = c ? c_smooth(phi, *c, j, trunc) : qexp_eisenstein(phi, j, trunc);
    o.body = qexp_json(q);
    o.body["j"] = j;
    if (c) o.body["c"] = *c;
    if (cutoff > 0) {
        if (c) throw InputError("--lattice-cutoff", "the lattice comparison applies to the unsmoothed series");
        auto ls = lattice_sum_numeric(phi, j, {0.0, 1.0}, cutoff);
        // |q_M| = e^{-2 pi / M} at tau = i; the comparison uses its own length
        int len = std::max(trunc, static_cast<int>(std::min<long>(2000, 8 * phi.modulus() + 40)));
        double diff = std::abs(qexp_eisenstein(phi, j, len).evaluate({0.0, 1.0}) - ls.value);
        bool ok = diff < 1e-8 + ls.tail_bound;
        std::ostringstream d, t;
        d.precision(3);
        t.precision(3);
        d << std::scientific << diff;
        t << std::scientific << ls.tail_bound;
        o.body["lattice_check"] = {{"tau", "i"}, {"cutoff", cutoff}, {"terms", len}, {"difference", d.str()}, {"tail_bound", t.str()}, {"ok", ok}};
        if (!ok) o.failures.push_back("q-expansion against lattice sum at tau = i");
    }
    return o;
}

Outcome cmd_eis_distribution(long p, int t) {
    require_prime(p, "--p");
    if (t < 0 || t > 4) throw InputError("--t", "need 0 <= t <= 4");
    auto r = schwartz_distribution_check(p, t);
    Outcome o;
    o.body = {{"p", p}, {"t", t}, {"ok", r.ok}, {"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)}};
    if (r.witness) o.body["witness"] = {r.witness->first, r.witness->second};
    if (!r.ok) o.failures.push_back("distribution relation");
    return o;
}

// ---- measure ----------------------------------------------------------------

Outcome cmd_measure(const Context& ctx, int moments, std::optional<long> c, int j, const std::string& chi_spec) {
    if (moments < 0 || moments > 20) throw InputError("--moments", "need 0 <= moments <= 20");
    json doc = ctx.read_input();
    Node root(doc);
    long p = root.at("p").as_long();
    if (p < 2 || !is_prime(p)) root.at("p").fail("expected a prime");
    Measure m;
    Outcome o;
    Rat ev = 1;
    int a = root.has("a") ? root.at("a").as_int() : root.has("weight_a") ? root.at("weight_a").as_int() : 0;
    if (root.has("top")) {
        auto top = group_ring_from(root.at("top"), p);
        if (root.has("eigenvalue")) ev = root.at("eigenvalue").as_rat();
        if (ev == 0) root.at("eigenvalue").fail("eigenvalue must be nonzero");
        m = tower_to_measure(synthetic_tower(top, ev, a));
    } else {
        Node ls = root.at("levels");
        m.p = p;
        for (std::size_t i = 0; i < ls.size(); ++i) {
            auto x = group_ring_from(ls.at(i), p);
            if (x.level() != static_cast<int>(i) + 1) ls.at(i).fail("levels must be 1, 2, ... in order");
            m.levels.push_back(x);
        }
        if (m.levels.empty()) ls.fail("no levels");
        m.bounded = std::all_of(m.levels.begin(), m.levels.end(), [](const GroupRingElem& x) { return x.is_integral(); });
    }
    bool compatible = true;
    try {
        check_compatible(m);
    } catch (const VerificationError& e) {
        compatible = false;
        o.failures.push_back(e.what());
    }
    json levels = json::array();
    for (const auto& x : m.levels) levels.push_back(to_json(x));
    o.body["p"] = p;
    o.body["a"] = a;
    o.body["eigenvalue"] = ev.get_str();
    o.body["levels"] = levels;
    o.body["norm_compatible"] = compatible;
    o.body["bounded"] = m.bounded;

    // moments at the top level, and the twist identity level by level
    const auto& top = m.levels.back();
    json mom = json::array();
    for (int k = 0; k <= moments; ++k)
        mom.push_back(to_json(evaluate(moment_twist(top, k), DirichletCharacter::trivial(1))));
    o.body["moments"] = mom;
    bool twist_ok = true;
    for (std::size_t i = 0; i < m.levels.size(); ++i) {
        for (int k = 0; k <= moments; ++k) {
            CycNumber lhs = evaluate(moment_twist(m.levels[i], k), DirichletCharacter::trivial(1));
            CycNumber rhs = evaluate_twisted(m.levels[i], DirichletCharacter::trivial(1), k,
                                             [](long r, long mod) { return r + mod; });
            if (m.bounded) twist_ok = twist_ok && cyc_congruent(lhs, rhs, p, static_cast<int>(i) + 1);
        }
    }
    o.body["twist_congruence"] = twist_ok;
    if (!twist_ok) o.failures.push_back("moment twist congruence");

    if (c) {
        auto chi = character_from_flag(chi_spec, "--chi");
        json factors = json::array();
        bool all_invertible = true;
        for (std::size_t i = 0; i < m.levels.size(); ++i) {
            auto f = smoothing_factor(p, static_cast<int>(i) + 1, *c, j, chi);
            bool inv = is_invertible(f);
            all_invertible = all_invertible && inv;
            json e{{"level", static_cast<int>(i) + 1}, {"invertible", inv}};
            if (!inv)
                if (auto w = non_unit_character(f)) e["non_unit_character"] = to_json(*w);
            factors.push_back(e);
        }
        o.body["smoothing"] = {{"c", *c}, {"j", j}, {"chi", to_json(chi)}, {"factors", factors}};
        auto s = apply_smoothing(m, *c, j, chi);
        json sl = json::array();
        for (const auto& x : s.levels) sl.push_back(to_json(x));
        o.body["smoothing"]["smoothed_levels"] = sl;
        if (all_invertible) {
            auto back = remove_smoothing(s, *c, j, chi);
            bool rt = back.levels.size() == m.levels.size() &&
                      std::equal(back.levels.begin(), back.levels.end(), m.levels.begin());
            o.body["smoothing"]["round_trip"] = rt;
            if (!rt) o.failures.push_back("smoothing round trip");
        }
    }
    return o;
}

// ---- symsq ------------------------------------------------------------------

Outcome cmd_symsq(const Context& ctx, long p, int j, const std::string& eta_spec, bool omit_constant,
                  const std::string& petersson) {
    require_prime(p, "--p");
    auto eta = character_from_flag(eta_spec, "--eta");
    json doc = ctx.read_input();
    auto f = modform_from(Node(doc));
    if (auto w = hecke_relation_witness(f))
        throw InputError("/hecke_coeffs/" + std::to_string(*w - 1), "coefficients violate the Hecke relations at n = " + std::to_string(*w));
    std::optional<Real> pet;
    if (!petersson.empty()) {
        try {
            pet = real_from_string(petersson);
        } catch (const std::exception&) {
            throw InputError("--petersson", "expected a decimal number");
        }
    }
    const int dg = ctx.digits;
    auto rep = interpolation_rhs(f, p, j, eta, ctx.numeric());
    auto lift = lift_satake(f, p);

    Outcome o;
    o.body["form"] = {{"name", f.name}, {"weight", f.weight}, {"level", f.level}, {"terms", f.max_index()}};
    o.body["p"] = p;
    o.body["j"] = j;
    o.body["eta"] = to_json(eta);
    o.body["critical_points"] = rep.critical_points;
    json lj{{"a_p", lift.a_p.get_str()},
            {"A", lift.A.str()},
            {"B", lift.B.str()},
            {"alpha", lift.alpha.str()},
            {"beta", lift.beta.str()},
            {"gamma", lift.gamma.str()},
            {"p1_ordinary", lift.p1_ordinary},
            {"omega_parity", lift.omega_parity}};
    json el = json::array();
    for (const auto& r : lift.elementary()) el.push_back(to_string(r));
    lj["elementary"] = el;
    if (lift.valuations) lj["valuations"] = *lift.valuations;
    o.body["lift"] = lj;
    o.body["e_infty"] = to_json(rep.e_infty);
    o.body["e_p"] = {{"exact", rep.e_p.exact ? json(rep.e_p.exact->str()) : json(nullptr)},
                     {"approx", to_json(rep.e_p.value, dg)}};
    o.body["euler_factor_at_p"] = to_string(rep.euler_factor_at_p);
    o.body["L_numeric"] = {{"value", to_json(rep.L.value, dg)},
                           {"error_estimate", to_json(rep.L.error_estimate, 3)},
                           {"rigorous", rep.L.rigorous},
                           {"sign", rep.L.sign},
                           {"terms_used", rep.L.terms_used}};
    o.body["L_p_removed"] = to_json(rep.L_p_removed, dg);
    o.body["product"] = to_json(rep.product, dg);

    json alg;
    try {
        auto r = algebraicity_check(f, j, eta, pet, !omit_constant, ctx.numeric());
        alg = {{"status", to_string(r.status)},
               {"value", r.value ? json(to_string(*r.value)) : json(nullptr)},
               {"numeric", to_json(r.numeric, dg)},
               {"residual", to_json(r.residual, 3)},
               {"report", r.report}};
        if (r.status == AlgebraicityStatus::failed && !omit_constant) o.failures.push_back("algebraicity");
    } catch (const UnsupportedError& e) {
        alg = {{"status", "unsupported"}, {"report", e.what()}};
    }
    alg["constant_omitted"] = omit_constant;
    o.body["algebraicity_result"] = alg;
    return o;
}

// ---- selftest ---------------------------------------------------------------

Outcome cmd_selftest() {
    Outcome o;
    json checks = json::array();
    for (const auto& c : run_selftest()) {
        checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        if (!c.ok) o.failures.push_back(c.name);
    }
    o.body["checks"] = checks;
    o.body["passed"] = checks.size() - o.failures.size();
    o.body["failed"] = o.failures.size();
    return o;
}

void emit(const json& report, const std::string& out_path, std::ostream& out) {
    std::string text = report.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        out << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw InputError("--out", "cannot write " + out_path);
    f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact local and p-adic computations for GL(3)", "gl3p"};
    app.require_subcommand(1);
    app.fallthrough();

    Context ctx;
    ctx.in = &in;
    std::string out_path;
    std::optional<int> digits_flag;
    app.add_option("--out", out_path, "Write the JSON report here instead of stdout");
    app.add_option("--digits", digits_flag, "Decimal digits for numerics (default: $GL3P_DIGITS or 40)");

    std::function<Outcome()> action;
    std::string command;

    // crit
    auto* crit = app.add_subcommand("crit", "Critical values j on both sides");
    int crit_a = 0;
    std::string crit_par, crit_eta = "trivial";
    crit->add_option("--a", crit_a)->required();
    crit->add_option("--omega-parity", crit_par)->required();
    crit->add_option("--eta", crit_eta);
    crit->callback([&] { action = [&] { return cmd_crit(crit_a, crit_par, crit_eta); }; });

    // refine
    auto* refine = app.add_subcommand("refine", "Refinements, ordinarity and E0 of a local representation");
    refine->add_option("--in", ctx.in_path, "LocalRepGL3 JSON (default stdin)");
    refine->callback([&] { action = [&] { return cmd_refine(ctx); }; });

    // ep
    auto* ep = app.add_subcommand("ep", "Modified Euler factor at p");
    long ep_p = 0;
    int ep_j = 0, ep_a = 0;
    std::string ep_par, ep_alpha, ep_eta = "trivial";
    ep->add_option("--p", ep_p)->required();
    ep->add_option("--j", ep_j)->required();
    ep->add_option("--a", ep_a)->required();
    ep->add_option("--omega-parity", ep_par)->required();
    ep->add_option("--alpha", ep_alpha, "Rational or cyclotomic JSON")->required();
    ep->add_option("--eta", ep_eta);
    ep->callback([&] { action = [&] { return cmd_ep(ctx, ep_p, ep_j, ep_a, ep_par, ep_alpha, ep_eta); }; });

    // einf
    auto* einf = app.add_subcommand("einf", "Archimedean factor as a symbolic period");
    int einf_a = 0, einf_j = 0;
    std::optional<int> einf_base;
    einf->add_option("--a", einf_a)->required();
    einf->add_option("--j", einf_j)->required();
    einf->add_option("--base-j", einf_base, "Also report the ratio to this j");
    einf->callback([&] { action = [&] { return cmd_einf(ctx, einf_a, einf_j, einf_base); }; });

    // zeta
    auto* zeta = app.add_subcommand("zeta", "Local Rankin-Selberg zeta integrals");
    std::string zeta_form = "closed";
    std::optional<int> zeta_j;
    zeta->add_option("--form", zeta_form)->check(CLI::IsMember({"bruteforce", "closed", "normalized", "spherical"}));
    zeta->add_option("--j", zeta_j);
    zeta->add_option("--in", ctx.in_path, "ZetaInput JSON (default stdin)");
    zeta->callback([&] { action = [&] { return cmd_zeta(ctx, zeta_form, zeta_j); }; });

    // branch
    auto* branch = app.add_subcommand("branch", "GL3 to GL2 x GL1 branching");
    int br_a = 0;
    std::optional<int> br_j;
    branch->add_option("--a", br_a)->required();
    branch->add_option("--j", br_j, "Also build the branching map for this j");
    branch->callback([&] { action = [&] { return cmd_branch(br_a, br_j); }; });

    // eis
    auto* eis = app.add_subcommand("eis", "Eisenstein q-expansions");
    int eis_j = 0, eis_trunc = 20, eis_cutoff = 0;
    std::optional<long> eis_c;
    eis->add_option("--j", eis_j);
    eis->add_option("--trunc", eis_trunc);
    eis->add_option("--c", eis_c, "Apply c-smoothing");
    eis->add_option("--lattice-cutoff", eis_cutoff, "Compare with the lattice sum at tau = i");
    eis->add_option("--in", ctx.in_path, "Schwartz data JSON (default stdin)");
    auto* dist = eis->add_subcommand("check-distribution", "Coset identity for the tower data");
    long dist_p = 0;
    int dist_t = 0;
    dist->add_option("--p", dist_p)->required();
    dist->add_option("--t", dist_t)->required();
    eis->callback([&] {
        if (dist->parsed()) action = [&] { return cmd_eis_distribution(dist_p, dist_t); };
        else action = [&] { return cmd_eis_qexp(ctx, eis_j, eis_trunc, eis_c, eis_cutoff); };
    });

    // measure
    auto* measure = app.add_subcommand("measure", "Norm-compatible towers and smoothing");
    int m_moments = 3, m_j = 0;
    std::optional<long> m_c;
    std::string m_chi = "trivial";
    measure->add_option("--moments", m_moments);
    measure->add_option("--c", m_c);
    measure->add_option("--j", m_j);
    measure->add_option("--chi", m_chi);
    measure->add_option("--in", ctx.in_path, "Tower JSON (default stdin)");
    measure->callback([&] { action = [&] { return cmd_measure(ctx, m_moments, m_c, m_j, m_chi); }; });

    // symsq
    auto* symsq = app.add_subcommand("symsq", "Symmetric-square interpolation at a critical point");
    long s_p = 0;
    int s_j = 0;
    std::string s_eta = "trivial", s_pet;
    bool s_omit = false;
    std::string s_in = std::string(GL3P_FIXTURES_DIR) + "/delta.json";
    symsq->add_option("--p", s_p)->required();
    symsq->add_option("--j", s_j)->required();
    symsq->add_option("--eta", s_eta);
    symsq->add_option("--petersson", s_pet, "Petersson norm; default from the input or the edge value");
    symsq->add_flag("--omit-constant", s_omit, "Negative control: leave out the classical constant");
    symsq->add_option("--in", s_in, "ModFormData JSON (default: bundled Delta)");
    symsq->callback([&] {
        action = [&] {
            Context c = ctx;
            c.in_path = s_in;
            return cmd_symsq(c, s_p, s_j, s_eta, s_omit, s_pet);
        };
    });

    auto* selftest = app.add_subcommand("selftest", "Quick invariant suite");
    selftest->callback([&] { action = [&] { return cmd_selftest(); }; });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? 0 : 1;
    }
    for (auto* sc : app.get_subcommands()) command = sc->get_name();

    json report{{"schema", "gl3p.report/1"}, {"command", command}};
    int code = 0;
    try {
        ctx.digits = digits_flag ? *digits_flag : default_digits();
        if (ctx.digits < 5 || ctx.digits > 50) throw InputError("--digits", "need 5 <= digits <= 50");
        Outcome r = action();
        report["result"] = r.body;
        report["status"] = r.failures.empty() ? "ok" : "verification_failed";
        if (!r.failures.empty()) {
            report["failures"] = r.failures;
            code = 2;
        }
    } catch (const InputError& e) {
        report["status"] = "error";
        report["error"] = {{"kind", "input"}, {"pointer", e.pointer()}, {"message", e.what()}};
        err << "gl3p: " << (e.pointer().empty() ? "" : e.pointer() + ": ") << e.what() << "\n";
        code = 1;
    } catch (const UnsupportedError& e) {
        report["status"] = "error";
        report["error"] = {{"kind", "unsupported"}, {"message", e.what()}};
        err << "gl3p: " << e.what() << "\n";
        code = 1;
    } catch (const DomainError& e) {
        report["status"] = "error";
        report["error"] = {{"kind", "domain"}, {"message", e.what()}};
        err << "gl3p: " << e.what() << "\n";
        code = 1;
    } catch (const VerificationError& e) {
        report["status"] = "verification_failed";
        report["error"] = {{"kind", "verification"}, {"message", e.what()}};
        err << "gl3p: verification failed: " << e.what() << "\n";
        code = 2;
    }
    try {
        emit(report, out_path, out);
    } catch (const InputError& e) {
        err << "gl3p: " << e.what() << "\n";
        return 1;
    }
    return code;
}

}  // namespace gl3p::cli

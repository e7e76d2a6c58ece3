#include <functional>

#include "cli.hpp"
#include "gl3p/branching.hpp"
#include "gl3p/characters.hpp"
#include "gl3p/eisenstein.hpp"
#include "gl3p/gl3_local.hpp"
#include "gl3p/iwasawa.hpp"
#include "gl3p/numeric.hpp"
#include "gl3p/symsq.hpp"
#include "gl3p/zeta_local.hpp"

namespace gl3p::cli {

namespace {

using Check = std::function<std::string()>;  // empty string on success

std::string critical_sets() {
    auto triv = DirichletCharacter::trivial(1);
    if (critical_set(2, 1, triv, CritSide::minus) != std::vector<int>{-2, 0}) return "minus side for a = 2";
    if (critical_set(2, 1, triv, CritSide::plus) != std::vector<int>{1, 3}) return "plus side for a = 2";
    return {};
}

std::string gauss_sums() {
    for (long m : {5L, 7L, 8L, 9L, 12L})
        for (const auto& chi : DirichletCharacter::all(m)) {
            if (!chi.is_primitive()) continue;
            CycNumber g = gauss_sum(chi);
            if (g * g.conj() != CycNumber(m)) return "|G|^2 != " + std::to_string(m);
        }
    return {};
}

std::string euler_factors() {
    auto triv = DirichletCharacter::trivial(1);
    if (e_p(2, 5, triv, 0, 0, 1) != CycNumber(Rat(-9, 10))) return "e_p(2) at p = 5";
    try {
        e_p(1, 5, triv, 0, 0, 1);
        return "exceptional zero not detected";
    } catch (const DomainError&) {
    }
    for (int a = 0; a <= 12; ++a)
        for (int j = 0; j <= a; ++j)
            if (!(e_infty(a, j) == SymbolicPeriod(2, j - a - 1, a + 1 - j))) return "e_infty shape";
    return {};
}

std::string zeta_oracle() {
    for (long p : {3L, 5L}) {
        auto zi = ZetaInput::principal(p, Rat(2, 7), Rat(-3), Rat(5, 2));
        if (!laurent_equal(Y_bruteforce(zi), Y_closed_form(zi))) return "principal at p = " + std::to_string(p);
        auto st = ZetaInput::steinberg(p, Rat(3), Rat(-1, 4), DirichletCharacter::quadratic(p));
        if (!laurent_equal(Y_bruteforce(st), Y_closed_form(st))) return "steinberg at p = " + std::to_string(p);
    }
    return {};
}

std::string spherical() {
    SatakeParams s;
    s.p = 3;
    s.alpha = Rat(2);
    s.beta = Rat(-1, 3);
    s.gamma = Rat(5, 7);
    auto z = spherical_Z(s, Rat(1, 2), Rat(3));
    if (!laurent_equal(Z_normalized(z, s.values(), 3, Rat(1, 2), Rat(3)), LaurentRational(1))) return "normalised Z != 1";
    return {};
}

std::string iwasawa() {
    GroupRingElem top(5, 3);
    top.set(1, 1);
    top.set(4, -2);
    top.set(77, Rat(1, 2));
    auto m = tower_to_measure(synthetic_tower(top, 1, 0));
    check_compatible(m);
    // c = 1 mod 5 with chi(c) = -1 keeps the factor a unit everywhere
    auto chi = DirichletCharacter::quadratic(3);
    auto back = remove_smoothing(apply_smoothing(m, 11, 1, chi), 11, 1, chi);
    for (std::size_t i = 0; i < m.levels.size(); ++i)
        if (!(back.levels[i] == m.levels[i])) return "smoothing round trip";
    if (is_invertible(smoothing_factor(5, 1, 2, 0, DirichletCharacter::trivial(1)))) return "p = 5, c = 2 factor reported invertible";
    return {};
}

std::string branching() {
    for (int a = 0; a <= 2; ++a) {
        Gl3Irrep v(a);
        auto d = restrict_decompose(v);
        if (!d.all_ones() || d.total_dimension() != dimension(a)) return "a = " + std::to_string(a);
        for (int j = 0; j <= a; ++j)
            if (!check_equivariance(v, br_map(v, j))) return "br equivariance";
    }
    return {};
}

std::string eisenstein() {
    for (long p : {2L, 3L})
        for (int t = 1; t <= 2; ++t)
            if (!schwartz_distribution_check(p, t).ok) return "distribution p = " + std::to_string(p);
    return {};
}

std::string level_index() {
    if (level_intersection_index_enumerated(3, 1, 2) != level_intersection_index(3, 1, 2)) return "(3, 1, 2)";
    return {};
}

std::string zeta_two() {
    NumericOptions opt;
    opt.digits = 20;
    auto z = numeric_L_value(riemann_zeta_spec(100), Complex(2), opt);
    Real pi = real_pi();
    if (boost::multiprecision::abs(z.value.re - pi * pi / 6) > Real(1e-10)) return "zeta(2)";
    return {};
}

std::string delta_relations() {
    auto f = delta_form(300);
    if (hecke_relation_witness(f)) return "Hecke relations";
    if (f.coeff(11) != 534612) return "tau(11)";
    return {};
}

}  // namespace

std::vector<SelftestCheck> run_selftest() {
    const std::vector<std::pair<std::string, Check>> checks{
        {"critical sets", critical_sets},
        {"gauss sums", gauss_sums},
        {"euler factors", euler_factors},
        {"zeta oracle", zeta_oracle},
        {"spherical normalisation", spherical},
        {"iwasawa towers", iwasawa},
        {"branching", branching},
        {"eisenstein distribution", eisenstein},
        {"level index", level_index},
        {"zeta(2) calibration", zeta_two},
        {"delta hecke relations", delta_relations},
    };
    std::vector<SelftestCheck> out;
    for (const auto& [name, fn] : checks) {
        SelftestCheck c{name, false, {}};
        try {
            c.detail = fn();
            c.ok = c.detail.empty();
        } catch (const std::exception& e) {
            c.detail = e.what();
        }
        out.push_back(c);
    }
    return out;
}

}  // namespace gl3p::cli

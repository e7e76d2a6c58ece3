#include "doctest.h"
#include "gen.hpp"

#include <set>

#include "gl3p/branching.hpp"

using namespace gl3p;

namespace {

Mat3 random_mat3(gen::Source& g) {
    for (;;) {
        Mat3 m{};
        for (auto& row : m)
            for (auto& x : row) x = g.rational(4, 3);
        if (mat3_det(m) != 0) return m;
    }
}

std::vector<Rat> random_vector(gen::Source& g, std::size_t n) {
    std::vector<Rat> v(n);
    for (auto& x : v) x = g.rational(5, 3);
    return v;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

TEST_CASE("dimensions") {
    CHECK(dimension(0) == 1);
    CHECK(dimension(1) == 8);
    CHECK(dimension(2) == 27);
    for (int a = 0; a <= 6; ++a) {
        Gl3Irrep v(a);
        CHECK(v.dimension() == dimension(a));
        // weight multiplicities add up
        std::map<std::array<int, 3>, int> mult;
        for (int i = 0; i < v.dimension(); ++i) ++mult[v.weight(i)];
        int total = 0;
        for (const auto& [w, m] : mult) {
            CHECK(w[0] + w[1] + w[2] == 0);
            total += m;
        }
        CHECK(total == v.dimension());
    }
    for (int a = 0; a <= 12; ++a) {
        long s = 0;
        for (int i = 0; i <= a; ++i)
            for (int j = 0; j <= a; ++j) s += i + j + 1;
        CHECK(s == dimension(a));
    }
}

TEST_CASE("the polynomial model") {
    gen::Source g(91);
    Gl3Irrep v(2);
    for (int t = 0; t < 5; ++t) {
        auto f = random_vector(g, 27);
        Mat3 x = random_mat3(g);
        // f(n^- t g) = lambda(t) f(g)
        Mat3 lower = mat3_identity();
        lower[1][0] = g.rational(4, 3);
        lower[2][0] = g.rational(4, 3);
        lower[2][1] = g.rational(4, 3);
        Mat3 torus{};
        Rat t1 = g.nonzero_rational(4, 3), t2 = g.nonzero_rational(4, 3), t3 = g.nonzero_rational(4, 3);
        torus[0] = {t1, 0, 0};
        torus[1] = {0, t2, 0};
        torus[2] = {0, 0, t3};
        CHECK(v.evaluate(f, mat3_mul(mat3_mul(lower, torus), x)) == rpow(t1, 2) * rpow(t3, -2) * v.evaluate(f, x));
        // left action by right translation
        Mat3 h = random_mat3(g);
        CHECK(v.evaluate(v.group_action(h, f), x) == v.evaluate(f, mat3_mul(x, h)));
        Mat3 h2 = random_mat3(g);
        CHECK(v.group_action(mat3_mul(h, h2), f) == v.group_action(h, v.group_action(h2, f)));
    }
    // the contraction vanishes identically
    Poly6 c{{{1, 0, 0, 1, 0, 0}, 1}, {{0, 1, 0, 0, 1, 0}, 1}, {{0, 0, 1, 0, 0, 1}, 1}};
    CHECK(reduce_mod_contraction(c).empty());
}

TEST_CASE("restriction to H") {
    for (int a = 0; a <= 6; ++a) {
        auto d = restrict_decompose(Gl3Irrep(a));
        CHECK(d.all_ones());
        CHECK(d.total_dimension() == dimension(a));
        CHECK(d.multiplicity.size() == static_cast<std::size_t>((a + 1) * (a + 1)));
    }
    auto d1 = restrict_decompose(Gl3Irrep(1));
    std::multiset<int> dims;
    for (const auto& [ij, m] : d1.multiplicity) dims.insert(ij.first + ij.second + 1);
    CHECK(dims == std::multiset<int>{1, 2, 2, 3});
    auto d0 = restrict_decompose(Gl3Irrep(0));
    CHECK(d0.multiplicity.size() == 1);
}

TEST_CASE("branching maps") {
    for (int a = 0; a <= 6; ++a) {
        Gl3Irrep v(a);
        for (int j = 0; j <= a; ++j) {
            auto br = br_map(v, j);
            CHECK(br.solution_dimension == 1);
            CHECK(check_equivariance(v, br));
            // the binomial basis of Sym^j maps to integral vectors
            for (int k = 0; k <= j; ++k) {
                Rat binom(factorial(j) / (factorial(k) * factorial(j - k)));
                for (const auto& row : br.matrix) CHECK(Rat(row[k] * binom).get_den() == 1);
            }
            // normalisation f(u^{-1}) = 1
            Mat3 ui = mat3_identity();
            ui[0][2] = -1;
            std::vector<Rat> f;
            for (const auto& row : br.matrix) f.push_back(row[0]);
            CHECK(v.evaluate(f, ui) == 1);
        }
    }
    auto br0 = br_map(Gl3Irrep(0), 0);
    CHECK((br0.matrix == Matrix<Rat>{{Rat(1)}}));
    CHECK_THROWS_AS(br_map(Gl3Irrep(1), 2), DomainError);
}

TEST_CASE("pairing") {
    gen::Source g(92);
    Gl3Irrep v(2);
    for (int j = 0; j <= 2; ++j) {
        auto br = br_map(v, j);
        auto mu1 = random_vector(g, 27), mu2 = random_vector(g, 27);
        auto x = random_vector(g, static_cast<std::size_t>(j + 1));
        std::vector<Rat> mus(27);
        for (int i = 0; i < 27; ++i) mus[i] = mu1[i] + mu2[i];
        CHECK(pairing_aj(br, mus, x) == pairing_aj(br, mu1, x) + pairing_aj(br, mu2, x));
        // <h mu, h v> = nu1(h)^{-j} <mu, v>
        const std::vector<std::pair<Mat2, Rat>> hs{{mat2(1, 1, 0, 1), Rat(1)},
                                                   {mat2(0, 1, -1, 0), Rat(1)},
                                                   {mat2(2, 0, 0, 1), Rat(1)},
                                                   {mat2(1, 0, 1, 3), Rat(1, 2)}};
        for (const auto& [h, z] : hs) {
            Rat nu1 = (h[0][0] * h[1][1] - h[0][1] * h[1][0]) / z;
            // V_(0,-j) x trivial GL1 twisted by nu1^j is V^H_(j,0;-j); act on the untwisted side
            auto hv = gl2_action(j, h, x);
            auto hmu = dual_action(v, embed_h(h, z), mu1);
            CHECK(pairing_aj(br, hmu, hv) == rpow(nu1, -j) * pairing_aj(br, mu1, x));
        }
    }
    // a dual vector supported on another weight pairs to zero
    auto br = br_map(v, 1);
    for (int i = 0; i < v.dimension(); ++i) {
        if (v.weight(i)[2] == -1) continue;
        std::vector<Rat> mu(27, Rat(0));
        mu[i] = 1;
        CHECK(pairing_aj(br, mu, {Rat(1), Rat(1)}) == 0);
    }
    // j = 0: the dual of the trivial constituent's image
    auto b0 = br_map(v, 0);
    std::vector<Rat> img;
    for (const auto& row : b0.matrix) img.push_back(row[0]);
    std::vector<Rat> mu = img;
    Rat n = dot(img, img);
    for (auto& x : mu) x /= n;
    CHECK(pairing_aj(b0, mu, {Rat(1)}) == 1);
}

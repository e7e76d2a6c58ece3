#include "gl3p/branching.hpp"

namespace gl3p {

Mat2 mat2(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    Mat2 m;
    m[0] = {a, b};
    m[1] = {c, d};
    return m;
}

// ---- 3x3 matrices -------------------------------------------------------------

Mat3 mat3_identity() {
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) m[i][k] = i == k ? 1 : 0;
    return m;
}

Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            Rat s = 0;
            for (int l = 0; l < 3; ++l) s += a[i][l] * b[l][k];
            m[i][k] = s;
        }
    return m;
}

Rat mat3_det(const Mat3& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Mat3 mat3_inverse(const Mat3& a) {
    Rat d = mat3_det(a);
    if (d == 0) throw DomainError("singular matrix");
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            // cofactor of (k, i)
            int r0 = (k + 1) % 3, r1 = (k + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            m[i][k] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) / d;
        }
    return m;
}

Mat3 embed_h(const Mat2& gamma, const Rat& z) {
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) m[i][k] = 0;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) m[i][k] = gamma[i][k];
    m[2][2] = z;
    return m;
}

// ---- polynomials in x, y ----------------------------------------------------------

namespace {

void add_to(Poly6& p, const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = p.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

Poly6 mul(const Poly6& a, const Poly6& b) {
    Poly6 r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Monomial m;
            for (int i = 0; i < 6; ++i) m[i] = ma[i] + mb[i];
            add_to(r, m, ca * cb);
        }
    return r;
}

Poly6 unit_poly() { return Poly6{{Monomial{}, Rat(1)}}; }

std::vector<Monomial> bidegree_monomials(int a) {
    std::vector<Monomial> out;
    for (int x1 = a; x1 >= 0; --x1)
        for (int x2 = a - x1; x2 >= 0; --x2)
            for (int y1 = a; y1 >= 0; --y1)
                for (int y2 = a - y1; y2 >= 0; --y2) {
                    int x3 = a - x1 - x2, y3 = a - y1 - y2;
                    if (x3 > 0 && y3 > 0) continue;
                    out.push_back({x1, x2, x3, y1, y2, y3});
                }
    return out;
}

}  // namespace

Poly6 reduce_mod_contraction(const Poly6& p) {
    Poly6 done, work = p;
    while (!work.empty()) {
        auto node = work.extract(work.begin());
        const Monomial m = node.key();
        const Rat c = node.mapped();
        if (m[2] == 0 || m[5] == 0) {
            add_to(done, m, c);
            continue;
        }
        // x3 y3 -> -x1 y1 - x2 y2
        Monomial base = m;
        --base[2];
        --base[5];
        Monomial m1 = base, m2 = base;
        ++m1[0];
        ++m1[3];
        ++m2[1];
        ++m2[4];
        add_to(work, m1, -c);
        add_to(work, m2, -c);
    }
    return done;
}

Gl3Irrep::Gl3Irrep(int a) : a_(a) {
    if (a < 0) throw DomainError("weight a must be nonnegative");
    basis_ = bidegree_monomials(a);
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = static_cast<int>(i);
}

std::array<int, 3> Gl3Irrep::weight(int i) const {
    const auto& m = basis_.at(static_cast<std::size_t>(i));
    return {m[0] - m[3], m[1] - m[4], m[2] - m[5]};
}

std::vector<int> Gl3Irrep::weight_space(const std::array<int, 3>& w) const {
    std::vector<int> out;
    for (int i = 0; i < dimension(); ++i)
        if (weight(i) == w) out.push_back(i);
    return out;
}

std::vector<Rat> Gl3Irrep::coordinates(const Poly6& p) const {
    std::vector<Rat> v(basis_.size(), Rat(0));
    for (const auto& [m, c] : reduce_mod_contraction(p)) {
        auto it = index_.find(m);
        if (it == index_.end()) throw DomainError("polynomial does not have bidegree (a, a)");
        v[static_cast<std::size_t>(it->second)] = c;
    }
    return v;
}

Poly6 Gl3Irrep::polynomial(const std::vector<Rat>& v) const {
    Poly6 p;
    for (std::size_t i = 0; i < basis_.size(); ++i) add_to(p, basis_[i], v.at(i));
    return p;
}

std::vector<Rat> Gl3Irrep::lie_action(int i, int j, const std::vector<Rat>& v) const {
    Poly6 out;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (v[k] == 0) continue;
        const auto& m = basis_[k];
        // x_i d/dx_j
        if (m[j] > 0) {
            Monomial n = m;
            --n[j];
            ++n[i];
            add_to(out, n, v[k] * m[j]);
        }
        // -y_j d/dy_i
        if (m[3 + i] > 0) {
            Monomial n = m;
            --n[3 + i];
            ++n[3 + j];
            add_to(out, n, -v[k] * m[3 + i]);
        }
    }
    return coordinates(out);
}

std::vector<Rat> Gl3Irrep::group_action(const Mat3& gamma, const std::vector<Rat>& v) const {
    Mat3 inv = mat3_inverse(gamma);
    // images of the six variables as linear forms
    std::array<Poly6, 6> image;
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 3; ++i) {
            Monomial mx{}, my{};
            mx[i] = 1;
            my[3 + i] = 1;
            add_to(image[k], mx, gamma[i][k]);
            add_to(image[3 + k], my, inv[k][i]);
        }
    }
    std::array<std::vector<Poly6>, 6> powers;
    for (int k = 0; k < 6; ++k) {
        powers[k].push_back(unit_poly());
        for (int e = 1; e <= a_; ++e) powers[k].push_back(mul(powers[k].back(), image[k]));
    }
    Poly6 out;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (v[k] == 0) continue;
        Poly6 term{{Monomial{}, v[k]}};
        for (int var = 0; var < 6; ++var)
            if (basis_[k][var] > 0) term = mul(term, powers[var][basis_[k][var]]);
        for (const auto& [m, c] : term) add_to(out, m, c);
    }
    return coordinates(out);
}

Rat Gl3Irrep::evaluate(const std::vector<Rat>& v, const Mat3& g) const {
    std::array<Rat, 6> vals;
    for (int k = 0; k < 3; ++k) vals[k] = g[0][k];
    vals[3] = g[0][1] * g[1][2] - g[0][2] * g[1][1];
    vals[4] = g[0][2] * g[1][0] - g[0][0] * g[1][2];
    vals[5] = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    Rat d = mat3_det(g);
    if (d == 0) throw DomainError("evaluation at a singular matrix");
    Rat acc = 0;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (v[k] == 0) continue;
        Rat t = v[k];
        for (int var = 0; var < 6; ++var) t *= rpow(vals[var], basis_[k][var]);
        acc += t;
    }
    return acc * rpow(d, -a_);
}

// ---- decomposition --------------------------------------------------------------

long dimension(int a) {
    if (a < 0) throw DomainError("weight a must be nonnegative");
    // Weyl: prod over positive roots of <lambda + rho, alpha> / <rho, alpha>
    const long l1 = a + 1, l2 = 0, l3 = -a - 1;
    return (l1 - l2) * (l1 - l3) * (l2 - l3) / 2;
}

int BranchingDecomp::total_dimension() const {
    int s = 0;
    for (const auto& [ij, m] : multiplicity) s += m * (ij.first + ij.second + 1);
    for (const auto& [h, m] : other) s += m * h.dimension();
    return s;
}

bool BranchingDecomp::all_ones() const {
    if (!other.empty()) return false;
    for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= a; ++j) {
            auto it = multiplicity.find({i, j});
            if (it == multiplicity.end() || it->second != 1) return false;
        }
    return true;
}

BranchingDecomp restrict_decompose(const Gl3Irrep& v) {
    BranchingDecomp d;
    d.a = v.a();
    std::map<std::array<int, 3>, std::vector<int>> spaces;
    for (int i = 0; i < v.dimension(); ++i) spaces[v.weight(i)].push_back(i);
    for (int i = 0; i <= d.a; ++i)
        for (int j = 0; j <= d.a; ++j) d.multiplicity[{i, j}] = 0;
    for (const auto& [w, idx] : spaces) {
        if (w[0] < w[1]) continue;
        std::array<int, 3> up{w[0] + 1, w[1] - 1, w[2]};
        auto target = v.weight_space(up);
        int kernel = static_cast<int>(idx.size());
        if (!target.empty()) {
            Matrix<Rat> m(target.size(), std::vector<Rat>(idx.size(), Rat(0)));
            for (std::size_t c = 0; c < idx.size(); ++c) {
                std::vector<Rat> e(static_cast<std::size_t>(v.dimension()), Rat(0));
                e[static_cast<std::size_t>(idx[c])] = 1;
                auto img = v.lie_action(0, 1, e);
                for (std::size_t r = 0; r < target.size(); ++r) m[r][c] = img[static_cast<std::size_t>(target[r])];
            }
            kernel -= rank(m);
        }
        if (kernel == 0) continue;
        HWeightRep h{w[0], w[1], w[2]};
        int i = -w[1], j = w[0];
        if (i >= 0 && j >= 0 && i <= d.a && j <= d.a && w[2] == i - j) {
            d.multiplicity[{i, j}] += kernel;
        } else {
            d.other.emplace_back(h, kernel);
        }
    }
    return d;
}

// ---- branching maps ---------------------------------------------------------------

std::vector<Rat> sym_action(int j, const Mat2& gamma, const Rat& z, const std::vector<Rat>& v) {
    // u1^{j-k} u2^k -> (g11 u1 + g12 u2)^{j-k} (g21 u1 + g22 u2)^k ... with u gamma:
    // (u gamma)_1 = u1 g11 + u2 g21, (u gamma)_2 = u1 g12 + u2 g22
    std::vector<Rat> out(static_cast<std::size_t>(j + 1), Rat(0));
    auto lin_pow = [&](const Rat& c1, const Rat& c2, int e) {
        std::vector<Rat> p(static_cast<std::size_t>(e + 1), Rat(0));  // coefficient of u2^m
        for (int m = 0; m <= e; ++m)
            p[m] = Rat(factorial(e) / (factorial(m) * factorial(e - m))) * rpow(c1, e - m) * rpow(c2, m);
        return p;
    };
    for (int k = 0; k <= j; ++k) {
        if (v[k] == 0) continue;
        auto p1 = lin_pow(gamma[0][0], gamma[1][0], j - k);
        auto p2 = lin_pow(gamma[0][1], gamma[1][1], k);
        for (int m1 = 0; m1 <= j - k; ++m1)
            for (int m2 = 0; m2 <= k; ++m2) out[m1 + m2] += v[k] * p1[m1] * p2[m2];
    }
    Rat s = rpow(z, -j);
    for (auto& x : out) x *= s;
    return out;
}

std::vector<Rat> gl2_action(int j, const Mat2& gamma, const std::vector<Rat>& v) {
    Rat det = gamma[0][0] * gamma[1][1] - gamma[0][1] * gamma[1][0];
    auto out = sym_action(j, gamma, Rat(1), v);
    for (auto& x : out) x *= rpow(det, -j);
    return out;
}

BranchingMap br_map(const Gl3Irrep& v, int j) {
    const int a = v.a();
    if (j < 0 || j > a) throw DomainError("br_map needs 0 <= j <= a");
    // unknowns: the image of u1^{j-k} u2^k inside the weight space (j-k, k, -j)
    std::vector<std::vector<int>> spaces;
    std::vector<int> offset;
    int unknowns = 0;
    for (int k = 0; k <= j; ++k) {
        spaces.push_back(v.weight_space({j - k, k, -j}));
        offset.push_back(unknowns);
        unknowns += static_cast<int>(spaces.back().size());
    }
    const std::size_t dim = static_cast<std::size_t>(v.dimension());
    Matrix<Rat> eqs;
    // E12 u_k = k u_{k-1}, E21 u_k = (j-k) u_{k+1}
    for (int k = 0; k <= j; ++k) {
        for (int dir = 0; dir < 2; ++dir) {
            int target = dir == 0 ? k - 1 : k + 1;
            Rat coeff = dir == 0 ? Rat(k) : Rat(j - k);
            std::vector<std::vector<Rat>> lhs;  // D applied to each basis vector of space k
            for (int idx : spaces[k]) {
                std::vector<Rat> e(dim, Rat(0));
                e[static_cast<std::size_t>(idx)] = 1;
                lhs.push_back(dir == 0 ? v.lie_action(0, 1, e) : v.lie_action(1, 0, e));
            }
            // every coordinate: sum_c x_{k,c} D(e_c)[r] - coeff x_{target,r} = 0
            for (std::size_t r = 0; r < dim; ++r) {
                std::vector<Rat> row(static_cast<std::size_t>(unknowns), Rat(0));
                bool any = false;
                for (std::size_t c = 0; c < spaces[k].size(); ++c)
                    if (lhs[c][r] != 0) {
                        row[static_cast<std::size_t>(offset[k]) + c] += lhs[c][r];
                        any = true;
                    }
                if (target >= 0 && target <= j) {
                    const auto& sp = spaces[target];
                    for (std::size_t c = 0; c < sp.size(); ++c)
                        if (static_cast<std::size_t>(sp[c]) == r) {
                            row[static_cast<std::size_t>(offset[target]) + c] -= coeff;
                            any = true;
                        }
                }
                if (any) eqs.push_back(std::move(row));
            }
        }
    }
    auto sols = nullspace(eqs, unknowns);
    BranchingMap br;
    br.a = a;
    br.j = j;
    br.solution_dimension = static_cast<int>(sols.size());
    if (sols.size() != 1)
        throw VerificationError("space of H-maps has dimension " + std::to_string(sols.size()) + ", expected 1");
    br.matrix.assign(dim, std::vector<Rat>(static_cast<std::size_t>(j + 1), Rat(0)));
    for (int k = 0; k <= j; ++k)
        for (std::size_t c = 0; c < spaces[k].size(); ++c)
            br.matrix[static_cast<std::size_t>(spaces[k][c])][k] = sols[0][static_cast<std::size_t>(offset[k]) + c];
    // normalise f(u^{-1}) = 1 for f the image of u1^j
    Mat3 u_inv = mat3_identity();
    u_inv[0][2] = -1;
    std::vector<Rat> f(dim);
    for (std::size_t r = 0; r < dim; ++r) f[r] = br.matrix[r][0];
    Rat val = v.evaluate(f, u_inv);
    if (val == 0) throw VerificationError("highest weight image vanishes at u^{-1}");
    for (auto& row : br.matrix)
        for (auto& x : row) x /= val;
    return br;
}

namespace {

std::vector<Rat> mat_apply(const Matrix<Rat>& m, const std::vector<Rat>& v) {
    std::vector<Rat> out(m.size(), Rat(0));
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c)
            if (m[r][c] != 0 && v[c] != 0) out[r] += m[r][c] * v[c];
    return out;
}

}  // namespace

bool check_equivariance(const Gl3Irrep& v, const BranchingMap& br) {
    const std::vector<std::pair<Mat2, Rat>> gens{
        {mat2(1, 1, 0, 1), Rat(1)},
        {mat2(0, 1, -1, 0), Rat(1)},
        {mat2(-1, 0, 0, 1), Rat(1)},
        {mat2(1, 0, 0, 1), Rat(-1)},
    };
    for (const auto& [g, z] : gens) {
        Mat3 big = embed_h(g, z);
        for (int k = 0; k <= br.j; ++k) {
            std::vector<Rat> e(static_cast<std::size_t>(br.j + 1), Rat(0));
            e[k] = 1;
            auto lhs = mat_apply(br.matrix, sym_action(br.j, g, z, e));
            auto rhs = v.group_action(big, mat_apply(br.matrix, e));
            if (lhs != rhs) return false;
        }
    }
    return true;
}

Rat pairing_aj(const BranchingMap& br, const std::vector<Rat>& mu, const std::vector<Rat>& v) {
    auto img = mat_apply(br.matrix, v);
    Rat s = 0;
    for (std::size_t i = 0; i < img.size(); ++i) s += mu.at(i) * img[i];
    return s;
}

std::vector<Rat> dual_action(const Gl3Irrep& v, const Mat3& gamma, const std::vector<Rat>& mu) {
    // (h mu)_i = mu(h^{-1} e_i)
    Mat3 inv = mat3_inverse(gamma);
    std::vector<Rat> out(mu.size(), Rat(0));
    for (std::size_t i = 0; i < mu.size(); ++i) {
        std::vector<Rat> e(mu.size(), Rat(0));
        e[i] = 1;
        auto img = v.group_action(inv, e);
        Rat s = 0;
        for (std::size_t k = 0; k < img.size(); ++k) s += mu[k] * img[k];
        out[i] = s;
    }
    return out;
}

}  // namespace gl3p

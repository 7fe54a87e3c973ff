#include "aidlab/families.hpp"

#include "aidlab/free_nilpotent.hpp"

namespace aidlab {

namespace {

using Table = LieAlgebra<Rational>::Table;
using Poly = MultiPoly<Rational>;
using RF = RationalFn<Rational>;

// all indices below are 1-based, matching the usual e_1..e_n notation
void put(Table& t, int i, int j, int k, const Rational& c) { t.add(i - 1, j - 1, k - 1, c); }

void filiform_chain(Table& t, int n)
{
    for (int i = 2; i <= n - 1; ++i) put(t, 1, i, i + 1, 1);
}

Table build_L(int n)
{
    Table t(n);
    filiform_chain(t, n);
    return t;
}

Table build_Q(int n)
{
    Table t(n);
    filiform_chain(t, n);
    for (int i = 2; i <= n / 2; ++i) put(t, i, n - i + 1, n, (i % 2 == 0) ? -1 : 1);
    return t;
}

Table build_R(int n)
{
    Table t(n);
    filiform_chain(t, n);
    for (int i = 3; i <= n - 2; ++i) put(t, 2, i, i + 2, 1);
    return t;
}

Table build_W(int n)
{
    Table t(n);
    filiform_chain(t, n);
    for (int i = 2; i <= (n - 1) / 2; ++i)
        for (int j = i + 1; j <= n - i; ++j) put(t, i, j, i + j, witt_coefficient(i, j));
    return t;
}

Table build_F(int n)
{
    Table t(n);
    filiform_chain(t, n);
    const AlphaTable alpha = f_alpha_table(n);
    auto a = [&](int k, int s) {
        auto it = alpha.find({k, s});
        return it == alpha.end() ? Rational(0) : it->second;
    };
    for (int i = 2; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int r = 1; r <= n; ++r) {
                Rational coef = 0;
                for (int l = 0; l <= (j - i - 1) / 2; ++l) {
                    Rational term = binomial(j - i - l - 1, l) * a(i + l, r - j + i + 2 * l + 1);
                    coef += (l % 2 == 0) ? term : Rational(-term);
                }
                put(t, i, j, r, coef);
            }
    return t;
}

Table build_ex32(int n)
{
    // e_1..e_n, s = e_{n+1}, t = e_{n+2}
    Table t(n + 2);
    for (int i = 1; i <= n - 1; ++i) put(t, n + 1, i, i + 1, 1);
    for (int i = 1; i <= n - 2; ++i) put(t, n + 2, i, i + 2, 1);
    return t;
}

Table build_ex33()
{
    // x1 x2 x3 y1 y2 y3 t
    Table t(7);
    put(t, 1, 2, 4, 1);
    put(t, 1, 3, 5, 1);
    put(t, 2, 3, 6, 1);
    put(t, 7, 1, 6, 1);
    return t;
}

void require(bool ok, const std::string& msg)
{
    if (!ok) throw std::invalid_argument(msg);
}

Matrix<Rational> image_map(int n, const std::vector<std::tuple<int, int, Rational>>& entries)
{
    // entries (target p, source j, coefficient): e_j -> c e_p
    Matrix<Rational> d = zero_matrix<Rational>(n, n);
    for (const auto& [p, j, c] : entries) d(p - 1, j - 1) += c;
    return d;
}

Poly X(int n, int i) { return Poly::variable(n, i - 1); }
Poly C(int n, const Rational& c) { return Poly::constant(n, c); }
RF frac(Poly num, Poly den) { return RF(std::move(num), std::move(den)); }

WitnessPiece<Rational> piece(int n, std::vector<int> zero1, std::vector<int> nonzero1, std::string label)
{
    WitnessPiece<Rational> p;
    for (int z : zero1) p.zero.push_back(z - 1);
    for (int z : nonzero1) p.nonzero.push_back(z - 1);
    p.map = zero_map<Rational>(n);
    p.label = std::move(label);
    return p;
}

bool is_filiform_family(Family f) { return f == Family::W || f == Family::F; }

}  // namespace

Rational witt_coefficient(int i, int j)
{
    return Rational(6 * (j - i)) / (Rational(j) * Rational(j - 1) * binomial(j + i - 2, i - 2));
}

AlphaTable f_alpha_table(int n)
{
    AlphaTable a;
    auto R = [](long v) { return Rational(v); };
    for (int l = 2; l <= (n - 1) / 2; ++l) a[{l, 2 * l + 1}] = Rational(3) / (binomial(l, 2) * binomial(2 * l - 1, l - 1));
    a[{3, n - 4}] += 1;
    a[{4, n - 2}] += Rational(1, 7) + Rational(10, 21) * R((n - 7) * (n - 8)) / R((n - 4) * (n - 5));
    if (n == 13) a[{4, n}] += Rational(22105, 15246);
    a[{5, n}] += Rational(1, 42) - Rational(70 * (n - 8)) / (Rational(11) * R((n - 2) * (n - 3)) * R((n - 4) * (n - 5))) +
                 Rational(25, 99) * R((n - 6) * (n - 7) * (n - 8)) / R((n - 2) * (n - 3) * (n - 4)) +
                 Rational(5, 66) * R((n - 5) * (n - 6)) / R((n - 2) * (n - 3)) -
                 Rational(65, 1386) * R((n - 7) * (n - 8)) / R((n - 4) * (n - 5));
    for (auto it = a.begin(); it != a.end();) it = it->second == 0 ? a.erase(it) : std::next(it);
    return a;
}

Matrix<Rational> companion_matrix(const std::vector<Rational>& monic)
{
    if (monic.size() < 2 || monic.back() != 1) throw std::invalid_argument("companion matrix needs a monic polynomial");
    const int k = static_cast<int>(monic.size()) - 1;
    Matrix<Rational> m = zero_matrix<Rational>(k, k);
    for (int i = 1; i < k; ++i) m(i, i - 1) = 1;
    for (int i = 0; i < k; ++i) m(i, k - 1) = -monic[i];
    return m;
}

LieAlgebra<Rational> heisenberg()
{
    Table t(3);
    put(t, 1, 2, 3, 1);
    return LieAlgebra<Rational>("heis", FieldSpec::rationals(), std::move(t));
}

LieAlgebra<Rational> almost_abelian(const Matrix<Rational>& action, std::string name)
{
    require(action.rows() == action.cols() && action.rows() >= 1, "almost abelian action must be a square matrix");
    auto a = abelian<Rational>(static_cast<int>(action.rows()));
    return semidirect_abelian(a, {action}, std::move(name));
}

Sl2Data sl2_natural_data()
{
    Table t(3);  // h, e, f
    put(t, 1, 2, 2, 2);
    put(t, 1, 3, 3, -2);
    put(t, 2, 3, 1, 1);
    LieAlgebra<Rational> s("sl2", FieldSpec::rationals(), std::move(t));
    Matrix<Rational> h = zero_matrix<Rational>(2, 2), e = h, f = h;
    h(0, 0) = 1;
    h(1, 1) = -1;
    e(0, 1) = 1;
    f(1, 0) = 1;
    return {std::move(s), {h, e, f}};
}

std::string family_label(const FamilySpec& spec)
{
    if (!spec.label.empty()) return spec.label;
    const std::string n = std::to_string(spec.n);
    switch (spec.family) {
    case Family::L: return "L:" + n;
    case Family::Q: return "Q:" + n;
    case Family::R: return "R:" + n;
    case Family::W: return "W:" + n;
    case Family::F: return "F:" + n;
    case Family::heisenberg: return "heis";
    case Family::free_nilpotent: return "free:" + std::to_string(spec.r) + "," + std::to_string(spec.c);
    case Family::almost_abelian: return "aa";
    case Family::example_3_2: return "ex32:" + n;
    case Family::example_3_3: return "ex33";
    case Family::sl2_natural: return "sl2nat";
    }
    return "?";
}

LieAlgebra<Rational> build_family(const FamilySpec& spec)
{
    const int n = spec.n;
    const std::string label = family_label(spec);
    auto make = [&](Table t) { return LieAlgebra<Rational>(label, FieldSpec::rationals(), std::move(t)); };
    switch (spec.family) {
    case Family::L:
        require(n >= 3, "L_n needs n >= 3");
        return make(build_L(n));
    case Family::Q:
        require(n >= 6 && n % 2 == 0, "Q_n needs even n >= 6");
        return make(build_Q(n));
    case Family::R:
        require(n >= 5, "R_n needs n >= 5");
        return make(build_R(n));
    case Family::W:
        require(n >= 5, "W_n needs n >= 5");
        return make(build_W(n));
    case Family::F:
        require(n >= 13, "F_n needs n >= 13");
        return make(build_F(n));
    case Family::heisenberg:
        return heisenberg();
    case Family::free_nilpotent: {
        auto f = build_free_nilpotent(spec.r, spec.c);
        return f.algebra;
    }
    case Family::almost_abelian:
        return almost_abelian(spec.action, label);
    case Family::example_3_2:
        require(n >= 3, "ex32 needs n >= 3");
        return make(build_ex32(n));
    case Family::example_3_3:
        return make(build_ex33());
    case Family::sl2_natural: {
        auto d = sl2_natural_data();
        return semidirect(abelian<Rational>(2), d.s, d.actions, label);
    }
    }
    throw std::logic_error("unknown family");
}

Rational graded_coefficient(const LieAlgebra<Rational>& g, int i, int j)
{
    for (const auto& [k, c] : g.bracket_basis(i - 1, j - 1))
        if (k == i + j - 1) return c;
    return 0;
}

std::vector<std::string> derivation_names(const FamilySpec& spec)
{
    switch (spec.family) {
    case Family::Q: {
        std::vector<std::string> out{"t0", "t1", "t2"};
        for (int s = 2; s <= spec.n / 2 - 1; ++s) out.push_back("h_" + std::to_string(s));
        return out;
    }
    case Family::W:
        return {"t1", "t2", "t3", "h"};
    case Family::F:
        return {"t1", "t2", "t3"};
    case Family::R:
        return {"E_n2"};
    case Family::example_3_2:
    case Family::example_3_3:
        return {"D"};
    default:
        return {};
    }
}

Matrix<Rational> named_derivation(const FamilySpec& spec, const LieAlgebra<Rational>& g, const std::string& name)
{
    const int n = spec.n;
    Matrix<Rational> d;
    const auto unknown = std::invalid_argument("no derivation named '" + name + "' for " + spec.label);
    switch (spec.family) {
    case Family::Q:
        if (name == "t0") {
            d = image_map(n, {{n, 2, 1}});
        } else if (name == "t1") {
            std::vector<std::tuple<int, int, Rational>> e{{1, 1, 1}, {2, 1, 1}, {n, n, n - 3}};
            for (int i = 3; i <= n - 1; ++i) e.emplace_back(i, i, i - 2);
            d = image_map(n, e);
        } else if (name == "t2") {
            std::vector<std::tuple<int, int, Rational>> e{{2, 1, -1}, {n, n, 2}};
            for (int i = 2; i <= n - 1; ++i) e.emplace_back(i, i, 1);
            d = image_map(n, e);
        } else if (name.rfind("h_", 0) == 0 || (name.size() > 1 && name[0] == 'h')) {
            const int s = std::stoi(name.substr(name[1] == '_' ? 2 : 1));
            if (s < 2 || s > n / 2 - 1) throw std::invalid_argument("h_s needs 2 <= s <= n/2-1");
            std::vector<std::tuple<int, int, Rational>> e;
            for (int i = 2; i <= n + 1 - 2 * s; ++i) e.emplace_back(i - 1 + 2 * s, i, 1);
            d = image_map(n, e);
        } else {
            throw unknown;
        }
        break;
    case Family::W:
    case Family::F:
        if (name == "t1") {
            d = image_map(n, {{n, 2, 1}});
        } else if (name == "t2") {
            d = image_map(n, {{n - 1, 2, 1}, {n, 3, 1}});
        } else if (name == "t3") {
            d = image_map(n, {{n - 2, 2, 1}, {n - 1, 3, 1}, {n, 4, 1}});
        } else if (name == "h") {
            if (spec.family == Family::F)
                throw std::invalid_argument("h(e_i) = i e_i is not a derivation of F_n");
            std::vector<std::tuple<int, int, Rational>> e;
            for (int i = 1; i <= n; ++i) e.emplace_back(i, i, i);
            d = image_map(n, e);
        } else {
            throw unknown;
        }
        break;
    case Family::R:
        if (name != "E_n2" && name != "E") throw unknown;
        d = image_map(n, {{n, 2, 1}});
        break;
    case Family::example_3_2:
        if (name != "D") throw unknown;
        d = image_map(n + 2, {{n, n + 2, 1}});
        break;
    case Family::example_3_3:
        if (name != "D") throw unknown;
        d = image_map(7, {{4, 1, 1}, {5, 1, 1}});
        break;
    default:
        throw unknown;
    }
    if (!is_derivation(g, d)) throw std::logic_error("named map '" + name + "' fails Leibniz on " + spec.label);
    return d;
}

std::vector<std::string> witness_names(const FamilySpec& spec)
{
    const int n = spec.n;
    switch (spec.family) {
    case Family::W:
        if (n >= 9) return {"t1", "t2", "t3"};
        if (n >= 7) return {"t1", "t2"};
        return {"t1"};
    case Family::F:
        return {"t1", "t2", "t3"};
    case Family::R:
        return {"E_n2"};
    case Family::example_3_2:
    case Family::example_3_3:
        return {"D"};
    default:
        return {};
    }
}

PiecewiseWitness<Rational> builtin_witness(const FamilySpec& spec, const LieAlgebra<Rational>& g, const std::string& name)
{
    const int dim = g.dim();
    PiecewiseWitness<Rational> w;
    w.name = name;
    w.nvars = dim;
    const auto unknown = std::invalid_argument("no built-in witness for (" + spec.label + ", " + name + ")");
    auto X1 = [&](int i) { return X(dim, i); };
    auto K = [&](const Rational& c) { return C(dim, c); };

    if (is_filiform_family(spec.family)) {
        const int n = spec.n;
        auto c = [&](int i, int j) {
            Rational v = graded_coefficient(g, i, j);
            if (v == 0) throw std::invalid_argument("witness needs c_{" + std::to_string(i) + "," + std::to_string(j) + "} != 0");
            return v;
        };
        if (name == "t1") {
            auto p1 = piece(dim, {}, {1}, "x1 != 0");
            p1.map[n - 2] = frac(X1(2), X1(1));
            auto p2 = piece(dim, {1}, {}, "x1 = 0");
            p2.map[n - 3] = frac(K(1), K(c(2, n - 2)));
            w.pieces = {p1, p2};
            return w;
        }
        if (name == "t2") {
            if (spec.family == Family::W && n < 7) throw unknown;
            auto p1 = piece(dim, {}, {1}, "x1 != 0");
            p1.map[n - 3] = frac(X1(2), X1(1));
            p1.map[n - 2] = frac(X1(3) * X1(1) - X1(2) * X1(2) * c(2, n - 2), X1(1) * X1(1));
            auto p2 = piece(dim, {1}, {2}, "x1 = 0, x2 != 0");
            p2.map[n - 4] = frac(K(1), K(c(2, n - 3)));
            p2.map[n - 3] = frac(X1(3) * (c(2, n - 3) - c(3, n - 3)), X1(2) * (c(2, n - 2) * c(2, n - 3)));
            auto p3 = piece(dim, {1, 2}, {}, "x1 = x2 = 0");
            p3.map[n - 4] = frac(K(1), K(c(3, n - 3)));
            w.pieces = {p1, p2, p3};
            return w;
        }
        if (name == "t3") {
            if (spec.family == Family::W && n < 9) throw unknown;
            // rho_1
            auto p1 = piece(dim, {}, {1}, "x1 != 0");
            p1.map[n - 4] = frac(X1(2), X1(1));
            p1.map[n - 3] = frac(X1(3) * X1(1) - X1(2) * X1(2) * c(2, n - 3), X1(1) * X1(1));
            p1.map[n - 2] = frac(X1(4) * X1(1) * X1(1) - X1(2) * X1(3) * X1(1) * (c(2, n - 2) + c(3, n - 3)) +
                                     X1(2) * X1(2) * X1(2) * (c(2, n - 2) * c(2, n - 3)),
                                 X1(1) * X1(1) * X1(1));
            // rho_2
            auto p2 = piece(dim, {1}, {2}, "x1 = 0, x2 != 0");
            p2.map[n - 5] = frac(K(1), K(c(2, n - 4)));
            p2.map[n - 4] = frac(X1(3) * (c(2, n - 4) - c(3, n - 4)), X1(2) * (c(2, n - 3) * c(2, n - 4)));
            {
                const Rational a = (c(2, n - 4) - c(4, n - 4)) / (c(2, n - 2) * c(2, n - 4));
                const Rational b = (c(2, n - 4) - c(3, n - 4)) * c(3, n - 3) / (c(2, n - 2) * c(2, n - 3) * c(2, n - 4));
                p2.map[n - 3] = frac(X1(4) * X1(2) * a - X1(3) * X1(3) * b, X1(2) * X1(2));
            }
            // On F_13 the alpha_{4,13} term leaves a residual kappa x2 e_n on
            // this stratum; a constant e_{n-2} term absorbs it.  kappa is read
            // off at x = e_2 and vanishes for W_n and F_n with n >= 14.
            {
                std::vector<Rational> at(dim, Rational(0));
                at[1] = 1;
                Vector<Rational> phi(dim), e2 = Vector<Rational>::Zero(dim);
                for (int k = 0; k < dim; ++k) phi(k) = p2.map[k].eval(at);
                e2(1) = 1;
                const Vector<Rational> r = g.bracket(e2, phi) - named_derivation(spec, g, "t3") * e2;
                const Rational kappa = r(n - 1) / c(2, n - 2);
                if (kappa != 0) p2.map[n - 3] = p2.map[n - 3] + RF::polynomial(K(-kappa));
            }
            // rho_3
            auto p3 = piece(dim, {1, 2}, {3}, "x1 = x2 = 0, x3 != 0");
            p3.map[n - 5] = frac(K(1), K(c(3, n - 4)));
            p3.map[n - 4] = frac(X1(4) * (c(3, n - 4) - c(4, n - 4)), X1(3) * (c(3, n - 3) * c(3, n - 4)));
            // rho_4
            auto p4 = piece(dim, {1, 2, 3}, {}, "x1 = x2 = x3 = 0");
            p4.map[n - 5] = frac(K(1), K(c(4, n - 4)));
            w.pieces = {p1, p2, p3, p4};
            return w;
        }
        throw unknown;
    }
    switch (spec.family) {
    case Family::R: {
        if (name != "E_n2" && name != "E") throw unknown;
        const int n = spec.n;
        auto p1 = piece(dim, {}, {1}, "x1 != 0");
        p1.map[n - 2] = frac(X1(2), X1(1));
        auto p2 = piece(dim, {1}, {}, "x1 = 0");
        p2.map[n - 3] = RF::polynomial(K(1));
        w.pieces = {p1, p2};
        return w;
    }
    case Family::example_3_2: {
        if (name != "D") throw unknown;
        const int n = spec.n;
        const int beta = n + 1, gamma = n + 2;
        auto p1 = piece(dim, {}, {beta}, "beta != 0");
        p1.map[n - 2] = frac(X1(gamma), X1(beta));
        auto p2 = piece(dim, {beta}, {}, "beta = 0");
        p2.map[n - 3] = RF::polynomial(K(1));
        w.pieces = {p1, p2};
        return w;
    }
    case Family::example_3_3: {
        if (name != "D") throw unknown;
        auto p1 = piece(dim, {}, {1}, "a1 != 0");
        p1.map[1] = RF::polynomial(K(1));
        p1.map[2] = RF::polynomial(K(1));
        p1.map[6] = frac(X1(2) - X1(3), X1(1));
        auto p2 = piece(dim, {1}, {}, "a1 = 0");
        w.pieces = {p1, p2};
        return w;
    }
    default:
        throw unknown;
    }
}

}  // namespace aidlab

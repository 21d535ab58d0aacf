#include "catch_amalgamated.hpp"

#include "coxtorus/error.hpp"
#include "coxtorus/extension.hpp"
#include "hyperbolic_table.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <random>
#include <set>

using namespace cxt;

namespace {

struct Edge {
    int a, b, m;
};

CoxeterMatrix graph(int n, const std::vector<Edge>& edges)
{
    CoxeterMatrix m(n);
    for (auto& e : edges)
        m.set(e.a, e.b, e.m);
    return m;
}

CoxeterMatrix cycle(int n)
{
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        e.push_back({i, (i + 1) % n, 3});
    return graph(n, e);
}

CoxeterMatrix path(const std::vector<int>& labels)
{
    std::vector<Edge> e;
    for (size_t i = 0; i < labels.size(); ++i)
        e.push_back({static_cast<int>(i), static_cast<int>(i) + 1, labels[i]});
    return graph(static_cast<int>(labels.size()) + 1, e);
}

CoxeterMatrix star(const std::vector<int>& arms)
{
    std::vector<Edge> e;
    int next = 1;
    for (int len : arms) {
        int prev = 0;
        for (int k = 0; k < len; ++k) {
            e.push_back({prev, next, 3});
            prev = next++;
        }
    }
    return graph(next, e);
}

std::vector<CoxeterMatrix> standard_affine()
{
    std::vector<CoxeterMatrix> out;
    out.push_back(graph(2, {{0, 1, kInfinity}}));
    for (int n = 2; n <= 8; ++n)
        out.push_back(cycle(n + 1));
    for (int n = 3; n <= 8; ++n) {
        std::vector<Edge> e{{0, 2, 3}, {1, 2, 3}};
        for (int i = 2; i < n - 1; ++i)
            e.push_back({i, i + 1, 3});
        e.push_back({n - 1, n, 4});
        out.push_back(graph(n + 1, e));
    }
    for (int n = 2; n <= 8; ++n) {
        std::vector<int> l(static_cast<size_t>(n), 3);
        l.front() = 4;
        l.back() = 4;
        out.push_back(path(l));
    }
    for (int n = 4; n <= 8; ++n) {
        std::vector<Edge> e{{0, 2, 3}, {1, 2, 3}};
        for (int i = 2; i < n - 2; ++i)
            e.push_back({i, i + 1, 3});
        e.push_back({n - 2, n - 1, 3});
        e.push_back({n - 2, n, 3});
        out.push_back(graph(n + 1, e));
    }
    out.push_back(star({2, 2, 2}));
    out.push_back(star({1, 3, 3}));
    out.push_back(star({1, 2, 5}));
    out.push_back(path({3, 3, 4, 3}));
    out.push_back(path({3, 6}));
    return out;
}

// classification from floating-point eigenvalues; nullopt when too close to call
std::optional<DiagramClass> float_class(const CoxeterMatrix& m)
{
    int n = m.size();
    auto eig = [&](const std::vector<int>& keep) {
        Eigen::MatrixXd b(keep.size(), keep.size());
        for (size_t i = 0; i < keep.size(); ++i)
            for (size_t j = 0; j < keep.size(); ++j) {
                int l = m(keep[i], keep[j]);
                b(static_cast<long>(i), static_cast<long>(j)) =
                    i == j ? 1.0 : (l == kInfinity ? -1.0 : -std::cos(M_PI / l));
            }
        return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(b).eigenvalues();
    };
    bool unclear = false;
    auto inertia = [&](const Eigen::VectorXd& ev) {
        Signature s;
        for (long i = 0; i < ev.size(); ++i) {
            double v = ev(i);
            if (std::abs(v) < 1e-9)
                ++s.zero;
            else if (std::abs(v) < 1e-5)
                unclear = true;
            else if (v > 0)
                ++s.pos;
            else
                ++s.neg;
        }
        return s;
    };
    std::vector<int> all;
    for (int i = 0; i < n; ++i)
        all.push_back(i);
    Signature s = inertia(eig(all));
    DiagramClass c;
    if (s.neg == 0)
        c = s.zero == 0 ? DiagramClass::FINITE : DiagramClass::AFFINE;
    else if (s.zero != 0 || s.neg != 1)
        c = DiagramClass::OTHER;
    else {
        bool compact = true, hyp = true;
        for (int v = 0; v < n; ++v) {
            std::vector<int> keep;
            for (int u = 0; u < n; ++u)
                if (u != v)
                    keep.push_back(u);
            Signature t = inertia(eig(keep));
            hyp = hyp && t.neg == 0;
            compact = compact && t.zero == 0;
        }
        c = !hyp ? DiagramClass::OTHER : (compact ? DiagramClass::COMPACT_HYPERBOLIC : DiagramClass::NONCOMPACT_HYPERBOLIC);
    }
    if (unclear)
        return std::nullopt;
    return c;
}

Element conj(const CoxeterSystem& sys, const Element& x, const Element& y)
{
    return sys.multiply(sys.inverse(y), sys.multiply(x, y));
}

}  // namespace

TEST_CASE("distinguished reflections")
{
    auto i7 = CoxeterSystem::create(parse_type("I2(7)"));
    CHECK(distinguished_reflection(*i7).word == Word{1, 2, 1, 2, 1, 2, 1});

    auto a2 = CoxeterSystem::create(parse_type("A2"));
    // brute force: the reflection whose root has the largest height
    int best = -1, bh = -1;
    for (int k = 0; k < a2->num_positive_roots(); ++k) {
        int h = 0;
        for (auto& c : a2->root(k))
            h += static_cast<int>(c.rational_value().get_num().get_si());
        if (h > bh) {
            bh = h;
            best = k;
        }
    }
    CHECK(distinguished_reflection(*a2) == a2->reflection(best));
    CHECK(distinguished_reflection(*a2).word == Word{1, 2, 1});

    auto h4 = CoxeterSystem::create(parse_type("H4"));
    Element r = distinguished_reflection(*h4);
    CHECK(h4->reflection_root(r) >= 0);
    auto h3 = CoxeterSystem::create(parse_type("H3"));
    CHECK(distinguished_reflection(*h3) ==
          conj(*h3, h3->generator(3), h3->element_from_word({2, 1, 2, 1})));

    auto red = CoxeterSystem::create(graph(2, {}));
    CHECK_THROWS_AS(distinguished_reflection(*red), Error);
}

TEST_CASE("extended matrices")
{
    auto h3 = CoxeterSystem::create(parse_type("H3"));
    auto m3 = extended_matrix(*h3, distinguished_reflection(*h3));
    CHECK(m3(0, 1) == 3);
    CHECK(m3(0, 2) == 2);
    CHECK(m3(0, 3) == 5);
    CHECK(m3(1, 2) == 5);
    CHECK(m3(2, 3) == 3);

    auto h4 = CoxeterSystem::create(parse_type("H4"));
    auto m4 = extended_matrix(*h4, distinguished_reflection(*h4));
    CHECK(m4(0, 1) == 2);
    CHECK(m4(0, 2) == 2);
    CHECK(m4(0, 3) == 2);
    CHECK(m4(0, 4) == 5);

    for (int m : {5, 7, 9, 8, 12, 6, 10, 14}) {
        auto sys = CoxeterSystem::create(parse_type("I2(" + std::to_string(m) + ")"));
        auto e = extended_matrix(*sys, distinguished_reflection(*sys));
        if (m % 2) {
            CHECK(e(0, 1) == m);
            CHECK(e(0, 2) == m);
        } else if (m % 4 == 0) {
            CHECK(e(0, 1) == m);
            CHECK(e(0, 2) == 2);
        } else {
            CHECK(e(0, 1) == m / 2);
            CHECK(e(0, 2) == 2);
        }
    }

    auto a1 = CoxeterSystem::create(parse_type("A1"));
    CHECK(extended_matrix(*a1, distinguished_reflection(*a1))(0, 1) == kInfinity);

    auto a2 = CoxeterSystem::create(parse_type("A2"));
    try {
        extended_matrix(*a2, a2->element_from_word({1, 2}));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NOT_INVOLUTION);
    }
    CHECK_THROWS_AS(extended_matrix(*a2, a2->identity()), Error);
}

TEST_CASE("classification of standard diagrams")
{
    CHECK(classify_diagram(coxeter_matrix(parse_type("A2"))) == DiagramClass::FINITE);
    CHECK(classify_diagram(path({5, 3, 3, 5})) == DiagramClass::COMPACT_HYPERBOLIC);
    // 8-cycle with a pendant vertex
    std::vector<Edge> e8;
    for (int i = 0; i < 8; ++i)
        e8.push_back({i, (i + 1) % 8, 3});
    e8.push_back({0, 8, 3});
    CHECK(classify_diagram(graph(9, e8)) == DiagramClass::NONCOMPACT_HYPERBOLIC);

    for (char f : std::string("ABDEFGHI"))
        for (int n = 1; n <= 8; ++n) {
            TypeSpec t{f, n, 0};
            if ((f == 'B' && n < 2) || (f == 'D' && n < 4) || (f == 'E' && (n < 6 || n > 8)) ||
                (f == 'F' && n != 4) || (f == 'G' && n != 2) || (f == 'H' && (n < 3 || n > 4)) || (f == 'I' && n != 2))
                continue;
            if (f == 'I') {
                for (int m = 3; m <= 13; ++m) {
                    t.m = m;
                    CHECK(classify_diagram(coxeter_matrix(t)) == DiagramClass::FINITE);
                }
                continue;
            }
            CHECK(classify_diagram(coxeter_matrix(t)) == DiagramClass::FINITE);
        }
    for (auto& m : standard_affine()) {
        INFO(m.str());
        CHECK(classify_diagram(m) == DiagramClass::AFFINE);
    }
    CHECK(classify_diagram(path({4, 5})) == DiagramClass::COMPACT_HYPERBOLIC);
    CHECK(classify_diagram(graph(3, {{0, 1, kInfinity}, {1, 2, kInfinity}, {0, 2, kInfinity}})) ==
          DiagramClass::NONCOMPACT_HYPERBOLIC);
}

TEST_CASE("classification agrees with floating-point inertia")
{
    std::mt19937 rng(7);
    std::vector<int> labels{2, 2, 3, 3, 4, 5, 6, kInfinity};
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
        int n = 3 + static_cast<int>(rng() % 2);
        CoxeterMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                m.set(i, j, labels[rng() % labels.size()]);
        auto fc = float_class(m);
        if (!fc)
            continue;
        ++checked;
        INFO(m.str());
        CHECK(classify_diagram(m) == *fc);
    }
    CHECK(checked > 100);
}

TEST_CASE("signature by exact characteristic polynomial")
{
    auto h3 = CoxeterSystem::create(parse_type("H3"));
    auto h = HatGroup::create(h3);
    Signature s = signature(h->tits());
    CHECK(s.pos == 3);
    CHECK(s.neg == 1);
    CHECK(s.zero == 0);
    CHECK(h->diagram_class() == DiagramClass::COMPACT_HYPERBOLIC);
}

TEST_CASE("hat group realisations")
{
    auto i5 = CoxeterSystem::create(parse_type("I2(5)"));
    auto h = HatGroup::create(i5);
    FieldElem c = FieldElem::two_cos(real_cyclotomic_field(5), 1) * FieldElem(Rational(1, 2));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(h->tits()[static_cast<size_t>(i)][static_cast<size_t>(j)] == (i == j ? FieldElem(1) : -c));

    auto a2 = CoxeterSystem::create(parse_type("A2"));
    auto ha = HatGroup::create(a2);
    CHECK(ha->diagram_class() == DiagramClass::AFFINE);
    CHECK(ha->integral_affine());
    auto q = ha->q0();
    auto ap = ha->affine_pair(q);
    CHECK(ap.finite == a2->identity());
    CHECK(ap.translation == std::vector<Rational>{1, 1});
    CHECK(ha->project(q) == a2->identity());

    auto g2 = CoxeterSystem::create(parse_type("G2"));
    auto hg = HatGroup::create(g2);
    auto apg = hg->affine_pair(hg->q0());
    // coroot of the highest root 3a1 + 2a2 with a1 short
    CHECK(apg.translation == std::vector<Rational>{1, 2});
    CHECK_THROWS_AS(h->affine_pair(h->q0()), Error);

    auto f4 = CoxeterSystem::create(parse_type("F4"));
    CHECK_THROWS_AS(HatGroup::create(f4, f4->reflection(0)), Error);
}

TEST_CASE("generator matrices preserve the invariant form and satisfy the relations")
{
    for (auto t : {"A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "H3", "H4", "I2(5)", "I2(7)", "I2(8)", "I2(10)", "I2(12)"}) {
        auto h = HatGroup::create(CoxeterSystem::create(parse_type(t)));
        INFO(t);
        auto f = h->invariant_form();
        CHECK(f == transpose(f));
        int N = h->rank();
        for (auto& g : h->gen_matrices()) {
            CHECK(mat_mul(transpose(g), mat_mul(f, g)) == f);
            CHECK(mat_mul(g, g) == identity_matrix(N));
        }
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                int m = h->matrix()(i, j);
                if (m == kInfinity)
                    continue;
                FMatrix p = mat_mul(h->gen_matrices()[static_cast<size_t>(i)], h->gen_matrices()[static_cast<size_t>(j)]);
                FMatrix acc = identity_matrix(N);
                for (int k = 1; k <= m; ++k) {
                    acc = mat_mul(acc, p);
                    CHECK((acc == identity_matrix(N)) == (k == m));
                }
            }
        if (!h->integral_affine()) {
            FMatrix twob = h->tits();
            for (auto& row : twob)
                for (auto& x : row)
                    x *= FieldElem(2);
            CHECK(f == twob);
        }
    }
}

TEST_CASE("normal forms")
{
    auto h = HatGroup::create(CoxeterSystem::create(parse_type("H3")));
    CHECK(h->normal_form({0, 0}).length() == 0);
    CHECK(h->normal_form({0, 0}) == h->identity());
    auto x = h->normal_form({0, 1, 0});
    CHECK(x.length() == 3);
    CHECK(x == h->normal_form({1, 0, 1}));
    CHECK(x.word == Word{0, 1, 0});
    auto q = h->q0();
    CHECK(q.length() == 10);
    CHECK(q.length() % 2 == 0);
    CHECK(h->project(q) == h->base()->identity());
    CHECK(h->from_matrix(q.mat).word == q.word);

    // breadth-first search of the Cayley graph: q0 first appears at distance 10
    std::set<std::string> seen;
    auto key = [](const FMatrix& m) {
        std::string s;
        for (auto& row : m)
            for (auto& e : row)
                s += e.str() + ",";
        return s;
    };
    std::vector<FMatrix> frontier{identity_matrix(4)};
    seen.insert(key(frontier[0]));
    int found = -1;
    for (int d = 1; d <= 10 && found < 0; ++d) {
        std::vector<FMatrix> next;
        for (auto& m : frontier)
            for (auto& g : h->gen_matrices()) {
                FMatrix y = mat_mul(m, g);
                if (seen.insert(key(y)).second) {
                    if (y == q.mat)
                        found = d;
                    next.push_back(std::move(y));
                }
            }
        frontier = std::move(next);
    }
    CHECK(found == 10);
}

TEST_CASE("normal forms are ShortLex minimal")
{
    for (auto t : {"A2", "H3", "I2(5)"}) {
        auto h = HatGroup::create(CoxeterSystem::create(parse_type(t)));
        int N = h->rank();
        // every word of length <= 5, grouped by matrix; the least reduced word must be the normal form
        std::map<std::string, std::pair<Word, FMatrix>> least;
        std::vector<std::pair<Word, FMatrix>> layer{{{}, identity_matrix(N)}};
        std::map<std::string, int> dist;
        auto key = [](const FMatrix& m) {
            std::string s;
            for (auto& row : m)
                for (auto& e : row)
                    s += e.str() + ",";
            return s;
        };
        dist[key(layer[0].second)] = 0;
        for (int d = 1; d <= 5; ++d) {
            std::vector<std::pair<Word, FMatrix>> next;
            for (auto& [w, m] : layer)
                for (int s = 0; s < N; ++s) {
                    Word w2 = w;
                    w2.push_back(s);
                    FMatrix m2 = mat_mul(m, h->gen_matrices()[static_cast<size_t>(s)]);
                    std::string k = key(m2);
                    auto it = dist.find(k);
                    if (it != dist.end() && it->second < d)
                        continue;
                    dist[k] = d;
                    auto l = least.find(k);
                    if (l == least.end() || w2 < l->second.first)
                        least[k] = {w2, m2};
                    next.emplace_back(std::move(w2), std::move(m2));
                }
            layer = std::move(next);
        }
        for (auto& [k, v] : least) {
            auto nf = h->normal_form(v.first);
            CHECK(nf.word == v.first);
            CHECK(nf.mat == v.second);
            CHECK(nf.length() == dist[k]);
        }
    }
}

TEST_CASE("parabolic images")
{
    auto h4 = HatGroup::create(CoxeterSystem::create(parse_type("H4")));
    CHECK(parabolic_image(*h4, {0, 1, 2, 4}).order() == 100);
    CHECK(parabolic_image(*h4, {0, 1, 3, 4}).order() == 240);
    CHECK(parabolic_image(*h4, {1, 2, 3, 4}).order() == 14400);
    auto h3 = HatGroup::create(CoxeterSystem::create(parse_type("H3")));
    CHECK(parabolic_image(*h3, {0, 2, 3}).order() == 120);
    CHECK_THROWS_AS(parabolic_image(*h3, {0, 1, 2, 3}), Error);

    for (auto t : {"H3", "H4", "I2(5)", "I2(7)", "I2(8)", "I2(10)", "I2(12)", "A3", "B3", "G2"}) {
        auto h = HatGroup::create(CoxeterSystem::create(parse_type(t)));
        for (int s = 0; s < h->rank(); ++s) {
            std::vector<int> I;
            for (int i = 0; i < h->rank(); ++i)
                if (i != s)
                    I.push_back(i);
            INFO(t << " without " << s);
            CHECK_NOTHROW(parabolic_image(*h, I));
        }
    }
}

TEST_CASE("canonical diagrams")
{
    auto a = path({3, 4, 5});
    CoxeterMatrix b(4);
    b.set(3, 2, 3);
    b.set(2, 1, 4);
    b.set(1, 0, 5);
    CHECK(canonical_diagram(a, false) == canonical_diagram(b, false));
    CHECK(!(canonical_diagram(a, true) == canonical_diagram(b, true)));
    CHECK(canonical_diagram(cycle(9), false) == canonical_diagram(cycle(9), false));
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 5;
        CoxeterMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                m.set(i, j, std::vector<int>{2, 3, 3, 4}[rng() % 4]);
        std::vector<int> p{0, 1, 2, 3, 4};
        std::shuffle(p.begin() + 1, p.end(), rng);
        CoxeterMatrix q(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                q.set(p[static_cast<size_t>(i)], p[static_cast<size_t>(j)], m(i, j));
        CHECK(canonical_diagram(m, true) == canonical_diagram(q, true));
    }
}

TEST_CASE("reflection scan over the H types")
{
    for (auto [t, nrefl] : {std::pair{"H3", 15}, std::pair{"H4", 60}}) {
        auto sys = CoxeterSystem::create(parse_type(t));
        auto scan = scan_reflection_extensions(*sys);
        int total = 0, compact = 0;
        for (auto& e : scan) {
            total += static_cast<int>(e.roots.size());
            if (e.cls == DiagramClass::COMPACT_HYPERBOLIC) {
                compact += static_cast<int>(e.roots.size());
                CHECK(sys->reflection(e.roots[0]) == distinguished_reflection(*sys));
            }
        }
        CHECK(total == nrefl);
        CHECK(compact == 1);
    }
}

TEST_CASE("trace of q0")
{
    for (int g = 1; g <= 3; ++g) {
        int m = 2 * g + 1;
        auto h = HatGroup::create(CoxeterSystem::create(parse_type("I2(" + std::to_string(m) + ")")));
        Field f = m >= 4 ? real_cyclotomic_field(m) : nullptr;
        FieldElem c = FieldElem::two_cos_pi_over(f, m) * FieldElem(Rational(1, 2));
        FieldElem cot2 = c * c / (FieldElem(1) - c * c);
        CHECK(q0_trace(*h) == FieldElem(8) * (FieldElem(1) + c) * cot2 - FieldElem(1));
    }
    for (int g = 1; g <= 3; ++g) {
        int m = 4 * g;
        auto h = HatGroup::create(CoxeterSystem::create(parse_type("I2(" + std::to_string(m) + ")")));
        FieldElem c = FieldElem::two_cos_pi_over(real_cyclotomic_field(m), m) * FieldElem(Rational(1, 2));
        FieldElem cot2 = c * c / (FieldElem(1) - c * c);
        CHECK(q0_trace(*h) == FieldElem(4) * cot2 - FieldElem(1));
    }
    CHECK_THROWS_AS(q0_trace(*HatGroup::create(CoxeterSystem::create(parse_type("H3")))), Error);
    CHECK(trace(identity_matrix(3)) == FieldElem(3));
}

TEST_CASE("reflection scan over Weyl groups")
{
    for (auto& row : testdata::hyperbolic_table()) {
        INFO(row.type);
        auto sys = CoxeterSystem::create(parse_type(row.type));
        auto scan = scan_reflection_extensions(*sys);
        std::set<std::string> found, expect;
        std::map<std::string, DiagramClass> cls;
        for (auto& e : scan) {
            if (is_hyperbolic(e.cls))
                found.insert(e.diagram.str());
            cls[e.diagram.str()] = e.cls;
        }
        for (auto& d : row.diagrams) {
            auto c = canonical_diagram(d.diagram, true);
            REQUIRE(cls.count(c.str()));
            DiagramClass k = cls[c.str()];
            if (k == DiagramClass::AFFINE) {
                // tabulated alongside the hyperbolic ones; every proper subdiagram is finite
                CHECK(d.compact);
                continue;
            }
            expect.insert(c.str());
            CHECK((k == DiagramClass::COMPACT_HYPERBOLIC) == d.compact);
        }
        CHECK(found == expect);
    }
}

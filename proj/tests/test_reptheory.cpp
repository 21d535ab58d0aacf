#include "coxtorus/error.hpp"
#include "coxtorus/homology.hpp"
#include "coxtorus/reptheory.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace cxt;

namespace {

size_t z(int i) { return static_cast<size_t>(i); }

System sys_of(const std::string& t) { return CoxeterSystem::create(parse_type(t)); }

std::vector<int> degrees_of(const CharTable& t)
{
    std::vector<int> d;
    for (size_t i = 0; i < t.chars.size(); ++i)
        d.push_back(t.degree(static_cast<int>(i)));
    std::sort(d.begin(), d.end());
    return d;
}

void check_orthonormal(const CharTable& t)
{
    long long squares = 0;
    for (size_t i = 0; i < t.chars.size(); ++i) {
        squares += static_cast<long long>(t.degree(static_cast<int>(i))) * t.degree(static_cast<int>(i));
        for (size_t j = 0; j < t.chars.size(); ++j)
            REQUIRE(inner_product(*t.sys, t.classes, t.chars[i], t.chars[j]) == FieldElem(i == j ? 1 : 0));
    }
    CHECK(squares == t.sys->order());
    CHECK(t.chars.size() == t.classes.classes.size());
}

// fixed cosets counted directly
ClassFunction fixed_cosets(const CoxeterSystem& sys, const ClassData& cd, const Subgroup& h)
{
    const GroupTable& g = sys.group();
    CosetSpace cs = coset_space(sys, h, Side::Left);
    ClassFunction f;
    for (auto& c : cd.classes) {
        long n = 0;
        for (int rep : cs.reps)
            n += cs.coset_of[z(g.mul(c.rep, rep))] == cs.coset_of[z(rep)];
        f.values.push_back(FieldElem(n));
    }
    return f;
}

std::vector<long long> mult_of(const CharTable& t, const std::vector<std::pair<std::string, long long>>& terms)
{
    std::vector<long long> m(t.chars.size(), 0);
    for (auto& [label, k] : terms) {
        int i = t.index_of(label);
        REQUIRE(i >= 0);
        m[z(i)] += k;
    }
    return m;
}

}  // namespace

TEST_CASE("dihedral character tables")
{
    CHECK(degrees_of(dihedral_char_table(3)) == std::vector<int>{1, 1, 2});
    CHECK(degrees_of(dihedral_char_table(5)) == std::vector<int>{1, 1, 2, 2});
    CHECK(degrees_of(dihedral_char_table(6)) == std::vector<int>{1, 1, 1, 1, 2, 2});
    for (int m = 3; m <= 12; ++m) {
        INFO("m = " << m);
        CharTable t = dihedral_char_table(m);
        check_orthonormal(t);
        const GroupTable& g = t.sys->group();
        for (size_t c = 0; c < t.classes.classes.size(); ++c)
            if (g.length(t.classes.classes[c].rep) % 2)
                for (int j = 1; 2 * j < m; ++j)
                    CHECK(t["chi_" + std::to_string(j)].values[c].is_zero());
        CHECK(t["eps"] == sign_character(*t.sys, t.classes));
    }
    CHECK_THROWS_AS(dihedral_char_table(2), Error);
}

TEST_CASE("embedded H3 and H4 tables")
{
    CharTable h3 = load_char_table(sys_of("H3"));
    CHECK(degrees_of(h3) == std::vector<int>{1, 1, 3, 3, 3, 3, 4, 4, 5, 5});
    check_orthonormal(h3);
    CHECK(h3["1_r"] == trivial_character(*h3.sys, h3.classes));
    CHECK(h3["1_r'"] == sign_character(*h3.sys, h3.classes));
    CHECK(h3["3_s'"] == reflection_character(*h3.sys, h3.classes));

    CharTable h4 = load_char_table(sys_of("H4"));
    CHECK(h4.chars.size() == 34);
    check_orthonormal(h4);
    CHECK(h4["1_r'"] == sign_character(*h4.sys, h4.classes));
    CHECK(h4["4_t"] == reflection_character(*h4.sys, h4.classes));

    CHECK_THROWS_AS(load_char_table(sys_of("B3")), Error);
}

TEST_CASE("corrupted tables are rejected")
{
    System h3 = sys_of("H3");
    auto expect_corrupt = [&](const std::string& text) {
        try {
            parse_char_table(h3, text);
            FAIL("expected CORRUPT_TABLE");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::CORRUPT_TABLE);
        }
    };
    CharTable good = load_char_table(h3);
    std::string text;
    text += "classes 10\n";
    const GroupTable& g = h3->group();
    for (size_t c = 0; c < good.classes.classes.size(); ++c) {
        Word w = g.word(good.classes.classes[c].rep);
        std::string ws;
        for (int l : w)
            ws += (ws.empty() ? "" : ".") + std::to_string(l);
        text += "class " + std::to_string(c) + " " + std::to_string(good.classes.classes[c].size) + " " +
                (ws.empty() ? "e" : ws) + "\n";
    }
    auto row = [&](size_t i, int bump) {
        std::string s = good.labels[i] + "; " + std::to_string(good.degree(static_cast<int>(i))) + ";";
        for (size_t c = 0; c < good.classes.classes.size(); ++c) {
            // p + q*phi = (p + q/2) + (q/2) sqrt5
            const auto& co = good.chars[i].values[c].coeffs();
            Rational p = co.size() > 0 ? co[0] : Rational(0), q = co.size() > 1 ? co[1] : Rational(0);
            Rational a = p + q / 2, b = q / 2;
            if (c == 3)
                a += bump;
            a.canonicalize();
            b.canonicalize();
            s += " (" + a.get_str() + "," + b.get_str() + ")";
        }
        return s + "\n";
    };
    std::string rows;
    for (size_t i = 0; i < good.chars.size(); ++i)
        rows += row(i, 0);
    CHECK(parse_char_table(h3, text + rows).labels == good.labels);

    std::string bumped;
    for (size_t i = 0; i < good.chars.size(); ++i)
        bumped += row(i, i == 4 ? 1 : 0);
    expect_corrupt(text + bumped);
    expect_corrupt(text);
    expect_corrupt("classes 9\n");
}

TEST_CASE("permutation characters")
{
    for (std::string t : {"B3", "H3", "I2(8)", "A3"}) {
        INFO(t);
        System s = sys_of(t);
        ClassData cd = conjugacy_classes(*s);
        std::vector<Subgroup> subs;
        subs.push_back(parabolic_subgroup(*s, {}));
        subs.push_back(parabolic_subgroup(*s, {1}));
        subs.push_back(parabolic_subgroup(*s, {1, 2}));
        std::vector<int> all;
        for (int i = 1; i <= s->rank(); ++i)
            all.push_back(i);
        subs.push_back(parabolic_subgroup(*s, all));
        subs.push_back(subgroup_closure(*s, {s->reflection(s->num_positive_roots() - 1)}));
        for (auto& h : subs) {
            ClassFunction f = permutation_character(*s, cd, h);
            CHECK(f == fixed_cosets(*s, cd, h));
            CHECK(f.values[z(cd.class_of[0])] == FieldElem(static_cast<long>(s->order() / h.order())));
            CHECK(inner_product(*s, cd, f, trivial_character(*s, cd)) == FieldElem(1));
        }
        CHECK(permutation_character(*s, cd, subs[3]) == trivial_character(*s, cd));
    }
}

TEST_CASE("Frobenius reciprocity")
{
    for (std::string t : {"H3", "I2(10)"}) {
        INFO(t);
        System s = sys_of(t);
        Hat h = hat_group(s);
        CharTable tab = char_table(s);
        for (unsigned mask = 0; mask + 1 < (1u << h->rank()); ++mask) {
            std::vector<int> I;
            for (int i = 0; i < h->rank(); ++i)
                if (mask & (1u << i))
                    I.push_back(i);
            Subgroup sub = parabolic_image(*h, I);
            ClassFunction ind = permutation_character(*s, tab.classes, sub);
            for (auto& chi : tab.chars) {
                FieldElem restricted(0);
                for (int x : sub.elements)
                    restricted += chi.values[z(tab.classes.class_of[z(x)])];
                restricted *= FieldElem(Rational(1, static_cast<unsigned long>(sub.order())));
                CHECK(inner_product(*s, tab.classes, ind, chi) == restricted);
            }
        }
    }
}

TEST_CASE("dihedral permutation characters")
{
    for (int k = 1; k <= 3; ++k) {
        int m = 4 * k;
        INFO("m = " << m);
        System s = CoxeterSystem::create(TypeSpec{'I', 2, m});
        Hat h = hat_group(s);
        CharTable t = dihedral_char_table(s);
        // <t, r> with r the image of the extra generator
        std::vector<std::pair<std::string, long long>> want{{"1", 1}, {"eps_t", 1}};
        for (int j = 2; 2 * j < m; j += 2)
            want.push_back({"chi_" + std::to_string(j), 1});
        CHECK(decompose(t, permutation_character(*s, t.classes, parabolic_image(*h, {0, 2}))) == mult_of(t, want));
    }
    for (int m : {6, 8, 10}) {
        System s = CoxeterSystem::create(TypeSpec{'I', 2, m});
        CharTable t = dihedral_char_table(s);
        std::vector<std::pair<std::string, long long>> want{{"1", 1}, {"eps_s", 1}};
        for (int j = 1; 2 * j < m; ++j)
            want.push_back({"chi_" + std::to_string(j), 1});
        CHECK(decompose(t, permutation_character(*s, t.classes, parabolic_subgroup(*s, {1}))) == mult_of(t, want));
    }
}

TEST_CASE("Hopf virtual character")
{
    SECTION("H3")
    {
        System s = sys_of("H3");
        CharTable t = load_char_table(s);
        ClassFunction chi = hopf_virtual_character(*hat_group(s), t.classes);
        CHECK(decompose_virtual(t, chi) == mult_of(t, {{"1_r'", 1}, {"1_r", -1}, {"3_s", -1}, {"3bar_s", -1},
                                                       {"3_s'", 1}, {"3bar_s'", 1}, {"5_r", 1}, {"5_r'", -1}}));
        CHECK(chi.values[z(t.classes.class_of[0])] == FieldElem(0));
    }
    SECTION("H4")
    {
        System s = sys_of("H4");
        CharTable t = load_char_table(s);
        ClassFunction chi = hopf_virtual_character(*hat_group(s), t.classes);
        CHECK(chi.values[z(t.classes.class_of[0])] == FieldElem(26));
        CHECK(decompose_virtual(t, chi) ==
              mult_of(t, {{"1_r", 1}, {"1_r'", 1}, {"4_t", -1}, {"4bar_t", -1}, {"4_t'", -1}, {"4bar_t'", -1},
                          {"6_s", 1}, {"6bar_s", 1}, {"16_r", -1}, {"16_r'", -1}, {"30_s", 1}, {"30bar_s", 1}}));
    }
    SECTION("A2 has degree zero")
    {
        System s = sys_of("A2");
        ClassData cd = conjugacy_classes(*s);
        ClassFunction chi = hopf_virtual_character(*hat_group(s), cd);
        CHECK(chi.values[z(cd.class_of[0])] == FieldElem(0));
    }
}

TEST_CASE("homology representations of dihedral tori")
{
    for (int m : {5, 7, 8, 9, 10, 12}) {
        INFO("m = " << m);
        System s = CoxeterSystem::create(TypeSpec{'I', 2, m});
        Hat h = hat_group(s);
        CharTable t = dihedral_char_table(s);
        HomologyReport rep = homology(torus_complex(*h));
        HomologyDecomposition d = decompose_homology(*h, rep.betti, t);
        REQUIRE(d.solutions.size() == 1);
        std::vector<std::pair<std::string, long long>> want;
        for (int j = 1; 2 * j < m; ++j)
            if (m % 2 || (j % 2 && j <= m / 2 - 1))
                want.push_back({"chi_" + std::to_string(j), 1});
        CHECK(d.solutions[0][1] == mult_of(t, want));
        CHECK(d.solutions[0][0] == mult_of(t, {{"1", 1}}));
        CHECK(d.solutions[0][2] == mult_of(t, {{"eps", 1}}));
    }
}

TEST_CASE("homology representation of the H3 torus")
{
    System s = sys_of("H3");
    Hat h = hat_group(s);
    CharTable t = load_char_table(s);
    HomologyDecomposition d = decompose_homology(*h, {1, 11, 11, 1}, t);
    REQUIRE(d.solutions.size() == 1);
    CHECK(format_decomposition(t, d.solutions[0][1]) == format_decomposition(t, mult_of(t, {{"3_s'", 1}, {"3bar_s'", 1}, {"5_r", 1}})));
    CHECK(d.solutions[0][2] == mult_of(t, {{"3_s", 1}, {"3bar_s", 1}, {"5_r'", 1}}));
    // the geometric representation is a summand of H_1
    CHECK(decompose(t, reflection_character(*s, t.classes)) == mult_of(t, {{"3_s'", 1}}));
}

TEST_CASE("isotypic projection recovers the H3 homology")
{
    System s = sys_of("H3");
    Hat h = hat_group(s);
    ChainComplex c = torus_complex(*h);
    CharTable t = load_char_table(s);
    HomologyDecomposition d = decompose_homology(*h, {1, 11, 11, 1}, t);
    for (int k = 0; k <= 3; ++k) {
        long long total = 0;
        for (auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
                 {"1_r", ""}, {"1_r'", ""}, {"4_r", ""}, {"4_r'", ""}, {"5_r", ""}, {"5_r'", ""},
                 {"3_s", "3bar_s"}, {"3_s'", "3bar_s'"}}) {
            ClassFunction f = t[a];
            long long want = d.solutions[0][z(k)][z(t.index_of(a))];
            if (!b.empty()) {
                f = f + t[b];
                want += d.solutions[0][z(k)][z(t.index_of(b))];
            }
            int deg = t.degree(t.index_of(a));
            long long dim = isotypic_homology_dimension(c, t.classes, f, deg, k);
            INFO(a << " in degree " << k);
            CHECK(dim == deg * want);
            total += dim;
        }
        CHECK(total == std::vector<long long>{1, 11, 11, 1}[z(k)]);
    }
}

TEST_CASE("isotypic projection separates the H4 candidates")
{
    System s = sys_of("H4");
    Hat h = hat_group(s);
    CharTable t = load_char_table(s);
    std::vector<long long> c1 = decompose(t, chain_character(*h, t.classes, 1));
    CHECK(c1[z(t.index_of("4_t'"))] == 0);
    CHECK(c1[z(t.index_of("16_r"))] == 1);
    CHECK(c1[z(t.index_of("16_r'"))] == 21);
    HomologyDecomposition d = decompose_homology(*h, {1, 24, 72, 24, 1}, t);
    // the chain bounds leave both members of the 16_r pair in H_1
    REQUIRE(d.solutions.size() == 2);
    resolve_by_projection(d, torus_complex(*h), t);
    CHECK(d.projected);
    REQUIRE(d.solutions.size() == 1);
    CHECK(d.solutions[0][1] == mult_of(t, {{"4_t", 1}, {"4bar_t", 1}, {"16_r'", 1}}));
    CHECK(d.solutions[0][2] == mult_of(t, {{"6_s", 1}, {"6bar_s", 1}, {"30_s", 1}, {"30bar_s", 1}}));
    CHECK(d.solutions[0][3] == mult_of(t, {{"4_t'", 1}, {"4bar_t'", 1}, {"16_r", 1}}));
}

#include "coxtorus/complex.hpp"
#include "coxtorus/error.hpp"

#include <catch_amalgamated.hpp>

#include <functional>

using namespace cxt;

namespace {

std::vector<int> from_cycles(int points, const std::vector<std::vector<int>>& cycles)
{
    std::vector<int> p(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i)
        p[static_cast<size_t>(i)] = i;
    for (auto& c : cycles)
        for (size_t k = 0; k < c.size(); ++k)
            p[static_cast<size_t>(c[k])] = c[(k + 1) % c.size()];
    return p;
}

Flag flag(const std::vector<std::vector<int>>& sets)
{
    Flag f;
    for (auto& s : sets) {
        unsigned m = 0;
        for (int i : s)
            m |= 1u << i;
        f.sets.push_back(m);
    }
    return f;
}

}  // namespace

TEST_CASE("fundamental group orders")
{
    std::vector<std::string> types{"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B2", "B3", "B4", "B5", "B6",
                                   "C3", "C4", "C5", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8", "F4", "G2"};
    for (auto& t : types) {
        INFO(t);
        OmegaAction om = omega_action(parse_type(t));
        CHECK(static_cast<int>(om.group.size()) == expected_omega_order(om.type));
        CHECK(om.minuscule.size() + 1 == om.group.size());
    }
    CHECK(omega_action(parse_type("A2")).structure() == "Z/3");
    CHECK(omega_action(parse_type("D5")).structure() == "Z/4");
    CHECK(omega_action(parse_type("D6")).structure() == "Z/2 x Z/2");
    CHECK(omega_action(parse_type("E8")).structure() == "1");
    CHECK_THROWS_AS(omega_action(parse_type("H3")), Error);
}

TEST_CASE("omega permutations match the tabulated ones")
{
    SECTION("A_n")
    {
        for (int n = 1; n <= 6; ++n) {
            OmegaAction om = omega_action({'A', n, 0});
            std::vector<int> cyc;
            for (int i = 0; i <= n; ++i)
                cyc.push_back(i);
            std::vector<int> w1 = from_cycles(n + 1, {cyc});
            CHECK(om.perms.at(1) == w1);
            std::vector<int> power = w1;
            for (int i = 2; i <= n; ++i) {
                std::vector<int> next;
                for (int x : power)
                    next.push_back(w1[static_cast<size_t>(x)]);
                power = next;
                CHECK(om.perms.at(i) == power);
            }
        }
        OmegaAction a2 = omega_action(parse_type("A2"));
        CHECK(cycle_str(a2.perms.at(1)) == "(0,1,2)");
        CHECK(a2.finite_parts.at(1).word == Word{1, 2});
        CHECK(a2.finite_parts.at(2).word == Word{2, 1});
    }
    SECTION("B_n and C_n")
    {
        for (int n = 3; n <= 6; ++n)
            CHECK(omega_action({'B', n, 0}).perms.at(1) == from_cycles(n + 1, {{0, 1}}));
        for (int n = 2; n <= 6; ++n) {
            std::vector<std::vector<int>> cyc{{0, n}};
            for (int i = 1; i <= (n - 1) / 2; ++i)
                cyc.push_back({i, n - i});
            CHECK(omega_action({'C', n, 0}).perms.at(n) == from_cycles(n + 1, cyc));
        }
    }
    SECTION("D_n")
    {
        for (int k = 2; k <= 4; ++k) {
            int n = 2 * k;
            OmegaAction om = omega_action({'D', n, 0});
            CHECK(om.perms.at(1) == from_cycles(n + 1, {{0, 1}, {n - 1, n}}));
            std::vector<std::vector<int>> c1{{0, n - 1}, {1, n}}, c2{{0, n}, {1, n - 1}};
            for (int i = 2; i <= k - 1; ++i) {
                c1.push_back({i, n - i});
                c2.push_back({i, n - i});
            }
            CHECK(om.perms.at(n - 1) == from_cycles(n + 1, c1));
            CHECK(om.perms.at(n) == from_cycles(n + 1, c2));
        }
        for (int k = 2; k <= 3; ++k) {
            int n = 2 * k + 1;
            OmegaAction om = omega_action({'D', n, 0});
            CHECK(om.perms.at(1) == from_cycles(n + 1, {{0, 1}, {n - 1, n}}));
            std::vector<std::vector<int>> c1{{0, n - 1, 1, n}}, c2{{0, n, 1, n - 1}};
            for (int i = 2; i <= k; ++i) {
                c1.push_back({i, n - i});
                c2.push_back({i, n - i});
            }
            CHECK(om.perms.at(n - 1) == from_cycles(n + 1, c1));
            CHECK(om.perms.at(n) == from_cycles(n + 1, c2));
        }
    }
    SECTION("E_6 and E_7")
    {
        OmegaAction e6 = omega_action(parse_type("E6"));
        CHECK(e6.perms.at(1) == from_cycles(7, {{0, 1, 6}, {2, 3, 5}}));
        CHECK(e6.perms.at(6) == from_cycles(7, {{1, 0, 6}, {3, 2, 5}}));
        OmegaAction e7 = omega_action(parse_type("E7"));
        CHECK(cycle_str(e7.perms.at(7)) == "(0,7)(1,6)(3,5)");
        CHECK(e7.structure() == "Z/2");
    }
}

TEST_CASE("omega normalises the affine generators")
{
    for (std::string t : {"A3", "B3", "C3", "D4", "D5", "E6"}) {
        INFO(t);
        OmegaAction om = omega_action(parse_type(t));
        const CoxeterSystem& sys = *om.sys;
        Hat h = hat_group(om.sys);
        auto refl = [&](int j) { return j == 0 ? h->r() : sys.generator(j); };
        for (auto& w : om.group)
            for (int j = 0; j <= sys.rank(); ++j) {
                Element lhs = sys.multiply(sys.multiply(w.image, refl(j)), sys.inverse(w.image));
                CHECK(lhs == refl(w.perm[static_cast<size_t>(j)]));
            }
    }
}

TEST_CASE("alcove vertices")
{
    OmegaAction g2 = omega_action(parse_type("G2"));
    CHECK(g2.highest_coeffs == std::vector<int>{3, 2});
    CHECK(g2.vertices[1] == std::vector<Rational>{Rational(1, 3), Rational(0)});
    CHECK(g2.vertices[2] == std::vector<Rational>{Rational(0), Rational(1, 2)});
    CHECK(g2.minuscule.empty());
}

TEST_CASE("subset order")
{
    CHECK(subset_less(0b1, 0b11));
    CHECK(subset_less(0b11, 0b101));
    CHECK(subset_less(0b101, 0b111));
    CHECK(!subset_less(0b110, 0b101));
    CHECK(flag_less(flag({{0}, {0, 2}}), flag({{0}, {0, 1, 2}})));
    CHECK(flag_str(flag({{0}, {0, 2}})) == "({0},{0,2})");
}

TEST_CASE("A2 barycentric complex with the full fundamental group")
{
    OmegaAction om = omega_action(parse_type("A2"));
    BarycentricData bd = barycentric_data(om, {1});
    REQUIRE(bd.reps[0].size() == 3);
    REQUIRE(bd.reps[1].size() == 4);
    REQUIRE(bd.reps[2].size() == 2);
    CHECK(flag_str(bd.reps[0][0]) == "({0})");
    CHECK(flag_str(bd.reps[0][1]) == "({0,1})");
    CHECK(flag_str(bd.reps[0][2]) == "({0,1,2})");
    CHECK(flag_str(bd.reps[1][0]) == "({0},{0,1})");
    CHECK(flag_str(bd.reps[1][1]) == "({0},{0,2})");
    CHECK(flag_str(bd.reps[1][2]) == "({0},{0,1,2})");
    CHECK(flag_str(bd.reps[1][3]) == "({0,1},{0,1,2})");
    CHECK(flag_str(bd.reps[2][0]) == "({0},{0,1},{0,1,2})");
    CHECK(flag_str(bd.reps[2][1]) == "({0},{0,2},{0,1,2})");

    ChainComplex c = deflate(bd.complex);
    const GroupTable& g = c.group->group();
    int sbsa = g.index_of(c.group->element_from_word({2, 1}).perm);
    using E = GroupRingElem;
    std::vector<std::vector<E>> d2{{E{{0, 1}}, E{}, E{{0, -1}}, E{{0, 1}}}, {E{}, E{{0, 1}}, E{{0, -1}}, E{{sbsa, 1}}}};
    std::vector<std::vector<E>> d1{{E{{0, -1}}, E{{0, 1}}, E{}},
                                   {E{{0, -1}}, E{{sbsa, 1}}, E{}},
                                   {E{{0, -1}}, E{}, E{{0, 1}}},
                                   {E{}, E{{0, -1}}, E{{0, 1}}}};
    CHECK(group_ring_boundary(c, 2) == d2);
    CHECK(group_ring_boundary(c, 1) == d1);

    // terms Z + Z[W/<s_b>] + Z[W/<s_a s_b>]
    CHECK(c.cells[0][0].cosets.size() == 1);
    CHECK(c.cells[0][1].cosets.subgroup.elements == parabolic_subgroup(*c.group, {2}).elements);
    CHECK(c.cells[0][2].cosets.subgroup.order() == 3);
    CHECK(c.cells[0][2].cosets.subgroup.contains(g.index_of(c.group->element_from_word({1, 2}).perm)));
    CHECK(c.f_vector() == std::vector<long long>{6, 18, 12});
    CHECK(boundary_squared_zero(c));
    CHECK(is_equivariant(c));
}

TEST_CASE("barycentric complexes for every lattice")
{
    for (std::string t : {"A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4"}) {
        OmegaAction om = omega_action(parse_type(t));
        std::vector<std::vector<int>> choices{{}};
        for (int i : om.minuscule)
            choices.push_back({i});
        if (om.minuscule.size() > 1)
            choices.push_back(om.minuscule);
        for (auto& hs : choices) {
            INFO(t << " with " << hs.size() << " generators");
            BarycentricData bd = barycentric_data(om, hs);
            ChainComplex c = deflate(bd.complex);  // checks the stabilizer law
            CHECK(boundary_squared_zero(c));
            CHECK(is_equivariant(c));
            long long chi = 0;
            for (int k = 0; k <= c.dim; ++k)
                chi += (k % 2 ? -1 : 1) * c.rank(k);
            CHECK(chi == 0);
            // the orbit count times the lattice index recovers all flags of the simplex
            long long omega_y = static_cast<long long>(omega_subgroup(om, hs).size());
            for (int d = 0; d <= c.dim; ++d) {
                long long flags = 0;
                for (auto s : bd.omega_stab[static_cast<size_t>(d)])
                    flags += omega_y / s;
                long long all = 0;
                // ordered chains of d+1 nonempty nested subsets of an (n+1)-set
                int pts = c.dim + 1;
                std::function<long long(int, int)> count = [&](int avail, int left) -> long long {
                    if (left == 0)
                        return 1;
                    long long tot = 0;
                    // next set strictly larger: choose how many new points (>=1)
                    long long binom = 1;
                    for (int add = 1; add <= avail; ++add) {
                        binom = binom * (avail - add + 1) / add;
                        tot += binom * count(avail - add, left - 1);
                    }
                    return tot;
                };
                all = count(pts, d + 1);
                CHECK(flags == all);
            }
        }
    }
}

#include "coxtorus/complex.hpp"
#include "coxtorus/error.hpp"

#include <catch_amalgamated.hpp>

using namespace cxt;

namespace {

ChainComplex torus(const std::string& type) { return torus_complex(*hat_group(CoxeterSystem::create(parse_type(type)))); }

int cell_index(const ChainComplex& c, int k, const std::vector<int>& label)
{
    for (size_t b = 0; b < c.cells[static_cast<size_t>(k)].size(); ++b)
        if (c.cells[static_cast<size_t>(k)][b].label == label)
            return static_cast<int>(b);
    return -1;
}

long long euler(const ChainComplex& c)
{
    long long chi = 0;
    for (int k = 0; k <= c.dim; ++k)
        chi += (k % 2 ? -1 : 1) * c.rank(k);
    return chi;
}

}  // namespace

TEST_CASE("A2 simply connected torus reproduces the worked example")
{
    ChainComplex c = torus("A2");
    CHECK(c.f_vector() == std::vector<long long>{3, 9, 6});
    const GroupTable& g = c.group->group();

    // the example lists the edge terms as <s_b>, <s_a s_b s_a>, <s_a>, i.e. I = {2}, {0}, {1}
    std::vector<std::vector<int>> edges{{2}, {0}, {1}};
    std::vector<std::vector<int>> vertices{{1, 2}, {0, 2}, {0, 1}};
    std::vector<int> d2{1, 1, -1};
    std::vector<std::vector<int>> d1{{-1, 1, 0}, {0, -1, 1}, {-1, 0, 1}};

    auto m2 = group_ring_boundary(c, 2);
    REQUIRE(m2.size() == 1);
    for (size_t j = 0; j < 3; ++j) {
        GroupRingElem want{{0, d2[j]}};
        CHECK(m2[0][static_cast<size_t>(cell_index(c, 1, edges[j]))] == want);
    }
    auto m1 = group_ring_boundary(c, 1);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            GroupRingElem want;
            if (d1[i][j])
                want[0] = d1[i][j];
            CHECK(m1[static_cast<size_t>(cell_index(c, 1, edges[i]))][static_cast<size_t>(cell_index(c, 0, vertices[j]))] ==
                  want);
        }
    // the edge stabilizers are the listed subgroups
    auto stab_word = [&](const std::vector<int>& I) {
        const auto& cs = c.cells[1][static_cast<size_t>(cell_index(c, 1, I))].cosets.subgroup;
        REQUIRE(cs.order() == 2);
        return g.word(cs.elements[1]);
    };
    CHECK(stab_word({2}) == Word{2});
    CHECK(stab_word({1}) == Word{1});
    CHECK(stab_word({0}) == Word{1, 2, 1});
}

TEST_CASE("boundaries square to zero and commute with W")
{
    std::vector<std::pair<std::string, long long>> cases{{"A1", 0},    {"A2", 0},     {"A3", 0},     {"B2", 0},
                                                         {"B3", 0},    {"C3", 0},     {"D4", 0},     {"G2", 0},
                                                         {"F4", 0},    {"I2(5)", -2}, {"I2(7)", -4}, {"I2(8)", -2},
                                                         {"I2(12)", -4}, {"H3", 0}};
    for (auto& [t, chi] : cases) {
        INFO(t);
        ChainComplex c = torus(t);
        CHECK(boundary_squared_zero(c));
        CHECK(is_equivariant(c));
        CHECK(euler(c) == chi);
        for (int k = 1; k <= c.dim; ++k)
            for (auto& cell : c.cells[static_cast<size_t>(k)]) {
                REQUIRE(cell.faces.size() == static_cast<size_t>(k + 1));
                for (size_t p = 0; p < cell.faces.size(); ++p)
                    CHECK(cell.faces[p].sign == (p % 2 ? -1 : 1));
            }
        for (int k = 1; k <= c.dim; ++k) {
            const auto& d = c.boundary[static_cast<size_t>(k)];
            for (int j = 0; j < d.cols(); ++j) {
                Integer total = 0;
                for (auto& e : d.column(j))
                    total += abs(e.second);
                CHECK(total <= k + 1);
            }
        }
    }
}

TEST_CASE("H3 and H4 f-vectors")
{
    ChainComplex h3 = torus("H3");
    CHECK(h3.f_vector() == std::vector<long long>{4, 124, 240, 120});
    CHECK(boundary_squared_zero(h3));

    ChainComplex h4 = torus("H4");
    CHECK(h4.f_vector() == std::vector<long long>{266, 7920, 29280, 36000, 14400});
    CHECK(euler(h4) == 26);
    CHECK(boundary_squared_zero(h4));
    CHECK(is_equivariant(h4));
}

TEST_CASE("deflated term sizes are the indices of the parabolic images")
{
    for (std::string t : {"A3", "B3", "G2", "H3", "I2(9)"}) {
        INFO(t);
        Hat h = hat_group(CoxeterSystem::create(parse_type(t)));
        ChainComplex c = torus_complex(*h);
        long long order = h->base()->order();
        for (int k = 0; k <= c.dim; ++k)
            for (auto& cell : c.cells[static_cast<size_t>(k)]) {
                long long img = parabolic_image(*h, cell.label).order();
                CHECK(cell.cosets.size() * img == order);
                CHECK(static_cast<int>(cell.label.size()) == c.dim - k);
            }
    }
}

TEST_CASE("deflation without a quotient is the identity")
{
    // Coxeter complex of A2 is a hexagon, of B3 the barycentric octahedron
    System a2 = CoxeterSystem::create(parse_type("A2"));
    ChainComplex hex = deflate(coxeter_complex(a2));
    CHECK(hex.f_vector() == std::vector<long long>{6, 6});
    CHECK(boundary_squared_zero(hex));
    ChainComplex b3 = deflate(coxeter_complex(CoxeterSystem::create(parse_type("B3"))));
    CHECK(b3.f_vector() == std::vector<long long>{26, 72, 48});
    CHECK(is_equivariant(b3));
    // every cell has the trivial twist and a free orbit at the top
    for (auto& cell : b3.cells[2])
        CHECK(cell.cosets.size() == 48);
    // basis labels name the cell and the coset representative
    CHECK(hex.basis_label(0, 0) == "{1}:e");
}

TEST_CASE("deflate rejects inconsistent orbit data")
{
    System a2 = CoxeterSystem::create(parse_type("A2"));
    EquivariantComplex e = coxeter_complex(a2);
    e.cells[0][0].stabilizer_order = 3;
    try {
        deflate(e);
        FAIL("expected an error");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::INCONSISTENT);
    }
    // the edge {1} of the B3 complex is fixed by s1, which s2 does not carry into <s1,s3>
    System b3 = CoxeterSystem::create(parse_type("B3"));
    EquivariantComplex f = coxeter_complex(b3);
    REQUIRE(f.cells[1][0].label == std::vector<int>{1});
    REQUIRE(f.cells[0][static_cast<size_t>(f.cells[1][0].faces[1].cell)].label == std::vector<int>{1, 3});
    f.cells[1][0].faces[1].g = b3->generator(2);
    try {
        deflate(f);
        FAIL("expected an error");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::INCONSISTENT);
    }
}

TEST_CASE("act_on_basis is a permutation action")
{
    ChainComplex c = torus("B2");
    const GroupTable& g = c.group->group();
    for (int k = 0; k <= c.dim; ++k)
        for (int a = 0; a < g.size(); ++a)
            for (int b = 0; b < g.size(); b += 3) {
                auto pa = act_on_basis(c, k, a), pb = act_on_basis(c, k, b), pab = act_on_basis(c, k, g.mul(a, b));
                for (size_t i = 0; i < pab.size(); ++i)
                    REQUIRE(pab[i] == pa[static_cast<size_t>(pb[i])]);
            }
}

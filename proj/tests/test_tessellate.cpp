#include "coxtorus/error.hpp"
#include "coxtorus/tessellate.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>

using namespace cxt;

namespace {

Hat dihedral(int m) { return hat_group(CoxeterSystem::create(TypeSpec{'I', 2, m})); }

std::string key(const FMatrix& m)
{
    std::string k;
    for (auto& row : m)
        for (auto& x : row)
            k += x.str() + ";";
    return k;
}

double dist(const std::array<double, 2>& a, const std::array<double, 2>& b)
{
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

}  // namespace

TEST_CASE("chambers of the dihedral extensions")
{
    for (int m : {5, 7, 8, 10}) {
        INFO("m = " << m);
        Hat h = dihedral(m);
        const int depth = m;  // reaches every chamber around the vertices of the fundamental one
        auto tris = disk_tessellation(*h, depth);

        // elements of length <= depth, by breadth-first search on the matrices
        std::set<Word> words;
        std::vector<HatElement> layer{h->identity()};
        std::set<std::string> seen{key(h->identity().mat)};
        size_t total = 1;
        for (int len = 1; len <= depth; ++len) {
            std::vector<HatElement> next;
            for (auto& x : layer)
                for (int s = 0; s < 3; ++s) {
                    HatElement y = h->multiply(x, h->generator(s));
                    if (seen.insert(key(y.mat)).second)
                        next.push_back(y);
                }
            total += next.size();
            layer = std::move(next);
        }
        CHECK(tris.size() == total);

        for (auto& t : tris) {
            CHECK(static_cast<int>(t.word.size()) <= depth);
            for (auto& v : t.vertices)
                CHECK(std::hypot(v[0], v[1]) < 1.0);
            words.insert(t.word);
        }
        CHECK(words.size() == tris.size());
        // depth-first: each chamber's parent precedes it
        for (size_t i = 1; i < tris.size(); ++i) {
            Word parent(tris[i].word.begin(), tris[i].word.end() - 1);
            bool found = false;
            for (size_t k = 0; k < i && !found; ++k)
                found = tris[k].word == parent;
            CHECK(found);
        }

        // 2 m_ij chambers around the vertex fixed by s_i, s_j
        const CoxeterMatrix& cm = h->matrix();
        for (int v = 0; v < 3; ++v) {
            int i = (v + 1) % 3, j = (v + 2) % 3;
            int around = 0;
            for (auto& t : tris)
                for (auto& p : t.vertices)
                    around += dist(p, tris[0].vertices[static_cast<size_t>(v)]) < 1e-9;
            CHECK(around == 2 * cm(i, j));
        }
    }
}

TEST_CASE("Q-orbit flags")
{
    Hat h = dihedral(5);
    auto tris = disk_tessellation(*h, 8);
    CHECK(tris[0].in_q);
    std::set<Word> q;
    for (auto& t : tris)
        if (t.in_q)
            q.insert(t.word);
    // q0 = s0 r
    Word q0 = h->q0().word;
    CHECK(q.count(q0) == 1);
    // Q meets no parabolic subgroup, so chambers of the orbit never share an edge
    for (auto& t : tris)
        if (t.in_q)
            for (int s = 0; s < 3; ++s) {
                Word w = t.word;
                w.push_back(s);
                CHECK(q.count(h->normal_form(w).word) == 0);
            }
    // in_q is the kernel of s_0 -> r, s_i -> s_i
    const System& sys = h->base();
    for (auto& t : tris) {
        Element w = sys->identity();
        for (int s : t.word)
            w = sys->multiply(w, s == 0 ? h->r() : sys->generator(s));
        CHECK(t.in_q == (w == sys->identity()));
    }
}

TEST_CASE("SVG output")
{
    Hat h = dihedral(5);
    SvgOptions opt;
    std::string a = tessellation_svg(*h, opt), b = tessellation_svg(*h, opt);
    CHECK(a == b);
    CHECK(a.rfind("<svg", 0) == 0);
    const std::string filled = "<polygon fill=\"#3aa655\"";
    size_t polygons = 0, green = 0;
    for (size_t p = a.find("<polygon"); p != std::string::npos; p = a.find("<polygon", p + 1)) {
        ++polygons;
        green += a.compare(p, filled.size(), filled) == 0;
    }
    auto tris = disk_tessellation(*h, opt.depth);
    size_t q = 0;
    for (auto& t : tris)
        q += t.in_q;
    CHECK(polygons == tris.size());
    CHECK(green == q);

    opt.skeleton = true;
    std::string s = tessellation_svg(*h, opt);
    CHECK(s.find("<polygon") == std::string::npos);
    CHECK(s.find("<polyline") != std::string::npos);

    CHECK_THROWS_AS(tessellation_svg(*dihedral(4), {}), Error);
    CHECK_THROWS_AS(tessellation_svg(*hat_group(CoxeterSystem::create(parse_type("H3"))), {}), Error);
    opt.depth = -1;
    CHECK_THROWS_AS(tessellation_svg(*h, opt), Error);
}

#include "catch_amalgamated.hpp"

#include "coxtorus/error.hpp"
#include "coxtorus/exactnum.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace cxt;

namespace {

int totient(int n)
{
    int r = 0;
    for (int k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1)
            ++r;
    return r;
}

// monic integer quadratic x^2 + b x + c vanishing at 2cos(pi/m), found by search
std::pair<int, int> quadratic_oracle(int m)
{
    double g = 2 * std::cos(M_PI / m);
    std::vector<std::pair<int, int>> hits;
    for (int b = -6; b <= 6; ++b)
        for (int c = -6; c <= 6; ++c)
            if (std::fabs(g * g + b * g + c) < 1e-12)
                hits.emplace_back(b, c);
    REQUIRE(hits.size() == 1);
    return hits[0];
}

FieldElem random_elem(const Field& f, std::mt19937& rng)
{
    std::uniform_int_distribution<int> d(-9, 9);
    std::vector<Rational> c;
    for (int k = 0; k < f->degree(); ++k)
        c.emplace_back(d(rng), 1 + std::abs(d(rng)));
    return FieldElem(f, c);
}

}  // namespace

TEST_CASE("minimal polynomials match the quadratic search")
{
    for (int m : {4, 5, 6}) {
        auto f = real_cyclotomic_field(m);
        auto [b, c] = quadratic_oracle(m);
        REQUIRE(f->degree() == 2);
        CHECK(f->minpoly()[0] == c);
        CHECK(f->minpoly()[1] == b);
        CHECK(f->minpoly()[2] == 1);
    }
    auto f3 = real_cyclotomic_field(3);
    CHECK(f3->degree() == 1);
    CHECK(FieldElem::generator(f3) == FieldElem(1));
    CHECK(FieldElem::generator(real_cyclotomic_field(2)).is_zero());
}

TEST_CASE("field degree is half the totient of 2m")
{
    for (int m = 2; m <= 30; ++m) {
        auto f = real_cyclotomic_field(m);
        CHECK(f->degree() == std::max(1, totient(2 * m) / 2));
        CHECK(f->minpoly().back() == 1);
    }
}

TEST_CASE("anchor isolates exactly one root")
{
    for (int m = 4; m <= 30; ++m) {
        auto f = real_cyclotomic_field(m);
        auto a = f->embedding_anchor();
        int inside = 0;
        for (int k = 1; k < m; k += 2) {
            if (std::gcd(k, 2 * m) != 1)
                continue;
            double r = 2 * std::cos(k * M_PI / m);
            if (r > a.lo.get_d() && r < a.hi.get_d())
                ++inside;
        }
        CHECK(inside == 1);
        CHECK(FieldElem(f, f->minpoly()).is_zero());
    }
}

TEST_CASE("rejects m below two")
{
    CHECK_THROWS_AS(real_cyclotomic_field(1), Error);
}

TEST_CASE("sign determination")
{
    auto f = real_cyclotomic_field(5);
    FieldElem g = FieldElem::generator(f);
    CHECK(sign_of(FieldElem()) == 0);
    CHECK(sign_of(g - FieldElem(1)) == 1);
    CHECK(sign_of(g - FieldElem(2)) == -1);
    // golden ratio squared minus golden ratio minus one
    CHECK(sign_of(g * g - g - FieldElem(1)) == 0);
    // tiny but nonzero: (g - 1.618034)
    FieldElem close = g - FieldElem(Rational(1618034, 1000000));
    CHECK(sign_of(close) == -1);
    FieldElem closer = g - FieldElem(Rational("16180339887498949/10000000000000000"));
    CHECK(sign_of(closer) == -1);
    FieldElem closest = g - FieldElem(Rational("16180339887498948/10000000000000000"));
    CHECK(sign_of(closest) == 1);
}

TEST_CASE("decimal approximations")
{
    CHECK(approximate(FieldElem::generator(real_cyclotomic_field(5)), 3) == "1.618");
    CHECK(approximate(FieldElem(), 3) == "0.000");
    CHECK(approximate(FieldElem::generator(real_cyclotomic_field(7)), 4) == "1.8019");
    CHECK(approximate(FieldElem(Rational(-1, 8)), 2) == "-0.13");
}

TEST_CASE("ring axioms and sign symmetry on random elements")
{
    std::mt19937 rng(7);
    for (int m : {5, 7, 8, 12}) {
        auto f = real_cyclotomic_field(m);
        for (int it = 0; it < 40; ++it) {
            FieldElem a = random_elem(f, rng), b = random_elem(f, rng), c = random_elem(f, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK((a + b) - b == a);
            CHECK(sign_of(a) == -sign_of(-a));
            CHECK(sign_of(a * a) >= 0);
            if (!a.is_zero()) {
                CHECK(a * a.inverse() == FieldElem(1));
                CHECK(sign_of(a) == (a.to_double() > 0 ? 1 : -1));
            }
        }
    }
}

TEST_CASE("approximations are consistent with sign and each other")
{
    std::mt19937 rng(11);
    auto f = real_cyclotomic_field(9);
    for (int it = 0; it < 20; ++it) {
        FieldElem a = random_elem(f, rng);
        double prev = std::stod(a.approximate(2));
        for (int d = 3; d <= 12; ++d) {
            double cur = std::stod(a.approximate(d));
            CHECK(std::fabs(cur - prev) <= 0.6 * std::pow(10.0, -(d - 1)) + 1e-15);
            prev = cur;
        }
        if (a.sign() > 0)
            CHECK(prev >= -1e-12);
        if (a.sign() < 0)
            CHECK(prev <= 1e-12);
    }
}

TEST_CASE("cosines of divisors live in the field")
{
    auto f = real_cyclotomic_field(12);
    for (int d : {4, 6, 12}) {
        FieldElem c = FieldElem::two_cos_pi_over(f, d);
        CHECK(std::fabs(c.to_double() - 2 * std::cos(M_PI / d)) < 1e-12);
    }
    CHECK(FieldElem::two_cos_pi_over(f, 3) == FieldElem(1));
    CHECK_THROWS_AS(FieldElem::two_cos_pi_over(f, 5), Error);
}

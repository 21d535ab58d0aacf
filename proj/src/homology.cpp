#include "coxtorus/homology.hpp"

#include "coxtorus/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace cxt {

using detail::run_parallel;
using detail::thread_count;

namespace {

size_t z(int i) { return static_cast<size_t>(i); }

// diagonal of an equivalent matrix, then normalised to a divisibility chain
std::vector<Integer> diagonalize(DenseInt& a)
{
    size_t m = a.size(), n = m ? a[0].size() : 0;
    std::vector<Integer> diag;
    for (size_t t = 0; t < std::min(m, n); ++t) {
        auto smallest = [&](size_t& pi, size_t& pj) {
            bool found = false;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 && (!found || abs(a[i][j]) < abs(a[pi][pj]))) {
                        pi = i;
                        pj = j;
                        found = true;
                    }
            return found;
        };
        size_t pi = t, pj = t;
        if (!smallest(pi, pj))
            break;
        for (;;) {
            std::swap(a[t], a[pi]);
            for (size_t i = 0; i < m; ++i)
                std::swap(a[i][t], a[i][pj]);
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i)
                if (a[i][t] != 0) {
                    Integer q;
                    mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                    for (size_t j = t; j < n; ++j)
                        a[i][j] -= q * a[t][j];
                    clean = clean && a[i][t] == 0;
                }
            for (size_t j = t + 1; j < n; ++j)
                if (a[t][j] != 0) {
                    Integer q;
                    mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                    for (size_t i = t; i < m; ++i)
                        a[i][j] -= q * a[i][t];
                    clean = clean && a[t][j] == 0;
                }
            if (clean)
                break;
            // a smaller remainder now sits in row or column t
            pi = t;
            pj = t;
            for (size_t i = t + 1; i < m; ++i)
                if (a[i][t] != 0 && abs(a[i][t]) < abs(a[pi][pj])) {
                    pi = i;
                    pj = t;
                }
            for (size_t j = t + 1; j < n; ++j)
                if (a[t][j] != 0 && abs(a[t][j]) < abs(a[pi][pj])) {
                    pi = t;
                    pj = j;
                }
        }
        diag.push_back(abs(a[t][t]));
    }
    // (a, b) -> (gcd, lcm) until every entry divides the next
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) {
            Integer g = gcd(diag[i], diag[j]);
            Integer l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    return diag;
}

IntPoly trim(IntPoly p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
    return p;
}

IntPoly pmul(const IntPoly& a, const IntPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    IntPoly c(a.size() + b.size() - 1, Integer(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return trim(c);
}

IntPoly padd(IntPoly a, const IntPoly& b, int sign)
{
    if (a.size() < b.size())
        a.resize(b.size(), Integer(0));
    for (size_t i = 0; i < b.size(); ++i)
        a[i] += sign * b[i];
    return trim(a);
}

// exact division by a monic polynomial
IntPoly pdiv(IntPoly a, const IntPoly& b)
{
    a = trim(a);
    if (a.size() < b.size())
        return {};
    IntPoly q(a.size() - b.size() + 1, Integer(0));
    for (size_t k = q.size(); k-- > 0;) {
        q[k] = a[k + b.size() - 1];
        for (size_t j = 0; j < b.size(); ++j)
            a[k + j] -= q[k] * b[j];
    }
    if (!trim(a).empty())
        throw Error(ErrorCode::INCONSISTENT, "inexact polynomial division");
    return trim(q);
}

Integer peval(const IntPoly& p, const Integer& x)
{
    Integer v = 0;
    for (size_t k = p.size(); k-- > 0;)
        v = v * x + p[k];
    return v;
}

const IntPoly& cyclotomic(int e)
{
    static std::map<int, IntPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    for (int d = 1; d <= e; ++d) {
        if (e % d != 0 || cache.count(d))
            continue;
        // q^d - 1 over the smaller cyclotomic factors
        IntPoly p(z(d + 1), Integer(0));
        p[0] = -1;
        p[z(d)] = 1;
        for (int c = 1; c < d; ++c)
            if (d % c == 0)
                p = pdiv(p, cache.at(c));
        cache.emplace(d, p);
    }
    return cache.at(e);
}

// cyclotomic exponents of prod [d_i]_q
std::map<int, int> cyclotomic_exponents(const CoxeterMatrix& m)
{
    std::map<int, int> ex;
    if (m.size() == 0)
        return ex;
    for (auto& [t, verts] : finite_components(m))
        for (int d : degrees(t))
            for (int e = 2; e <= d; ++e)
                if (d % e == 0)
                    ++ex[e];
    return ex;
}

IntPoly from_exponents(const std::map<int, int>& ex)
{
    IntPoly p{Integer(1)};
    for (auto& [e, k] : ex)
        for (int i = 0; i < k; ++i)
            p = pmul(p, cyclotomic(e));
    return p;
}

IntPoly reversed(IntPoly p, size_t degree)
{
    p.resize(degree + 1, Integer(0));
    std::reverse(p.begin(), p.end());
    return trim(p);
}

// hat W(q) = P(q) / Q(q)
std::pair<IntPoly, IntPoly> hat_series_fraction(const HatGroup& h)
{
    RationalFunction r = hat_growth_series(h);
    size_t dn = r.num.empty() ? 0 : r.num.size() - 1, dd = r.den.size() - 1;
    size_t deg = std::max(dn, dd);
    IntPoly p = reversed(r.den, deg), q = reversed(r.num, deg);
    while (!p.empty() && !q.empty() && p[0] == 0 && q[0] == 0) {
        p.erase(p.begin());
        q.erase(q.begin());
    }
    return {p, q};
}

}  // namespace

std::string to_string(Certification c)
{
    switch (c) {
    case Certification::FULL_SNF: return "FULL_SNF";
    case Certification::MODULAR_ONLY: return "MODULAR_ONLY";
    case Certification::RATIONAL_ONLY: return "RATIONAL_ONLY";
    }
    return "UNKNOWN";
}

std::vector<Integer> smith_normal_form_dense(DenseInt a) { return diagonalize(a); }

std::vector<Integer> smith_normal_form(const SparseIntMatrix& m)
{
    UnitReduction u = unit_pivot_reduce(m);
    std::vector<Integer> rest = diagonalize(u.remainder);
    std::vector<Integer> out(z(u.unit_pivots), Integer(1));
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

DenseInt integer_kernel(const DenseInt& a0)
{
    DenseInt a = a0;
    size_t m = a.size();
    if (m == 0)
        throw Error(ErrorCode::INVALID_ARGUMENT, "kernel of a matrix without rows needs a column count");
    size_t n = a[0].size();
    DenseInt v(n, std::vector<Integer>(n, Integer(0)));
    for (size_t i = 0; i < n; ++i)
        v[i][i] = 1;
    auto colop = [&](DenseInt& x, size_t p, size_t j, const Integer& s, const Integer& t, const Integer& u,
                     const Integer& w) {
        for (auto& row : x) {
            Integer cp = s * row[p] + t * row[j];
            Integer cj = u * row[p] + w * row[j];
            row[p] = cp;
            row[j] = cj;
        }
    };
    size_t piv = 0;
    for (size_t i = 0; i < m && piv < n; ++i) {
        for (size_t j = piv + 1; j < n; ++j) {
            if (a[i][j] == 0)
                continue;
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[i][piv].get_mpz_t(), a[i][j].get_mpz_t());
            Integer u = -a[i][j] / g, w = a[i][piv] / g;
            colop(a, piv, j, s, t, u, w);
            colop(v, piv, j, s, t, u, w);
        }
        if (a[i][piv] != 0)
            ++piv;
    }
    DenseInt k(n, std::vector<Integer>());
    for (size_t r = 0; r < n; ++r)
        for (size_t c = piv; c < n; ++c)
            k[r].push_back(v[r][c]);
    return k;
}

HomologyReport homology(const std::vector<int>& ranks, const std::vector<SparseIntMatrix>& d, const HomologyOptions& opt)
{
    int n = static_cast<int>(ranks.size()) - 1;
    if (static_cast<int>(d.size()) != n + 1)
        throw Error(ErrorCode::INVALID_ARGUMENT, "one boundary per degree expected");
    for (int k = 1; k <= n; ++k)
        if (d[z(k)].rows() != ranks[z(k - 1)] || d[z(k)].cols() != ranks[z(k)])
            throw Error(ErrorCode::INVALID_ARGUMENT, "boundary shape does not match the ranks");
    for (int k = 2; k <= n; ++k)
        if (!(d[z(k - 1)] * d[z(k)]).is_zero())
            throw Error(ErrorCode::NOT_A_COMPLEX, "boundary squared is nonzero in degree " + std::to_string(k));

    HomologyReport rep;
    for (int r : ranks)
        rep.f_vector.push_back(r);
    for (int k = 0; k <= n; ++k)
        rep.euler += (k % 2 ? -1 : 1) * static_cast<long long>(ranks[z(k)]);

    bool full = opt.mode == HomologyMode::INTEGRAL;
    if (full)
        for (int k = 1; k <= n; ++k)
            if (static_cast<double>(d[z(k)].nnz()) * d[z(k)].rows() > opt.snf_limit)
                full = false;

    std::vector<int> rank_q(z(n + 2), 0);
    std::vector<std::vector<Integer>> factors(z(n + 2));
    std::map<uint32_t, std::vector<int>> rank_p;
    std::vector<std::function<void()>> tasks;
    if (full) {
        for (int k = 1; k <= n; ++k)
            tasks.push_back([&, k] { factors[z(k)] = smith_normal_form(d[z(k)]); });
    } else {
        for (int k = 1; k <= n; ++k)
            tasks.push_back([&, k] { rank_q[z(k)] = rank_rational(d[z(k)]); });
        if (opt.mode != HomologyMode::RATIONAL)
            for (uint32_t p : opt.primes) {
                rank_p[p].assign(z(n + 2), 0);
                for (int k = 1; k <= n; ++k)
                    tasks.push_back([&, k, p] { rank_p[p][z(k)] = rank_mod_p(d[z(k)], p); });
            }
    }
    run_parallel(tasks, thread_count(opt.threads));

    auto betti_from = [&](const std::vector<int>& r) {
        std::vector<int> b;
        for (int k = 0; k <= n; ++k)
            b.push_back(ranks[z(k)] - r[z(k)] - r[z(k + 1)]);
        return b;
    };
    rep.torsion.assign(z(n + 1), {});
    if (full) {
        rep.certification = Certification::FULL_SNF;
        for (int k = 1; k <= n; ++k) {
            rank_q[z(k)] = static_cast<int>(factors[z(k)].size());
            for (auto& f : factors[z(k)])
                if (f > 1)
                    rep.torsion[z(k - 1)].push_back(f);
        }
        rep.betti = betti_from(rank_q);
        rep.torsion_free_evidence =
            std::all_of(rep.torsion.begin(), rep.torsion.end(), [](const auto& t) { return t.empty(); });
    } else {
        rep.betti = betti_from(rank_q);
        if (opt.mode == HomologyMode::RATIONAL) {
            rep.certification = Certification::RATIONAL_ONLY;
        } else {
            rep.certification = Certification::MODULAR_ONLY;
            rep.primes = opt.primes;
            rep.torsion_free_evidence = true;
            for (auto& [p, r] : rank_p) {
                rep.modular_betti[p] = betti_from(r);
                rep.torsion_free_evidence = rep.torsion_free_evidence && rep.modular_betti[p] == rep.betti;
            }
        }
    }
    long long alt = 0;
    for (int k = 0; k <= n; ++k)
        alt += (k % 2 ? -1 : 1) * static_cast<long long>(rep.betti[z(k)]);
    if (alt != rep.euler)
        throw Error(ErrorCode::INCONSISTENT, "Betti numbers disagree with the Euler characteristic");
    return rep;
}

HomologyReport homology(const ChainComplex& c, const HomologyOptions& opt)
{
    std::vector<int> ranks;
    for (int k = 0; k <= c.dim; ++k)
        ranks.push_back(c.rank(k));
    return homology(ranks, c.boundary, opt);
}

long long euler_characteristic(const ChainComplex& c)
{
    long long chi = 0;
    for (int k = 0; k <= c.dim; ++k)
        chi += (k % 2 ? -1 : 1) * static_cast<long long>(c.rank(k));
    return chi;
}

IntPoly poincare_polynomial(const CoxeterMatrix& finite) { return from_exponents(cyclotomic_exponents(finite)); }

RationalFunction hat_growth_series(const HatGroup& h)
{
    int N = h.rank();
    std::vector<std::pair<int, std::map<int, int>>> terms;  // sign, exponents
    std::map<int, int> lcm;
    for (unsigned mask = 0; mask + 1 < (1u << N); ++mask) {
        std::vector<int> I;
        for (int i = 0; i < N; ++i)
            if (mask & (1u << i))
                I.push_back(i);
        auto ex = cyclotomic_exponents(h.matrix().submatrix(I));
        for (auto& [e, k] : ex)
            lcm[e] = std::max(lcm[e], k);
        terms.push_back({I.size() % 2 ? -1 : 1, ex});
    }
    RationalFunction r;
    r.den = from_exponents(lcm);
    for (auto& [sign, ex] : terms) {
        std::map<int, int> rest = lcm;
        for (auto& [e, k] : ex)
            rest[e] -= k;
        r.num = padd(r.num, from_exponents(rest), sign);
    }
    return r;
}

std::vector<Integer> hat_growth_coefficients(const HatGroup& h, int terms)
{
    auto [p, q] = hat_series_fraction(h);
    if (q.empty() || (q[0] != 1 && q[0] != -1))
        throw Error(ErrorCode::INCONSISTENT, "growth series denominator is not invertible over Z");
    std::vector<Integer> out;
    for (int k = 0; k < terms; ++k) {
        Integer s = z(k) < p.size() ? p[z(k)] : Integer(0);
        for (int j = 1; j <= k && z(j) < q.size(); ++j)
            s -= q[z(j)] * out[z(k - j)];
        out.push_back(s * q[0]);
    }
    return out;
}

Rational poincare_series_check(const HatGroup& h)
{
    auto [p, q] = hat_series_fraction(h);
    IntPoly num = pmul(poincare_polynomial(h.base()->matrix()), q), den = p;
    IntPoly lin{Integer(-1), Integer(1)};
    while (peval(num, 1) == 0 && peval(den, 1) == 0 && !num.empty()) {
        num = pdiv(num, lin);
        den = pdiv(den, lin);
    }
    if (peval(den, 1) == 0)
        throw Error(ErrorCode::INCONSISTENT, "growth quotient has a pole at q = 1");
    Rational v(peval(num, 1), peval(den, 1));
    v.canonicalize();
    return v;
}

std::string GeometricReport::str() const
{
    if (coeff == 0)
        return "0";
    std::ostringstream os;
    Integer num = coeff.get_num(), den = coeff.get_den();
    if (num == -1)
        os << '-';
    else if (num != 1)
        os << num;
    os << "pi";
    if (pi_power > 1)
        os << '^' << pi_power;
    if (den != 1)
        os << '/' << den;
    return os.str();
}

GeometricReport geometric_report(long long euler, int dim, DiagramClass cls)
{
    if (dim != 2 && dim != 4)
        throw Error(ErrorCode::NOT_APPLICABLE, "Gauss-Bonnet constants are given for dimensions 2 and 4");
    GeometricReport g;
    g.pi_power = dim / 2;
    if (cls == DiagramClass::AFFINE) {
        g.coeff = 0;
        return g;
    }
    if (!is_hyperbolic(cls))
        throw Error(ErrorCode::NOT_APPLICABLE, "neither flat nor hyperbolic");
    // curvature -1: area = -2 pi chi, volume = (4 pi^2 / 3) chi
    g.coeff = dim == 2 ? Rational(static_cast<long>(-2 * euler)) : Rational(static_cast<long>(4 * euler), 3);
    g.coeff.canonicalize();
    return g;
}

}  // namespace cxt

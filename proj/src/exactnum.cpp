#include "coxtorus/exactnum.hpp"

#include "coxtorus/error.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace cxt {

namespace {

using IntPoly = std::vector<Integer>;

IntPoly int_poly_divexact(IntPoly a, const IntPoly& b)
{
    // b monic
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    IntPoly q(static_cast<size_t>(std::max(0, da - db + 1)));
    for (int k = da - db; k >= 0; --k) {
        Integer c = a[static_cast<size_t>(k + db)];
        q[static_cast<size_t>(k)] = c;
        if (c == 0)
            continue;
        for (int j = 0; j <= db; ++j)
            a[static_cast<size_t>(k + j)] -= c * b[static_cast<size_t>(j)];
    }
    return q;
}

IntPoly cyclotomic(int n)
{
    static std::map<int, IntPoly> cache;
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    IntPoly p(static_cast<size_t>(n + 1), Integer(0));
    p[0] = -1;
    p[static_cast<size_t>(n)] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0)
            p = int_poly_divexact(p, cyclotomic(d));
    cache[n] = p;
    return p;
}

RatPoly trimmed(RatPoly p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
    return p;
}

RatPoly derivative(const RatPoly& p)
{
    RatPoly d;
    for (size_t k = 1; k < p.size(); ++k)
        d.push_back(p[k] * static_cast<long>(k));
    return trimmed(d);
}

int sturm_changes(const std::vector<RatPoly>& seq, const Rational& x)
{
    int changes = 0, last = 0;
    for (const auto& p : seq) {
        int s = sign_at(p, x);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

int roots_in(const RatPoly& p, const Rational& a, const Rational& b)
{
    std::vector<RatPoly> seq{p, derivative(p)};
    while (!seq.back().empty()) {
        RatPoly r = poly_rem(seq[seq.size() - 2], seq.back());
        for (auto& c : r)
            c = -c;
        seq.push_back(trimmed(r));
    }
    seq.pop_back();
    return sturm_changes(seq, a) - sturm_changes(seq, b);
}

Interval imul(const Interval& a, const Interval& b)
{
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Interval r{p[0], p[0]};
    for (auto& v : p) {
        if (v < r.lo)
            r.lo = v;
        if (v > r.hi)
            r.hi = v;
    }
    return r;
}

Rational dyadic_floor(double x, int bits)
{
    mpz_class n;
    mpz_set_d(n.get_mpz_t(), std::floor(std::ldexp(x, bits)));
    Rational q(n);
    mpz_class den = 1;
    den <<= bits;
    q /= Rational(den);
    return q;
}

Field join(const Field& a, const Field& b)
{
    if (a && a->degree() > 1) {
        if (b && b->degree() > 1 && b->m() != a->m())
            throw Error(ErrorCode::INVALID_ARGUMENT, "mixing elements of different fields");
        return a;
    }
    if (b && b->degree() > 1)
        return b;
    return a ? a : b;
}

// half away from zero
Integer round_half_up(const Rational& x)
{
    Rational y = abs(x) + Rational(1, 2);
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    return x < 0 ? Integer(-q) : q;
}

std::string format_fixed(const Integer& n, int digits)
{
    Integer a = abs(n);
    std::string s = a.get_str();
    if (static_cast<int>(s.size()) <= digits)
        s = std::string(static_cast<size_t>(digits + 1 - static_cast<int>(s.size())), '0') + s;
    std::string out = (n < 0 ? "-" : "") + s.substr(0, s.size() - static_cast<size_t>(digits));
    if (digits > 0)
        out += "." + s.substr(s.size() - static_cast<size_t>(digits));
    return out;
}

}  // namespace

Rational eval(const RatPoly& p, const Rational& x)
{
    Rational v = 0;
    for (size_t k = p.size(); k-- > 0;)
        v = v * x + p[k];
    return v;
}

int sign_at(const RatPoly& p, const Rational& x) { return sgn(eval(p, x)); }

RatPoly poly_mul(const RatPoly& a, const RatPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    RatPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    return trimmed(r);
}

RatPoly poly_rem(RatPoly a, const RatPoly& b)
{
    a = trimmed(a);
    size_t db = b.size() - 1;
    while (a.size() > db && !a.empty()) {
        Rational c = a.back() / b.back();
        size_t shift = a.size() - 1 - db;
        for (size_t j = 0; j <= db; ++j)
            a[shift + j] -= c * b[j];
        a.pop_back();
        a = trimmed(a);
    }
    return a;
}

FieldDescriptor::FieldDescriptor(int m) : m_(m)
{
    if (m < 2)
        throw Error(ErrorCode::INVALID_ARGUMENT, "real cyclotomic field needs m >= 2");
    IntPoly phi = cyclotomic(2 * m);
    int d = static_cast<int>(phi.size() - 1) / 2;
    // z^-d * Phi(z) written in x = z + 1/z via C_k = x C_{k-1} - C_{k-2}
    RatPoly q{Rational(phi[static_cast<size_t>(d)])};
    RatPoly c_prev{Rational(2)}, c_cur{Rational(0), Rational(1)};
    for (int k = 1; k <= d; ++k) {
        if (k > 1) {
            RatPoly next = poly_mul(RatPoly{0, 1}, c_cur);
            next.resize(std::max(next.size(), c_prev.size()), Rational(0));
            for (size_t i = 0; i < c_prev.size(); ++i)
                next[i] -= c_prev[i];
            c_prev = c_cur;
            c_cur = trimmed(next);
        }
        Rational coef(phi[static_cast<size_t>(d + k)]);
        q.resize(std::max(q.size(), c_cur.size()), Rational(0));
        for (size_t i = 0; i < c_cur.size(); ++i)
            q[i] += coef * c_cur[i];
    }
    minpoly_ = trimmed(q);

    double g = 2.0 * std::cos(M_PI / m);
    if (degree() == 1) {
        Rational r = -minpoly_[0] / minpoly_[1];
        anchor_ = {r, r};
    } else {
        for (int bits = 24;; bits += 8) {
            Rational lo = dyadic_floor(g, bits) - Rational(Integer(1), Integer(1) << bits);
            Rational hi = lo + Rational(Integer(3), Integer(1) << bits);
            if (sign_at(minpoly_, lo) != 0 && sign_at(minpoly_, hi) != 0 &&
                sign_at(minpoly_, lo) != sign_at(minpoly_, hi) && roots_in(minpoly_, lo, hi) == 1) {
                anchor_ = {lo, hi};
                break;
            }
            if (bits > 200)
                throw Error(ErrorCode::INCONSISTENT, "cannot isolate 2cos(pi/m)");
        }
    }
    powers_.resize(static_cast<size_t>(degree()));
    double p = 1.0;
    for (auto& v : powers_) {
        v = p;
        p *= g;
    }
}

Interval FieldDescriptor::refine(int bits) const
{
    if (degree() == 1)
        return anchor_;
    std::lock_guard<std::mutex> lock(mu_);
    Interval best = anchor_;
    int have = 0;
    for (auto& [b, iv] : cache_) {
        if (b >= bits)
            return iv;
        if (b > have) {
            have = b;
            best = iv;
        }
    }
    Rational eps(Integer(1), Integer(1) << bits);
    int slo = sign_at(minpoly_, best.lo);
    while (best.hi - best.lo > eps) {
        Rational mid = (best.lo + best.hi) / 2;
        int s = sign_at(minpoly_, mid);
        if (s == slo)
            best.lo = mid;
        else
            best.hi = mid;
    }
    cache_.emplace_back(bits, best);
    return best;
}

Field real_cyclotomic_field(int m)
{
    static std::mutex mu;
    static std::map<int, Field> cache;
    if (m < 2)
        throw Error(ErrorCode::INVALID_ARGUMENT, "real cyclotomic field needs m >= 2");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end())
        return it->second;
    auto f = std::make_shared<const FieldDescriptor>(m);
    cache[m] = f;
    return f;
}

Field field_for_labels(const std::vector<int>& labels)
{
    long l = 1;
    for (int k : labels)
        if (k >= 4)
            l = std::lcm(l, static_cast<long>(k));
    if (l == 1)
        return nullptr;
    return real_cyclotomic_field(static_cast<int>(l));
}

FieldElem::FieldElem(Field f, std::vector<Rational> coeffs) : f_(std::move(f)), c_(std::move(coeffs))
{
    for (auto& c : c_)
        c.canonicalize();
    reduce();
}

FieldElem FieldElem::generator(const Field& f)
{
    if (!f)
        throw Error(ErrorCode::INVALID_ARGUMENT, "generator of the rational field");
    return FieldElem(f, {Rational(0), Rational(1)});
}

FieldElem FieldElem::two_cos(const Field& f, int k)
{
    k = std::abs(k);
    FieldElem g = generator(f);
    FieldElem prev(2), cur = g;
    if (k == 0)
        return prev;
    for (int i = 1; i < k; ++i) {
        FieldElem next = g * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

FieldElem FieldElem::two_cos_pi_over(const Field& f, int d)
{
    switch (d) {
    case 0: return FieldElem(2);
    case 1: return FieldElem(-2);
    case 2: return FieldElem(0);
    case 3: return FieldElem(1);
    default: break;
    }
    if (!f || f->m() % d != 0)
        throw Error(ErrorCode::INVALID_ARGUMENT, "2cos(pi/" + std::to_string(d) + ") is not in the field");
    return two_cos(f, f->m() / d);
}

void FieldElem::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

void FieldElem::reduce()
{
    if (f_ && static_cast<int>(c_.size()) > f_->degree())
        c_ = poly_rem(c_, f_->minpoly());
    if (f_ && f_->degree() == 1 && c_.size() > 1)
        c_ = {eval(c_, f_->embedding_anchor().lo)};
    trim();
}

Rational FieldElem::rational_value() const
{
    if (!is_rational())
        throw Error(ErrorCode::INVALID_ARGUMENT, "element is irrational");
    return c_.empty() ? Rational(0) : c_[0];
}

FieldElem operator+(const FieldElem& a, const FieldElem& b)
{
    FieldElem r;
    r.f_ = join(a.f_, b.f_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        r.c_[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i)
        r.c_[i] += b.c_[i];
    r.trim();
    return r;
}

FieldElem FieldElem::operator-() const
{
    FieldElem r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b)
{
    FieldElem r;
    r.f_ = join(a.f_, b.f_);
    r.c_ = poly_mul(a.c_, b.c_);
    r.reduce();
    return r;
}

FieldElem FieldElem::inverse() const
{
    if (is_zero())
        throw Error(ErrorCode::INVALID_ARGUMENT, "division by zero");
    if (is_rational())
        return FieldElem(f_, {1 / c_[0]});
    // extended Euclid: s*a + t*p = g
    RatPoly r0 = f_->minpoly(), r1 = c_;
    RatPoly s0{}, s1{Rational(1)};
    while (!(r1.size() == 1)) {
        RatPoly q;
        RatPoly a = r0;
        size_t db = r1.size() - 1;
        q.assign(a.size() >= r1.size() ? a.size() - db : 1, Rational(0));
        while (a.size() >= r1.size() && !a.empty()) {
            Rational c = a.back() / r1.back();
            size_t shift = a.size() - 1 - db;
            q[shift] = c;
            for (size_t j = 0; j <= db; ++j)
                a[shift + j] -= c * r1[j];
            a.pop_back();
            a = trimmed(a);
        }
        RatPoly qs = poly_mul(q, s1);
        RatPoly s2 = s0;
        s2.resize(std::max(s2.size(), qs.size()), Rational(0));
        for (size_t i = 0; i < qs.size(); ++i)
            s2[i] -= qs[i];
        r0 = r1;
        r1 = a;
        s0 = s1;
        s1 = trimmed(s2);
        if (r1.empty())
            throw Error(ErrorCode::INCONSISTENT, "minimal polynomial is reducible");
    }
    for (auto& c : s1)
        c /= r1[0];
    return FieldElem(f_, s1);
}

Interval FieldElem::enclose(int bits) const
{
    if (is_rational()) {
        Rational v = c_.empty() ? Rational(0) : c_[0];
        return {v, v};
    }
    Interval x = f_->refine(bits);
    Interval v{c_.back(), c_.back()};
    for (size_t k = c_.size() - 1; k-- > 0;) {
        v = imul(v, x);
        v.lo += c_[k];
        v.hi += c_[k];
    }
    return v;
}

double FieldElem::to_double() const
{
    if (is_rational())
        return c_.empty() ? 0.0 : c_[0].get_d();
    double v = 0;
    const auto& pw = f_->powers();
    for (size_t k = 0; k < c_.size(); ++k)
        v += c_[k].get_d() * pw[k];
    return v;
}

int FieldElem::sign() const
{
    if (c_.empty())
        return 0;
    if (is_rational())
        return sgn(c_[0]);
    const auto& pw = f_->powers();
    double v = 0, mag = 0;
    for (size_t k = 0; k < c_.size(); ++k) {
        double t = c_[k].get_d() * pw[k];
        v += t;
        mag += std::fabs(t);
    }
    if (std::isfinite(mag) && std::fabs(v) > 1e-12 * mag + 1e-290)
        return v > 0 ? 1 : -1;
    for (int bits = 64;; bits *= 2) {
        Interval iv = enclose(bits);
        if (iv.lo > 0)
            return 1;
        if (iv.hi < 0)
            return -1;
    }
}

std::string FieldElem::approximate(int digits) const
{
    if (digits < 0)
        throw Error(ErrorCode::INVALID_ARGUMENT, "negative digit count");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rational s(scale);
    if (is_rational())
        return format_fixed(round_half_up(rational_value() * s), digits);
    for (int bits = 4 * digits + 24;; bits *= 2) {
        Interval iv = enclose(bits);
        Integer a = round_half_up(iv.lo * s), b = round_half_up(iv.hi * s);
        if (a == b)
            return format_fixed(a, digits);
    }
}

std::string FieldElem::str() const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0)
            continue;
        Rational v = c_[k];
        if (!first)
            os << (v < 0 ? " - " : " + ");
        else if (v < 0)
            os << "-";
        Rational a = abs(v);
        if (k == 0)
            os << a.get_str();
        else {
            if (a != 1)
                os << a.get_str() << "*";
            os << "c" << (f_ ? std::to_string(f_->m()) : "");
            if (k > 1)
                os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

int sign_of(const FieldElem& e) { return e.sign(); }

std::string approximate(const FieldElem& e, int digits) { return e.approximate(digits); }

}  // namespace cxt

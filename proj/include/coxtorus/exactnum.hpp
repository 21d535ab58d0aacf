#pragma once

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace cxt {

using Rational = mpq_class;
using Integer = mpz_class;
using RatPoly = std::vector<Rational>;  // constant term first

struct Interval {
    Rational lo, hi;
};

// Q(2cos(pi/m)) with its embedding sending the generator to 2cos(pi/m).
class FieldDescriptor {
public:
    explicit FieldDescriptor(int m);

    int m() const { return m_; }
    int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
    const RatPoly& minpoly() const { return minpoly_; }
    const Interval& embedding_anchor() const { return anchor_; }

    // isolating interval of width <= 2^-bits
    Interval refine(int bits) const;
    const std::vector<double>& powers() const { return powers_; }

private:
    int m_;
    RatPoly minpoly_;
    Interval anchor_;
    std::vector<double> powers_;
    mutable std::mutex mu_;
    mutable std::vector<std::pair<int, Interval>> cache_;
};

using Field = std::shared_ptr<const FieldDescriptor>;

// cached per m; m < 2 throws INVALID_ARGUMENT
Field real_cyclotomic_field(int m);

// smallest field holding 2cos(pi/k) for all given labels (0 = infinity); null if rational
Field field_for_labels(const std::vector<int>& labels);

class FieldElem {
public:
    FieldElem() = default;
    FieldElem(long v) : c_{Rational(v)} { trim(); }
    FieldElem(const Rational& q) : c_{q} { c_[0].canonicalize(); trim(); }
    FieldElem(Field f, std::vector<Rational> coeffs);

    static FieldElem generator(const Field& f);
    // 2cos(k*pi/m) for the field parameter m
    static FieldElem two_cos(const Field& f, int k);
    // 2cos(pi/d); d must divide the field parameter (or give a rational value)
    static FieldElem two_cos_pi_over(const Field& f, int d);

    const Field& field() const { return f_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    Rational rational_value() const;

    int sign() const;
    double to_double() const;
    Interval enclose(int bits) const;
    std::string approximate(int digits) const;
    std::string str() const;

    FieldElem inverse() const;

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }
    FieldElem operator-() const;
    FieldElem& operator+=(const FieldElem& b) { return *this = *this + b; }
    FieldElem& operator-=(const FieldElem& b) { return *this = *this - b; }
    FieldElem& operator*=(const FieldElem& b) { return *this = *this * b; }
    friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.c_ == b.c_; }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
    friend bool operator<(const FieldElem& a, const FieldElem& b) { return (a - b).sign() < 0; }

private:
    void trim();
    void reduce();

    Field f_;
    std::vector<Rational> c_;
};

int sign_of(const FieldElem& e);
std::string approximate(const FieldElem& e, int digits);

// polynomial helpers shared with the classification code
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
RatPoly poly_rem(RatPoly a, const RatPoly& b);
int sign_at(const RatPoly& p, const Rational& x);
Rational eval(const RatPoly& p, const Rational& x);

}  // namespace cxt

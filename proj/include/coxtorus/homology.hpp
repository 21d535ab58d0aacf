#pragma once

#include "coxtorus/complex.hpp"
#include "coxtorus/sparse.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cxt {

// nonzero invariant factors, a divisibility chain of positive integers
std::vector<Integer> smith_normal_form(const SparseIntMatrix& m);
std::vector<Integer> smith_normal_form_dense(DenseInt a);

// columns spanning the integer kernel of a
DenseInt integer_kernel(const DenseInt& a);

enum class HomologyMode { INTEGRAL, MODULAR, RATIONAL };
enum class Certification { FULL_SNF, MODULAR_ONLY, RATIONAL_ONLY };
std::string to_string(Certification c);

struct HomologyOptions {
    HomologyMode mode = HomologyMode::INTEGRAL;
    std::vector<uint32_t> primes{2, 3, 5, 7, 11};
    // integral mode falls back to rational and modular ranks when nnz * rows exceeds this
    double snf_limit = 5e6;
    int threads = 0;  // 0: CXT_THREADS or the hardware concurrency
};

struct HomologyReport {
    std::vector<int> betti;
    std::vector<std::vector<Integer>> torsion;  // invariant factors > 1 per degree
    Certification certification = Certification::FULL_SNF;
    std::vector<uint32_t> primes;                      // primes used for modular ranks
    std::map<uint32_t, std::vector<int>> modular_betti;
    bool torsion_free_evidence = false;                // every modular Betti vector equals the rational one
    long long euler = 0;
    std::vector<long long> f_vector;
};

// C_k of the given ranks with boundaries d[k]: C_k -> C_{k-1}, d[0] ignored
HomologyReport homology(const std::vector<int>& ranks, const std::vector<SparseIntMatrix>& d,
                        const HomologyOptions& opt = {});
HomologyReport homology(const ChainComplex& c, const HomologyOptions& opt = {});

long long euler_characteristic(const ChainComplex& c);

// polynomials over Z, constant term first
using IntPoly = std::vector<Integer>;
IntPoly poincare_polynomial(const CoxeterMatrix& finite);  // prod [d_i]_q
struct RationalFunction {
    IntPoly num, den;
};
// growth series of the extended group: 1/Ŵ(1/q) = sum over proper I of (-1)^|I| / Ŵ_I(q)
RationalFunction hat_growth_series(const HatGroup& h);
// first terms of the power series of hat W(q)
std::vector<Integer> hat_growth_coefficients(const HatGroup& h, int terms);
// W(q)/Ŵ(q) at q = 1
Rational poincare_series_check(const HatGroup& h);

// Gauss-Bonnet value coeff * pi^power
struct GeometricReport {
    Rational coeff;
    int pi_power = 0;
    std::string str() const;
};
GeometricReport geometric_report(long long euler, int dim, DiagramClass cls);

}  // namespace cxt

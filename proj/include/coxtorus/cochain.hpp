#pragma once

#include "coxtorus/complex.hpp"

#include <map>
#include <string>

namespace cxt {

// cochains on a torus complex; basis index k is dual to the k-th chain basis element
struct Cochain {
    int degree = 0;
    std::map<int, Integer> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    friend bool operator==(const Cochain& a, const Cochain& b) { return a.degree == b.degree && a.coeffs == b.coeffs; }
};

Cochain basis_cochain(int degree, int idx);
Cochain operator+(const Cochain& a, const Cochain& b);
Cochain operator*(const Integer& s, const Cochain& a);

// d^k = transpose of the boundary
SparseIntMatrix coboundary(const ChainComplex& c, int k);
// d^k assembled from the coset sums over minimal representatives of the upstairs parabolics
SparseIntMatrix coboundary_from_cosets(const ChainComplex& c, const HatGroup& h, int k);
Cochain apply_coboundary(const ChainComplex& c, const Cochain& a);

// label (I, right coset representative) of a basis cochain
std::string cochain_label(const ChainComplex& c, int k, int idx);

// cup product of basis cochains, by intersecting the dual cells
Cochain cup_basis(const ChainComplex& c, int p, int i, int q, int j);
Cochain cup(const ChainComplex& c, const Cochain& a, const Cochain& b);
// the same product from the coset formula in the extended group, summed over the lifts
// of the first cell's subcells
Cochain cup_basis_via_lifts(const ChainComplex& c, const HatGroup& h, int p, int i, int q, int j);

// the constant cochain 1 in degree 0
Cochain unit_cochain(const ChainComplex& c);

// integral degree-one cocycles whose classes form a basis of H^1 over Q; the kernel of d^1
// is computed densely, so C^1 is limited to max_rank basis elements
std::vector<Cochain> degree_one_classes(const ChainComplex& c, int max_rank = 3000);

struct CupProductRanks {
    std::vector<int> betti;     // rational, from the coboundaries
    std::vector<int> products;  // dim of the span of k-fold products of degree-one classes in H^k
};
CupProductRanks cup_product_ranks(const ChainComplex& c, int max_rank = 3000);

}  // namespace cxt

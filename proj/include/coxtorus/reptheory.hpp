#pragma once

#include "coxtorus/complex.hpp"
#include "coxtorus/coxeter.hpp"
#include "coxtorus/extension.hpp"

#include <string>
#include <vector>

namespace cxt {

// values per conjugacy class, in the order of conjugacy_classes(sys)
struct ClassFunction {
    std::vector<FieldElem> values;

    friend bool operator==(const ClassFunction& a, const ClassFunction& b) { return a.values == b.values; }
};

ClassFunction operator+(const ClassFunction& a, const ClassFunction& b);
ClassFunction operator-(const ClassFunction& a, const ClassFunction& b);
ClassFunction operator*(const FieldElem& s, const ClassFunction& a);
ClassFunction operator*(const ClassFunction& a, const ClassFunction& b);  // tensor product

struct CharTable {
    System sys;
    ClassData classes;
    std::vector<std::string> labels;
    std::vector<ClassFunction> chars;

    int index_of(const std::string& label) const;  // -1 if absent
    const ClassFunction& operator[](const std::string& label) const;
    int degree(int i) const;
};

// (1/|W|) sum over classes of size * a * b; characters of Coxeter groups are real
FieldElem inner_product(const CoxeterSystem& sys, const ClassData& cd, const ClassFunction& a, const ClassFunction& b);

ClassFunction trivial_character(const CoxeterSystem& sys, const ClassData& cd);
ClassFunction sign_character(const CoxeterSystem& sys, const ClassData& cd);
// trace of the geometric representation
ClassFunction reflection_character(const CoxeterSystem& sys, const ClassData& cd);
// class c -> number of cosets gH fixed by c
ClassFunction permutation_character(const CoxeterSystem& sys, const ClassData& cd, const Subgroup& h);

// labels 1, eps, eps_s, eps_t (m even; eps_s is trivial on s_1), chi_1 .. chi_{(m-1)/2}
CharTable dihedral_char_table(int m);
CharTable dihedral_char_table(System sys);
// embedded H3/H4 tables, checked by orthogonality and the degree sum
CharTable load_char_table(System sys);
CharTable parse_char_table(System sys, const std::string& text);
// dihedral, H3 or H4
CharTable char_table(System sys);

// multiplicity of each irreducible; throws INCONSISTENT on a non-integral or negative result
std::vector<long long> decompose(const CharTable& t, const ClassFunction& f);
std::vector<long long> decompose_virtual(const CharTable& t, const ClassFunction& f);
ClassFunction compose(const CharTable& t, const std::vector<long long>& mult);
std::string format_decomposition(const CharTable& t, const std::vector<long long>& mult);

// sum over proper I of (-1)^|I| 1 induced from pi(hat W_I)
ClassFunction hopf_virtual_character(const HatGroup& h, const ClassData& cd);
// character of the k-chains of the torus complex
ClassFunction chain_character(const HatGroup& h, const ClassData& cd, int k);

struct HomologyDecomposition {
    // each solution lists multiplicities per degree 0..n
    std::vector<std::vector<std::vector<long long>>> solutions;
    bool projected = false;  // candidates were filtered by isotypic projection
    bool ambiguous() const { return solutions.size() > 1; }
};

// H_0 = 1, H_n = eps, H_{n-i} = H_i (x) eps, the Hopf identity, the Betti numbers and
// <H_i, chi> <= <C_i, chi>
HomologyDecomposition decompose_homology(const HatGroup& h, const std::vector<int>& betti, const CharTable& t);

// dim over F_p (p = 2^31 - 1) of the part of H_k(c) on which W acts through the irreducibles
// summed in f; f is rational valued and its constituents share the degree deg.  The rank
// of the boundary into C_k is sampled on random vectors, with a fixed seed.
long long isotypic_homology_dimension(const ChainComplex& c, const ClassData& cd, const ClassFunction& f, int deg, int k);
// drops candidates whose multiplicities disagree with isotypic_homology_dimension
void resolve_by_projection(HomologyDecomposition& d, const ChainComplex& c, const CharTable& t);

}  // namespace cxt

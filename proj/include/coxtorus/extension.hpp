#pragma once

#include "coxtorus/coxeter.hpp"

#include <memory>
#include <string>
#include <vector>

namespace cxt {

using FMatrix = std::vector<std::vector<FieldElem>>;

FMatrix identity_matrix(int n);
FMatrix mat_mul(const FMatrix& a, const FMatrix& b);
FMatrix transpose(const FMatrix& a);
FieldElem trace(const FMatrix& a);
// characteristic polynomial det(xI - A), constant term first
std::vector<FieldElem> char_poly(const FMatrix& a);

struct Signature {
    int pos = 0, neg = 0, zero = 0;
};
// inertia of a real symmetric matrix
Signature signature(const FMatrix& sym);

enum class DiagramClass { FINITE, AFFINE, COMPACT_HYPERBOLIC, NONCOMPACT_HYPERBOLIC, OTHER };
std::string to_string(DiagramClass c);
bool is_hyperbolic(DiagramClass c);

// Tits form B(a_i, a_j) = -cos(pi/m_ij), infinity giving -1
FMatrix tits_form(const CoxeterMatrix& m);
DiagramClass classify_diagram(const CoxeterMatrix& m);

Element distinguished_reflection(const CoxeterSystem& sys);
// vertex 0 is the new node, vertices 1..n are those of sys
CoxeterMatrix extended_matrix(const CoxeterSystem& sys, const Element& r);

struct HatElement {
    FMatrix mat;
    Word word;  // ShortLex normal form over 0..n

    int length() const { return static_cast<int>(word.size()); }
    friend bool operator==(const HatElement& a, const HatElement& b) { return a.mat == b.mat; }
    friend bool operator!=(const HatElement& a, const HatElement& b) { return a.mat != b.mat; }
};

struct AffinePair {
    std::vector<Rational> translation;  // coordinates on the simple coroots
    Element finite;                     // element = t_translation * finite
};

class HatGroup {
public:
    static std::shared_ptr<const HatGroup> create(System base);
    static std::shared_ptr<const HatGroup> create(System base, const Element& r);

    const System& base() const { return base_; }
    int rank() const { return matrix_.size(); }  // n + 1
    const CoxeterMatrix& matrix() const { return matrix_; }
    const Field& field() const { return field_; }
    const FMatrix& tits() const { return tits_; }
    // s_i(a_j) = a_j - cartan(i,j) a_i in the realisation used for gen_matrices
    const FMatrix& cartan() const { return cartan_; }
    const std::vector<FMatrix>& gen_matrices() const { return gens_; }
    // symmetric form preserved by gen_matrices
    FMatrix invariant_form() const;
    const Element& r() const { return r_; }
    const Word& r_word() const { return r_.word; }
    DiagramClass diagram_class() const { return class_; }
    // integer Kac-Moody realisation of an affine Weyl group
    bool integral_affine() const { return integral_; }

    HatElement identity() const;
    HatElement normal_form(const Word& w) const;
    HatElement from_matrix(const FMatrix& m) const;
    HatElement multiply(const HatElement& a, const HatElement& b) const;
    HatElement inverse(const HatElement& a) const;
    HatElement generator(int letter) const { return normal_form({letter}); }

    // W -> hat W along reduced words, and the projection back
    HatElement section(const Element& w) const;
    Element project(const Word& w) const;
    Element project(const HatElement& x) const { return project(x.word); }

    HatElement q0() const;
    AffinePair affine_pair(const HatElement& x) const;

private:
    HatGroup() = default;
    System base_;
    CoxeterMatrix matrix_;
    Field field_;
    FMatrix tits_, cartan_;
    std::vector<FMatrix> gens_;
    Element r_;
    DiagramClass class_ = DiagramClass::OTHER;
    bool integral_ = false;
    std::vector<Rational> delta_;  // null root coefficients in the integral case
};

using Hat = std::shared_ptr<const HatGroup>;

Hat hat_group(System base);
HatElement hat_normal_form(const HatGroup& h, const Word& w);

// closure of pi(s_i), i in I, inside W; checked against the abstract order of the parabolic
Subgroup parabolic_image(const HatGroup& h, const std::vector<int>& I);

struct ScanEntry {
    CoxeterMatrix diagram;   // canonical relabelling, special node first
    DiagramClass cls;
    std::vector<int> roots;  // positive roots whose reflection yields this diagram
    Word rep;                // reflection of the first such root
    bool degenerate = false; // r is a simple reflection, so o(r s_i) = 1
};
std::vector<ScanEntry> scan_reflection_extensions(const CoxeterSystem& sys);

// canonical form of a labelled graph; vertex 0 stays distinguished when keep_zero
CoxeterMatrix canonical_diagram(const CoxeterMatrix& m, bool keep_zero);

FieldElem q0_trace(const HatGroup& h);

}  // namespace cxt

#pragma once

#include "coxtorus/extension.hpp"
#include "coxtorus/sparse.hpp"

#include <string>
#include <vector>

namespace cxt {

enum class RelatorKind { SIDE, CYCLE, COMMUTATOR };
std::string to_string(RelatorKind k);

// letters are +-(i + 1) for generator i
using Relator = std::vector<int>;

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Relator> relators;
    std::vector<RelatorKind> kinds;
    // images of the generators in hat W (empty for the crystallographic lattice presentation)
    std::vector<FMatrix> images, inverse_images;
    // Tietze substitutions, in order, as "q_x = q_a q_b^-1"
    std::vector<std::string> trail;

    int num_generators() const { return static_cast<int>(generators.size()); }
    size_t total_length() const;
    std::string relator_str(const Relator& r) const;
};

// parabolic subgroup of the s in S commuting with s_0 in hat W
Subgroup centralizer_of_q0(const HatGroup& h);

// generators q_u = u q_0 u^-1 for u in the minimal left coset representatives of C_W(q_0),
// side relators q_u q_{u r}, and the ridge cycle relators closed under W.  An affine
// extension gives the free abelian group on n generators.
Presentation pi1_presentation(const HatGroup& h);
// keeps the ShortLex smaller generator of each side pair and drops the side relators
Presentation pair_sides(const Presentation& p);
// Tietze eliminations of generators occurring once in a relator, least total length first
Presentation eliminate_generators(const Presentation& p);

// free reduction up to cyclic rotation, then the least rotation of r or r^-1
Relator canonical_relator(const Relator& r);
// every relator multiplies out to the identity of hat W
bool verify_relators(const Presentation& p, int threads = 0);

struct Abelianization {
    int free_rank = 0;
    std::vector<Integer> torsion;

    std::string str() const;  // "Z^11", "Z^2 + Z/2", "0"
};
SparseIntMatrix exponent_matrix(const Presentation& p);  // rows: relators
Abelianization abelianization(const Presentation& p);

// one line of generator names, then one relator per line as signed 1-based indices
std::string to_text(const Presentation& p);

}  // namespace cxt

#pragma once

#include "coxtorus/coxeter.hpp"
#include "coxtorus/extension.hpp"
#include "coxtorus/sparse.hpp"

#include <map>
#include <string>
#include <vector>

namespace cxt {

// one W-orbit of cells, with boundary described on the representative
struct EquivariantFace {
    int cell;     // index among the cells of degree k-1
    int sign;
    Element g;    // face of the representative is g applied to that cell
};

struct EquivariantCell {
    std::vector<int> label;
    std::string name;
    std::vector<Element> stabilizer;  // images in W of generators of the upstairs stabilizer
    long long stabilizer_order = 0;   // order upstairs; the image must match it
    std::vector<EquivariantFace> faces;
};

struct EquivariantComplex {
    System group;
    int dim = 0;
    std::vector<std::vector<EquivariantCell>> cells;  // by degree
};

struct Face {
    int cell;
    int sign;
    int g;  // group table index
};

struct Cell {
    std::vector<int> label;
    std::string name;
    CosetSpace cosets;  // W / stabilizer, left cosets
    std::vector<Face> faces;
    int offset = 0;     // first basis index in its degree
};

struct ChainComplex {
    System group;
    int dim = 0;
    std::vector<std::vector<Cell>> cells;       // by degree
    std::vector<SparseIntMatrix> boundary;      // boundary[k]: C_k -> C_{k-1}; boundary[0] has no rows

    int rank(int k) const;
    std::vector<long long> f_vector() const;
    // (cell, coset) of a basis index
    std::pair<int, int> locate(int k, int idx) const;
    int basis_index(int k, int cell, int group_idx) const;
    std::string basis_label(int k, int idx) const;
};

// orbit data with its stabilizers and face twists replaced by W cosets
ChainComplex deflate(const EquivariantComplex& e);

// cells f_I of the fundamental chamber of the extended group, I a proper subset of {0..n}
EquivariantComplex alcove_complex(const HatGroup& h);
ChainComplex torus_complex(const HatGroup& h);
// the Coxeter complex of a finite W (a sphere), no quotient
EquivariantComplex coxeter_complex(System sys);

bool boundary_squared_zero(const ChainComplex& c);
// basis permutation induced by left multiplication with a group element
std::vector<int> act_on_basis(const ChainComplex& c, int k, int group_idx);
bool is_equivariant(const ChainComplex& c);
// Z[W] entries of the representative boundaries: rows = degree-k cells, columns = degree-(k-1) cells
using GroupRingElem = std::map<int, long long>;  // group table index -> coefficient
std::vector<std::vector<GroupRingElem>> group_ring_boundary(const ChainComplex& c, int k);

// fundamental group of the root system acting on the alcove vertices 0..n
struct OmegaElement {
    std::vector<int> perm;  // permutation of S_0
    Element image;          // projection to W
};

struct OmegaAction {
    TypeSpec type;
    System sys;
    std::vector<int> highest_coeffs;                  // n_1..n_n
    std::vector<std::vector<Rational>> vertices;      // v_0..v_n, fundamental coweight coordinates
    std::vector<int> minuscule;                       // letters i with n_i = 1
    std::map<int, std::vector<int>> perms;            // omega_i on S_0
    std::map<int, Element> finite_parts;              // w_i
    std::vector<OmegaElement> group;                  // all of Omega, identity first

    std::string structure() const;  // "1", "Z/3", "Z/2 x Z/2", ...
};

OmegaAction omega_action(const TypeSpec& t);
// subgroup generated by omega_i, i in gens
std::vector<OmegaElement> omega_subgroup(const OmegaAction& om, const std::vector<int>& gens);
std::string cycle_str(const std::vector<int>& perm);
// order of Omega from the tabulated fundamental groups
int expected_omega_order(const TypeSpec& t);

struct Flag {
    std::vector<unsigned> sets;  // bitmasks over S_0, strictly increasing
};
// size first, then lexicographic on the sorted elements
bool subset_less(unsigned a, unsigned b);
bool flag_less(const Flag& a, const Flag& b);
std::string flag_str(const Flag& f);

struct BarycentricData {
    EquivariantComplex complex;
    std::vector<std::vector<Flag>> reps;            // orbit-minimal flags by degree
    std::vector<std::vector<long long>> omega_stab; // |(Omega_Y)_Z| per representative
};

BarycentricData barycentric_data(const OmegaAction& om, const std::vector<int>& h_gens);
ChainComplex barycentric_complex(const OmegaAction& om, const std::vector<int>& h_gens);

}  // namespace cxt

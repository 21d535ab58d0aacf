#pragma once

#include "coxtorus/complex.hpp"
#include "coxtorus/fungroup.hpp"
#include "coxtorus/homology.hpp"
#include "coxtorus/reptheory.hpp"

#include <string>
#include <vector>

namespace cxt {

// A chain complex detached from its group: what the JSON complex files hold.
struct ComplexFile {
    std::string type;     // "H3", "I2(5)", ...
    int rank = 0;
    int m = 0;            // dihedral parameter, 0 for other families
    std::string lattice;  // quotient of a crystallographic torus, empty for T(W)

    struct Degree {
        std::vector<std::vector<int>> subsets;  // cell labels, one per orbit
        std::vector<long long> coset_sizes;     // orbit sizes
        std::vector<std::string> labels;        // orbit names
    };
    std::vector<Degree> degrees;
    std::vector<SparseIntMatrix> boundaries;  // boundaries[k]: C_k -> C_{k-1}, k >= 1

    int dim() const { return static_cast<int>(degrees.size()) - 1; }
    std::vector<int> ranks() const;
    std::vector<long long> f_vector() const;
};

ComplexFile complex_file(const ChainComplex& c, const TypeSpec& t, const std::string& lattice = "");

// Key order is fixed and all integers other than matrix indices are decimal strings, so
// equal complexes give identical bytes.
std::string complex_to_json(const ComplexFile& f);
// CORRUPT_TABLE on malformed input, NOT_A_COMPLEX if some boundary composite is nonzero
ComplexFile complex_from_json(const std::string& text);

HomologyReport homology(const ComplexFile& f, const HomologyOptions& opt = {});

std::string report_to_json(const HomologyReport& r, const std::string& type);
std::string presentation_to_json(const Presentation& p);
std::string decomposition_to_json(const HomologyDecomposition& d, const CharTable& t);

}  // namespace cxt

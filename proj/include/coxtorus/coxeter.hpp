#pragma once

#include "coxtorus/exactnum.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace cxt {

// generator letters: 1..n in W, 0..n in the extension
using Word = std::vector<int>;
using Perm = std::vector<uint16_t>;

inline constexpr int kInfinity = 0;

class CoxeterMatrix {
public:
    CoxeterMatrix() = default;
    explicit CoxeterMatrix(int n);
    CoxeterMatrix(int n, const std::vector<int>& entries);

    int size() const { return n_; }
    // 0-based indices; kInfinity for an infinite label
    int operator()(int i, int j) const { return m_[static_cast<size_t>(i * n_ + j)]; }
    void set(int i, int j, int m);
    CoxeterMatrix submatrix(const std::vector<int>& idx) const;
    std::vector<int> labels() const;
    std::string str() const;

    friend bool operator==(const CoxeterMatrix& a, const CoxeterMatrix& b)
    {
        return a.n_ == b.n_ && a.m_ == b.m_;
    }

private:
    int n_ = 0;
    std::vector<int> m_;
};

struct TypeSpec {
    char family = 'A';  // A..I
    int rank = 1;
    int m = 0;          // dihedral parameter for family I

    bool crystallographic() const { return family != 'H' && family != 'I'; }
    std::string str() const;
    friend bool operator==(const TypeSpec& a, const TypeSpec& b)
    {
        return a.family == b.family && a.rank == b.rank && a.m == b.m;
    }
};

TypeSpec parse_type(const std::string& s);
CoxeterMatrix coxeter_matrix(const TypeSpec& t);
// Cartan integers with s_i(a_j) = a_j - A(i,j) a_i; crystallographic types only
std::vector<std::vector<int>> cartan_matrix(const TypeSpec& t);
// connected components of a finite-type matrix, each with its vertex list;
// throws FINITE_TYPE_REQUIRED otherwise
std::vector<std::pair<TypeSpec, std::vector<int>>> finite_components(const CoxeterMatrix& m);
std::vector<int> degrees(const TypeSpec& t);
long long finite_order(const CoxeterMatrix& m);

struct Element {
    Perm perm;  // perm[k] = index of w(root k)
    Word word;  // ShortLex reduced word

    friend bool operator==(const Element& a, const Element& b) { return a.perm == b.perm; }
    friend bool operator!=(const Element& a, const Element& b) { return a.perm != b.perm; }
};

class CoxeterSystem;

// the whole group, enumerated in ShortLex order
class GroupTable {
public:
    explicit GroupTable(const CoxeterSystem& sys);

    int size() const { return static_cast<int>(lengths_.size()); }
    const uint16_t* perm(int idx) const { return &perms_[static_cast<size_t>(idx) * width_]; }
    int index_of(const Perm& p) const;
    int length(int idx) const { return lengths_[static_cast<size_t>(idx)]; }
    // letter 1..n
    int lmul(int letter, int idx) const { return lmul_[static_cast<size_t>(letter - 1)][static_cast<size_t>(idx)]; }
    int rmul(int letter, int idx) const { return rmul_[static_cast<size_t>(letter - 1)][static_cast<size_t>(idx)]; }
    int mul(int a, int b) const;
    int inv(int a) const { return inv_[static_cast<size_t>(a)]; }
    Word word(int idx) const;
    Element element(int idx) const;
    bool right_descent(int idx, int letter) const;
    bool left_descent(int idx, int letter) const { return length(lmul(letter, idx)) < length(idx); }

private:
    std::string key(const uint16_t* p) const;

    const CoxeterSystem* sys_;
    size_t width_;
    std::vector<uint16_t> perms_;
    std::vector<int> lengths_;
    std::vector<std::vector<int>> lmul_, rmul_;
    std::vector<int> inv_;
    std::unordered_map<std::string, int> index_;
};

class CoxeterSystem {
public:
    static std::shared_ptr<const CoxeterSystem> create(const TypeSpec& t);
    static std::shared_ptr<const CoxeterSystem> create(const CoxeterMatrix& m);
    ~CoxeterSystem();

    int rank() const { return matrix_.size(); }
    const CoxeterMatrix& matrix() const { return matrix_; }
    const std::optional<TypeSpec>& type() const { return type_; }
    bool crystallographic() const { return type_ && type_->crystallographic(); }
    const Field& field() const { return field_; }
    // A(i,j), 0-based
    const FieldElem& cartan(int i, int j) const { return cartan_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    int num_positive_roots() const { return npos_; }
    int num_roots() const { return 2 * npos_; }
    const std::vector<FieldElem>& root(int k) const { return roots_[static_cast<size_t>(k)]; }
    int negate_root(int k) const { return k < npos_ ? k + npos_ : k - npos_; }
    int root_index(const std::vector<FieldElem>& v) const;
    int highest_root() const;
    long long order() const { return order_; }

    Element identity() const;
    Element generator(int letter) const;
    Element element_from_word(const Word& w) const;
    Element from_perm(Perm p) const;
    Element multiply(const Element& a, const Element& b) const;
    Element inverse(const Element& a) const;
    int length(const Element& a) const { return length(a.perm); }
    int length(const Perm& p) const;
    bool is_right_descent(const Element& a, int letter) const;
    bool is_left_descent(const Element& a, int letter) const;
    Word reduced_word(Perm p) const;
    int element_order(const Element& a) const;

    Perm compose(const Perm& a, const Perm& b) const;
    const Perm& generator_perm(int letter) const { return gens_[static_cast<size_t>(letter - 1)]; }
    // reflection in positive root k
    const Perm& reflection_perm(int k) const { return refl_[static_cast<size_t>(k)]; }
    Element reflection(int k) const { return from_perm(refl_[static_cast<size_t>(k)]); }
    // positive root index of a reflection, or -1
    int reflection_root(const Element& a) const;

    const GroupTable& group() const;

private:
    CoxeterSystem() = default;
    void build(const CoxeterMatrix& m, std::optional<TypeSpec> t);

    CoxeterMatrix matrix_;
    std::optional<TypeSpec> type_;
    Field field_;
    std::vector<std::vector<FieldElem>> cartan_;
    std::vector<std::vector<FieldElem>> roots_;
    int npos_ = 0;
    long long order_ = 0;
    std::vector<Perm> gens_;
    std::vector<Perm> refl_;
    std::unordered_map<std::string, int> root_lookup_;
    mutable std::once_flag group_once_;
    mutable std::unique_ptr<GroupTable> group_;
};

using System = std::shared_ptr<const CoxeterSystem>;

struct Subgroup {
    std::vector<Element> generators;
    std::vector<int> elements;  // sorted group-table indices
    long long order() const { return static_cast<long long>(elements.size()); }
    bool contains(int idx) const;
};

Subgroup subgroup_closure(const CoxeterSystem& sys, const std::vector<Element>& gens);
Subgroup parabolic_subgroup(const CoxeterSystem& sys, const std::vector<int>& letters);

enum class Side { Left, Right };

// Left: cosets wH; Right: cosets Hw
struct CosetSpace {
    Side side = Side::Left;
    Subgroup subgroup;
    std::vector<int> reps;      // group indices, increasing (ShortLex)
    std::vector<int> coset_of;  // group index -> position in reps

    int size() const { return static_cast<int>(reps.size()); }
};

CosetSpace coset_space(const CoxeterSystem& sys, const Subgroup& h, Side side);
CosetSpace min_coset_reps(const CoxeterSystem& sys, const std::vector<int>& letters, Side side);
std::vector<Element> double_cosets(const CoxeterSystem& sys, const std::vector<int>& I, const std::vector<int>& J);

struct PQFactor {
    Element u, d, v;
};
PQFactor pq_factorize(const CoxeterSystem& sys, const Element& x, const std::vector<int>& I, const std::vector<int>& J);

std::vector<Element> dyer_generators(const CoxeterSystem& sys, const Subgroup& h);

struct ConjugacyClass {
    int rep;   // group index, ShortLex least in its class
    long long size;
};
struct ClassData {
    std::vector<ConjugacyClass> classes;
    std::vector<int> class_of;  // group index -> class position
};
ClassData conjugacy_classes(const CoxeterSystem& sys);

std::string word_str(const Word& w);

}  // namespace cxt

#pragma once

#include "coxtorus/exactnum.hpp"

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

namespace cxt {

using Triplet = std::tuple<int, int, Integer>;

// column-major; rows within a column strictly increasing, no stored zeros
class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(int rows, int cols);
    // duplicates are summed, zeros dropped
    static SparseIntMatrix from_triplets(int rows, int cols, std::vector<Triplet> t);
    static SparseIntMatrix from_dense(const std::vector<std::vector<Integer>>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    size_t nnz() const;
    bool is_zero() const { return nnz() == 0; }

    const std::vector<std::pair<int, Integer>>& column(int c) const { return cols_data_[static_cast<size_t>(c)]; }
    // replaces column c; entries are sorted and merged
    void set_column(int c, std::vector<std::pair<int, Integer>> entries);
    Integer at(int r, int c) const;

    std::vector<Triplet> triplets() const;
    std::vector<std::vector<Integer>> dense() const;
    SparseIntMatrix transpose() const;
    std::vector<Integer> apply(const std::vector<Integer>& x) const;

    friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b);
    friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cols_data_ == b.cols_data_;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::vector<std::pair<int, Integer>>> cols_data_;
};

using DenseInt = std::vector<std::vector<Integer>>;

// M is equivalent to I_t (+) remainder under unimodular row and column operations
struct UnitReduction {
    int unit_pivots = 0;
    DenseInt remainder;
};
UnitReduction unit_pivot_reduce(const SparseIntMatrix& m);

// rank over F_p, p < 2^31
int rank_mod_p(const SparseIntMatrix& m, uint32_t p);
// rank over Q: unit pivots, then fraction-free elimination on what is left
int rank_rational(const SparseIntMatrix& m);
int dense_rank(DenseInt a);

}  // namespace cxt

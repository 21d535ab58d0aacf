#include "coxtorus/sparse.hpp"

#include "coxtorus/error.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace cxt {

namespace {

size_t z(int i) { return static_cast<size_t>(i); }

using Column = std::vector<std::pair<int, Integer>>;

void normalize(Column& e)
{
    std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Column out;
    out.reserve(e.size());
    for (auto& [r, v] : e) {
        if (!out.empty() && out.back().first == r)
            out.back().second += v;
        else
            out.emplace_back(r, v);
        if (out.back().second == 0)
            out.pop_back();
    }
    e = std::move(out);
}

struct Overflow {};

struct ModP {
    using T = uint32_t;
    uint32_t p;

    T from(const Integer& v) const
    {
        Integer r = v % p;
        if (r < 0)
            r += p;
        return static_cast<T>(r.get_ui());
    }
    bool zero(T x) const { return x == 0; }
    bool unit(T) const { return true; }
    T mul(T a, T b) const { return static_cast<T>(static_cast<uint64_t>(a) * b % p); }
    T inv(T a) const
    {
        T r = 1, b = a;
        for (uint32_t e = p - 2; e; e >>= 1) {
            if (e & 1)
                r = mul(r, b);
            b = mul(b, b);
        }
        return r;
    }
    T factor(T a, T pivot) const { return mul(a, inv(pivot)); }
    // x - f*y
    T sub_mul(T x, T f, T y) const { return static_cast<T>((x + static_cast<uint64_t>(p) - mul(f, y)) % p); }
    Integer to_integer(T x) const { return Integer(static_cast<unsigned long>(x)); }
};

struct Z64 {
    using T = int64_t;

    T from(const Integer& v) const
    {
        if (!v.fits_slong_p())
            throw Overflow{};
        return v.get_si();
    }
    bool zero(T x) const { return x == 0; }
    bool unit(T x) const { return x == 1 || x == -1; }
    T factor(T a, T pivot) const { return a * pivot; }
    T sub_mul(T x, T f, T y) const
    {
        T prod, out;
        if (__builtin_mul_overflow(f, y, &prod) || __builtin_sub_overflow(x, prod, &out))
            throw Overflow{};
        return out;
    }
    Integer to_integer(T x) const { return Integer(static_cast<long>(x)); }
};

struct ZBig {
    using T = Integer;

    T from(const Integer& v) const { return v; }
    bool zero(const T& x) const { return x == 0; }
    bool unit(const T& x) const { return x == 1 || x == -1; }
    T factor(const T& a, const T& pivot) const { return a * pivot; }
    T sub_mul(const T& x, const T& f, const T& y) const { return x - f * y; }
    Integer to_integer(const T& x) const { return x; }
};

// column elimination on unit pivots, sparsest column first
template <class R>
class Eliminator {
public:
    using T = typename R::T;
    using Col = std::vector<std::pair<int, T>>;

    Eliminator(const SparseIntMatrix& m, R ring) : ring_(ring), rows_(m.rows())
    {
        data_.resize(z(m.cols()));
        row_cols_.resize(z(m.rows()));
        for (int c = 0; c < m.cols(); ++c)
            for (auto& [r, v] : m.column(c)) {
                T t = ring_.from(v);
                if (ring_.zero(t))
                    continue;
                data_[z(c)].emplace_back(r, t);
                row_cols_[z(r)].push_back(c);
            }
        done_.assign(data_.size(), 0);
    }

    int run()
    {
        using Key = std::pair<size_t, int>;
        std::priority_queue<Key, std::vector<Key>, std::greater<Key>> pq;
        for (size_t c = 0; c < data_.size(); ++c)
            pq.push({data_[c].size(), static_cast<int>(c)});
        std::vector<char> deferred(data_.size(), 0);
        int rank = 0;
        while (!pq.empty()) {
            auto [sz, c] = pq.top();
            pq.pop();
            if (done_[z(c)] || deferred[z(c)])
                continue;
            Col& col = data_[z(c)];
            if (sz != col.size()) {
                pq.push({col.size(), c});
                continue;
            }
            if (col.empty()) {
                done_[z(c)] = 1;
                continue;
            }
            int best = -1;
            size_t weight = std::numeric_limits<size_t>::max();
            T pv{};
            for (auto& [r, v] : col)
                if (ring_.unit(v) && row_cols_[z(r)].size() < weight) {
                    weight = row_cols_[z(r)].size();
                    best = r;
                    pv = v;
                }
            if (best < 0) {
                deferred[z(c)] = 1;
                continue;
            }
            done_[z(c)] = 1;
            ++rank;
            std::vector<int> touched = std::move(row_cols_[z(best)]);
            row_cols_[z(best)].clear();
            for (int j : touched) {
                if (j == c || done_[z(j)])
                    continue;
                Col& cj = data_[z(j)];
                auto it = std::lower_bound(cj.begin(), cj.end(), best,
                                           [](const auto& e, int r) { return e.first < r; });
                if (it == cj.end() || it->first != best)
                    continue;
                T f = ring_.factor(it->second, pv);
                cj = axpy(cj, f, col, j);
                if (deferred[z(j)])
                    deferred[z(j)] = 0;
                pq.push({cj.size(), j});
            }
        }
        return rank;
    }

    DenseInt remainder() const
    {
        std::vector<int> cols, rows;
        std::vector<char> used(z(rows_), 0);
        for (size_t c = 0; c < data_.size(); ++c)
            if (!done_[c] && !data_[c].empty()) {
                cols.push_back(static_cast<int>(c));
                for (auto& e : data_[c])
                    used[z(e.first)] = 1;
            }
        std::vector<int> pos(z(rows_), -1);
        for (int r = 0; r < rows_; ++r)
            if (used[z(r)]) {
                pos[z(r)] = static_cast<int>(rows.size());
                rows.push_back(r);
            }
        DenseInt out(rows.size(), std::vector<Integer>(cols.size(), Integer(0)));
        for (size_t k = 0; k < cols.size(); ++k)
            for (auto& [r, v] : data_[z(cols[k])])
                out[z(pos[z(r)])][k] = ring_.to_integer(v);
        return out;
    }

private:
    // x - f*y, registering fill-in rows against column j
    Col axpy(const Col& x, const T& f, const Col& y, int j)
    {
        Col out;
        out.reserve(x.size() + y.size());
        size_t a = 0, b = 0;
        T zero{};
        while (a < x.size() || b < y.size()) {
            if (b == y.size() || (a < x.size() && x[a].first < y[b].first)) {
                out.push_back(x[a++]);
            } else if (a == x.size() || y[b].first < x[a].first) {
                T v = ring_.sub_mul(zero, f, y[b].second);
                if (!ring_.zero(v)) {
                    out.emplace_back(y[b].first, v);
                    row_cols_[z(y[b].first)].push_back(j);
                }
                ++b;
            } else {
                T v = ring_.sub_mul(x[a].second, f, y[b].second);
                if (!ring_.zero(v))
                    out.emplace_back(x[a].first, v);
                ++a;
                ++b;
            }
        }
        return out;
    }

    R ring_;
    int rows_;
    std::vector<Col> data_;
    std::vector<std::vector<int>> row_cols_;
    std::vector<char> done_;
};

template <class R>
UnitReduction reduce_with(const SparseIntMatrix& m, R ring)
{
    Eliminator<R> e(m, ring);
    UnitReduction out;
    out.unit_pivots = e.run();
    out.remainder = e.remainder();
    return out;
}

}  // namespace

SparseIntMatrix::SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols)
{
    if (rows < 0 || cols < 0)
        throw Error(ErrorCode::INVALID_ARGUMENT, "negative matrix dimension");
    cols_data_.resize(z(cols));
}

SparseIntMatrix SparseIntMatrix::from_triplets(int rows, int cols, std::vector<Triplet> t)
{
    SparseIntMatrix m(rows, cols);
    for (auto& [r, c, v] : t) {
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw Error(ErrorCode::INVALID_ARGUMENT, "triplet out of range");
        m.cols_data_[z(c)].emplace_back(r, std::move(v));
    }
    for (auto& col : m.cols_data_)
        normalize(col);
    return m;
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<Integer>>& d)
{
    int rows = static_cast<int>(d.size());
    int cols = rows ? static_cast<int>(d[0].size()) : 0;
    SparseIntMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (d[z(r)][z(c)] != 0)
                m.cols_data_[z(c)].emplace_back(r, d[z(r)][z(c)]);
    return m;
}

size_t SparseIntMatrix::nnz() const
{
    size_t n = 0;
    for (auto& c : cols_data_)
        n += c.size();
    return n;
}

void SparseIntMatrix::set_column(int c, std::vector<std::pair<int, Integer>> entries)
{
    for (auto& e : entries)
        if (e.first < 0 || e.first >= rows_)
            throw Error(ErrorCode::INVALID_ARGUMENT, "row out of range");
    normalize(entries);
    cols_data_[z(c)] = std::move(entries);
}

Integer SparseIntMatrix::at(int r, int c) const
{
    const Column& col = cols_data_[z(c)];
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, int x) { return e.first < x; });
    return it != col.end() && it->first == r ? it->second : Integer(0);
}

std::vector<Triplet> SparseIntMatrix::triplets() const
{
    std::vector<Triplet> out;
    for (int c = 0; c < cols_; ++c)
        for (auto& [r, v] : cols_data_[z(c)])
            out.emplace_back(r, c, v);
    std::sort(out.begin(), out.end(), [](const Triplet& a, const Triplet& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    return out;
}

std::vector<std::vector<Integer>> SparseIntMatrix::dense() const
{
    std::vector<std::vector<Integer>> d(z(rows_), std::vector<Integer>(z(cols_), Integer(0)));
    for (int c = 0; c < cols_; ++c)
        for (auto& [r, v] : cols_data_[z(c)])
            d[z(r)][z(c)] = v;
    return d;
}

SparseIntMatrix SparseIntMatrix::transpose() const
{
    SparseIntMatrix t(cols_, rows_);
    for (int c = 0; c < cols_; ++c)
        for (auto& [r, v] : cols_data_[z(c)])
            t.cols_data_[z(r)].emplace_back(c, v);
    return t;
}

std::vector<Integer> SparseIntMatrix::apply(const std::vector<Integer>& x) const
{
    if (static_cast<int>(x.size()) != cols_)
        throw Error(ErrorCode::INVALID_ARGUMENT, "vector length mismatch");
    std::vector<Integer> y(z(rows_), Integer(0));
    for (int c = 0; c < cols_; ++c)
        if (x[z(c)] != 0)
            for (auto& [r, v] : cols_data_[z(c)])
                y[z(r)] += v * x[z(c)];
    return y;
}

SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw Error(ErrorCode::INVALID_ARGUMENT, "shape mismatch in product");
    SparseIntMatrix out(a.rows_, b.cols_);
    for (int c = 0; c < b.cols_; ++c) {
        Column acc;
        for (auto& [k, v] : b.cols_data_[z(c)])
            for (auto& [r, w] : a.cols_data_[z(k)])
                acc.emplace_back(r, v * w);
        normalize(acc);
        out.cols_data_[z(c)] = std::move(acc);
    }
    return out;
}

UnitReduction unit_pivot_reduce(const SparseIntMatrix& m)
{
    try {
        return reduce_with(m, Z64{});
    } catch (const Overflow&) {
        return reduce_with(m, ZBig{});
    }
}

int rank_mod_p(const SparseIntMatrix& m, uint32_t p)
{
    if (p < 2 || p > static_cast<uint32_t>(std::numeric_limits<int32_t>::max()))
        throw Error(ErrorCode::INVALID_ARGUMENT, "modulus out of range");
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            throw Error(ErrorCode::INVALID_ARGUMENT, "modulus is not prime");
    Eliminator<ModP> e(m, ModP{p});
    return e.run();
}

int dense_rank(DenseInt a)
{
    // Bareiss
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    Integer prev = 1;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j) {
                a[i][j] = a[i][j] * a[r][c] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

int rank_rational(const SparseIntMatrix& m)
{
    UnitReduction u = unit_pivot_reduce(m);
    return u.unit_pivots + dense_rank(std::move(u.remainder));
}

}  // namespace cxt

#include "coxtorus/cochain.hpp"

#include "coxtorus/error.hpp"
#include "coxtorus/homology.hpp"

#include <algorithm>
#include <set>

namespace cxt {

namespace {

size_t z(int i) { return static_cast<size_t>(i); }

int find_cell(const ChainComplex& c, int k, const std::vector<int>& label)
{
    const auto& cs = c.cells[z(k)];
    for (size_t b = 0; b < cs.size(); ++b)
        if (cs[b].label == label)
            return static_cast<int>(b);
    throw Error(ErrorCode::INVALID_ARGUMENT, "no cell with the requested label");
}

std::vector<int> complement(const std::vector<int>& I, int n_plus_1)
{
    std::vector<int> out;
    for (int j = 0; j < n_plus_1; ++j)
        if (!std::binary_search(I.begin(), I.end(), j))
            out.push_back(j);
    return out;
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b)
{
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

int ground_size(const ChainComplex& c) { return c.dim + 1; }

void check_degree(const ChainComplex& c, int k)
{
    if (k < 0 || k > c.dim)
        throw Error(ErrorCode::INVALID_ARGUMENT, "degree out of range");
}

// the finite parabolic of the extended group on the letters I, with its projection to W
struct Parabolic {
    System sys;                 // letters 1..|I| standing for I[0..]
    std::vector<int> letters;   // I
    std::vector<int> image;     // group index in W of each element of sys
};

Parabolic make_parabolic(const ChainComplex& c, const HatGroup& h, const std::vector<int>& I)
{
    Parabolic p;
    p.letters = I;
    if (I.empty()) {
        p.image = {0};
        return p;
    }
    p.sys = CoxeterSystem::create(h.matrix().submatrix(I));
    const GroupTable& ft = p.sys->group();
    const GroupTable& g = c.group->group();
    std::vector<int> gen_img;
    for (int i : I)
        gen_img.push_back(g.index_of((i == 0 ? h.r() : c.group->generator(i)).perm));
    p.image.assign(z(ft.size()), 0);
    for (int x = 1; x < ft.size(); ++x)
        for (int s = 1; s <= p.sys->rank(); ++s)
            if (ft.left_descent(x, s)) {
                p.image[z(x)] = g.mul(gen_img[z(s - 1)], p.image[z(ft.lmul(s, x))]);
                break;
            }
    return p;
}

int local_letter(const Parabolic& p, int letter)
{
    auto it = std::find(p.letters.begin(), p.letters.end(), letter);
    return it == p.letters.end() ? -1 : static_cast<int>(it - p.letters.begin()) + 1;
}

bool in_letters(const Word& w, const std::vector<int>& J)
{
    return std::all_of(w.begin(), w.end(), [&](int s) { return std::binary_search(J.begin(), J.end(), s); });
}

}  // namespace

Cochain basis_cochain(int degree, int idx)
{
    Cochain a;
    a.degree = degree;
    a.coeffs[idx] = 1;
    return a;
}

Cochain operator+(const Cochain& a, const Cochain& b)
{
    if (a.degree != b.degree && !a.is_zero() && !b.is_zero())
        throw Error(ErrorCode::INVALID_ARGUMENT, "adding cochains of different degrees");
    Cochain out = a.is_zero() ? b : a;
    out.coeffs = a.coeffs;
    for (auto& [k, v] : b.coeffs) {
        Integer& e = out.coeffs[k];
        e += v;
        if (e == 0)
            out.coeffs.erase(k);
    }
    return out;
}

Cochain operator*(const Integer& s, const Cochain& a)
{
    Cochain out;
    out.degree = a.degree;
    if (s != 0)
        for (auto& [k, v] : a.coeffs)
            out.coeffs[k] = s * v;
    return out;
}

SparseIntMatrix coboundary(const ChainComplex& c, int k)
{
    check_degree(c, k);
    if (k == c.dim)
        return SparseIntMatrix(0, c.rank(k));
    return c.boundary[z(k + 1)].transpose();
}

SparseIntMatrix coboundary_from_cosets(const ChainComplex& c, const HatGroup& h, int k)
{
    check_degree(c, k);
    if (k == c.dim)
        return SparseIntMatrix(0, c.rank(k));
    const GroupTable& g = c.group->group();
    std::vector<Triplet> t;
    for (size_t b = 0; b < c.cells[z(k)].size(); ++b) {
        const Cell& A = c.cells[z(k)][b];
        const std::vector<int>& I = A.label;
        Parabolic par = make_parabolic(c, h, I);
        std::vector<int> Ic = complement(I, ground_size(c));
        for (int j : I) {
            std::vector<int> K;
            for (int i : I)
                if (i != j)
                    K.push_back(i);
            int u = static_cast<int>(std::count_if(Ic.begin(), Ic.end(), [&](int i) { return i < j; }));
            int sign = u % 2 ? -1 : 1;
            int kc = find_cell(c, k + 1, K);
            const Cell& C = c.cells[z(k + 1)][z(kc)];
            // minimal representatives of W_K \ W_I: no left descent among the letters of K
            std::vector<int> eps;
            const GroupTable& ft = par.sys->group();
            for (int x = 0; x < ft.size(); ++x) {
                bool minimal = true;
                for (int s : K)
                    if (ft.left_descent(x, local_letter(par, s))) {
                        minimal = false;
                        break;
                    }
                if (minimal)
                    eps.push_back(par.image[z(x)]);
            }
            for (int q = 0; q < A.cosets.size(); ++q) {
                int gi = A.cosets.reps[z(q)];
                for (int x : eps) {
                    int row = C.offset + C.cosets.coset_of[z(g.mul(gi, g.inv(x)))];
                    t.emplace_back(row, A.offset + q, Integer(sign));
                }
            }
        }
    }
    return SparseIntMatrix::from_triplets(c.rank(k + 1), c.rank(k), std::move(t));
}

Cochain apply_coboundary(const ChainComplex& c, const Cochain& a)
{
    check_degree(c, a.degree);
    Cochain out;
    out.degree = a.degree + 1;
    if (a.degree == c.dim)
        return out;
    const SparseIntMatrix& d = c.boundary[z(a.degree + 1)];
    // (da)(sigma) = a(boundary sigma)
    for (int j = 0; j < d.cols(); ++j) {
        Integer s = 0;
        for (auto& [r, v] : d.column(j)) {
            auto it = a.coeffs.find(r);
            if (it != a.coeffs.end())
                s += v * it->second;
        }
        if (s != 0)
            out.coeffs[j] = s;
    }
    return out;
}

std::string cochain_label(const ChainComplex& c, int k, int idx)
{
    auto [b, q] = c.locate(k, idx);
    const Cell& A = c.cells[z(k)][z(b)];
    const GroupTable& g = c.group->group();
    int ginv = g.inv(A.cosets.reps[z(q)]);
    int best = -1;
    for (int x : A.cosets.subgroup.elements) {
        int y = g.mul(x, ginv);
        if (best < 0 || y < best)
            best = y;
    }
    Word w = g.word(best);
    return A.name + ":" + (w.empty() ? std::string("e") : word_str(w));
}

Cochain cup_basis(const ChainComplex& c, int p, int i, int q, int j)
{
    check_degree(c, p);
    check_degree(c, q);
    Cochain out;
    out.degree = p + q;
    if (p + q > c.dim)
        return out;
    auto [ba, qa] = c.locate(p, i);
    auto [bb, qb] = c.locate(q, j);
    const Cell& A = c.cells[z(p)][z(ba)];
    const Cell& B = c.cells[z(q)][z(bb)];
    std::vector<int> Ic = complement(A.label, ground_size(c)), Jc = complement(B.label, ground_size(c));
    if (Ic.back() != Jc.front())
        return out;
    int kc = find_cell(c, p + q, intersect(A.label, B.label));
    const Cell& C = c.cells[z(p + q)][z(kc)];
    const GroupTable& g = c.group->group();
    int ga = A.cosets.reps[z(qa)];
    // the subcells of gH_I of type K whose J-face is B
    for (int x : A.cosets.subgroup.elements) {
        int y = g.mul(ga, x);
        if (B.cosets.coset_of[z(y)] == qb)
            out.coeffs[C.offset + C.cosets.coset_of[z(y)]] = 1;
    }
    return out;
}

Cochain cup(const ChainComplex& c, const Cochain& a, const Cochain& b)
{
    Cochain out;
    out.degree = a.degree + b.degree;
    for (auto& [i, u] : a.coeffs)
        for (auto& [j, v] : b.coeffs)
            out = out + (u * v) * cup_basis(c, a.degree, i, b.degree, j);
    out.degree = a.degree + b.degree;
    return out;
}

Cochain cup_basis_via_lifts(const ChainComplex& c, const HatGroup& h, int p, int i, int q, int j)
{
    check_degree(c, p);
    check_degree(c, q);
    Cochain out;
    out.degree = p + q;
    if (p + q > c.dim)
        return out;
    auto [ba, qa] = c.locate(p, i);
    auto [bb, qb] = c.locate(q, j);
    const Cell& A = c.cells[z(p)][z(ba)];
    const Cell& B = c.cells[z(q)][z(bb)];
    const std::vector<int>& I = A.label;
    const std::vector<int>& J = B.label;
    std::vector<int> Ic = complement(I, ground_size(c)), Jc = complement(J, ground_size(c));
    if (Ic.back() != Jc.front())
        return out;
    std::vector<int> K = intersect(I, J);
    int kc = find_cell(c, p + q, K);
    const Cell& C = c.cells[z(p + q)][z(kc)];
    const CoxeterSystem& W = *c.group;
    const GroupTable& g = W.group();

    auto left_descent = [&](const HatElement& x, int s) {
        Word w{s};
        w.insert(w.end(), x.word.begin(), x.word.end());
        return h.normal_form(w).length() < x.length();
    };
    auto right_descent = [&](const HatElement& x, int s) {
        Word w = x.word;
        w.push_back(s);
        return h.normal_form(w).length() < x.length();
    };

    // a is the right coset H_I x with x = g^-1
    int x = g.inv(A.cosets.reps[z(qa)]);
    HatElement xt = h.section(g.element(x));

    std::vector<HatElement> reps;  // minimal left coset representatives of W_K in W_I
    if (I.empty()) {
        reps.push_back(h.identity());
    } else {
        Parabolic par = make_parabolic(c, h, I);
        const GroupTable& ft = par.sys->group();
        for (int e = 0; e < ft.size(); ++e) {
            bool minimal = true;
            for (int s : K)
                if (ft.right_descent(e, local_letter(par, s))) {
                    minimal = false;
                    break;
                }
            if (!minimal)
                continue;
            Word w;
            for (int s : ft.word(e))
                w.push_back(I[z(s - 1)]);
            reps.push_back(h.normal_form(w));
        }
    }

    for (auto& u : reps) {
        // y_hat = minimal element of W_J u^-1 x
        HatElement yh = h.multiply(h.inverse(u), xt);
        for (bool moved = true; moved;) {
            moved = false;
            for (int s : J)
                if (left_descent(yh, s)) {
                    yh = h.normal_form([&] {
                        Word w{s};
                        w.insert(w.end(), yh.word.begin(), yh.word.end());
                        return w;
                    }());
                    moved = true;
                    break;
                }
        }
        // keep the lift whose J-coset projects onto b = H_J y, y = h_b^-1
        int py = g.index_of(h.project(yh).perm);
        if (B.cosets.coset_of[z(g.inv(py))] != qb)
            continue;
        // x y_hat^-1 = u' w_J with w_J in W_J and u' minimal in u' W_J
        HatElement w = h.multiply(xt, h.inverse(yh));
        Word wj;
        for (bool moved = true; moved;) {
            moved = false;
            for (int s : J)
                if (right_descent(w, s)) {
                    Word tmp = w.word;
                    tmp.push_back(s);
                    w = h.normal_form(tmp);
                    wj.insert(wj.begin(), s);
                    moved = true;
                    break;
                }
        }
        if (!in_letters(w.word, I))
            throw Error(ErrorCode::INCONSISTENT, "lift does not factor through W_I W_J");
        HatElement term = h.multiply(h.normal_form(wj), yh);
        int pt = g.index_of(h.project(term).perm);
        out.coeffs[C.offset + C.cosets.coset_of[z(g.inv(pt))]] += 1;
    }
    return out;
}

Cochain unit_cochain(const ChainComplex& c)
{
    Cochain one;
    one.degree = 0;
    for (int k = 0; k < c.rank(0); ++k)
        one.coeffs[k] = 1;
    return one;
}

namespace {

int span_rank(int rows, const std::vector<const std::map<int, Integer>*>& cols)
{
    std::vector<Triplet> t;
    for (size_t c = 0; c < cols.size(); ++c)
        for (auto& [r, v] : *cols[c])
            t.emplace_back(r, static_cast<int>(c), v);
    return rank_rational(SparseIntMatrix::from_triplets(rows, static_cast<int>(cols.size()), std::move(t)));
}

std::vector<std::map<int, Integer>> columns(const SparseIntMatrix& m)
{
    std::vector<std::map<int, Integer>> out(z(m.cols()));
    for (int c = 0; c < m.cols(); ++c)
        for (auto& [r, v] : m.column(c))
            out[z(c)][r] = v;
    return out;
}

}  // namespace

std::vector<Cochain> degree_one_classes(const ChainComplex& c, int max_rank)
{
    if (c.dim < 1)
        return {};
    if (c.rank(1) > max_rank)
        throw Error(ErrorCode::NOT_APPLICABLE, "C^1 has rank " + std::to_string(c.rank(1)) +
                                                   ", above the dense kernel limit " + std::to_string(max_rank));
    DenseInt ker = c.dim > 1 ? integer_kernel(coboundary(c, 1).dense())
                             : DenseInt(z(c.rank(1)), std::vector<Integer>(z(c.rank(1)), Integer(0)));
    if (c.dim == 1)
        for (int i = 0; i < c.rank(1); ++i)
            ker[z(i)][z(i)] = 1;
    std::vector<const std::map<int, Integer>*> span;
    auto exact = columns(coboundary(c, 0));
    for (auto& col : exact)
        span.push_back(&col);
    int base = span_rank(c.rank(1), span);
    std::vector<std::map<int, Integer>> kept;  // reserved, so the pointers in span stay valid
    kept.reserve(ker.empty() ? 0 : ker[0].size());
    for (size_t j = 0; !ker.empty() && j < ker[0].size(); ++j) {
        std::map<int, Integer> col;
        for (size_t i = 0; i < ker.size(); ++i)
            if (ker[i][j] != 0)
                col[static_cast<int>(i)] = ker[i][j];
        kept.push_back(std::move(col));
        span.push_back(&kept.back());
        if (span_rank(c.rank(1), span) < base + static_cast<int>(kept.size())) {
            span.pop_back();
            kept.pop_back();
        }
    }
    std::vector<Cochain> out;
    for (auto& col : kept)
        out.push_back(Cochain{1, col});
    return out;
}

CupProductRanks cup_product_ranks(const ChainComplex& c, int max_rank)
{
    CupProductRanks r;
    std::vector<Cochain> gens = degree_one_classes(c, max_rank);
    r.betti.assign(z(c.dim + 1), 0);
    r.products.assign(z(c.dim + 1), 0);
    r.products[0] = 1;
    std::vector<std::vector<size_t>> prev{{}};
    std::vector<Cochain> prev_products{unit_cochain(c)};
    for (int k = 0; k <= c.dim; ++k) {
        int cocycles = c.rank(k) - (k < c.dim ? rank_rational(coboundary(c, k)) : 0);
        int exact = k > 0 ? rank_rational(coboundary(c, k - 1)) : 0;
        r.betti[z(k)] = cocycles - exact;
        if (k == 0)
            continue;
        std::vector<std::vector<size_t>> sets;
        std::vector<Cochain> products;
        for (size_t s = 0; s < prev.size(); ++s)
            for (size_t g = prev[s].empty() ? 0 : prev[s].back() + 1; g < gens.size(); ++g) {
                Cochain p = cup(c, prev_products[s], gens[g]);
                if (!apply_coboundary(c, p).is_zero())
                    throw Error(ErrorCode::INCONSISTENT, "product of cocycles is not a cocycle");
                auto set = prev[s];
                set.push_back(g);
                sets.push_back(std::move(set));
                products.push_back(std::move(p));
            }
        auto cols = columns(coboundary(c, k - 1));
        std::vector<const std::map<int, Integer>*> span;
        for (auto& col : cols)
            span.push_back(&col);
        for (auto& p : products)
            span.push_back(&p.coeffs);
        r.products[z(k)] = span_rank(c.rank(k), span) - exact;
        prev = std::move(sets);
        prev_products = std::move(products);
    }
    return r;
}

}  // namespace cxt

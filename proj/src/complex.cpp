#include "coxtorus/complex.hpp"

#include "coxtorus/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cxt {

namespace {

size_t z(int i) { return static_cast<size_t>(i); }

std::string set_str(const std::vector<int>& s)
{
    std::ostringstream os;
    os << '{';
    for (size_t k = 0; k < s.size(); ++k)
        os << (k ? "," : "") << s[k];
    os << '}';
    return os.str();
}

std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& ground, int size)
{
    std::vector<std::vector<int>> out;
    int n = static_cast<int>(ground.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != size)
            continue;
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i))
                s.push_back(ground[z(i)]);
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// cells indexed by the subset I of fixed generators; dimension = |ground| - 1 - |I|
EquivariantComplex parabolic_complex(System sys, const std::vector<int>& ground,
                                     const std::function<Element(int)>& image,
                                     const std::function<long long(const std::vector<int>&)>& order)
{
    EquivariantComplex e;
    e.group = sys;
    int top = static_cast<int>(ground.size()) - 1;
    e.dim = top;
    e.cells.resize(z(top + 1));
    std::vector<std::map<std::vector<int>, int>> index(z(top + 1));
    Element id = sys->identity();
    for (int k = 0; k <= top; ++k) {
        for (auto& I : subsets_of_size(ground, top - k)) {
            EquivariantCell cell;
            cell.label = I;
            cell.name = set_str(I);
            for (int i : I)
                cell.stabilizer.push_back(image(i));
            cell.stabilizer_order = order(I);
            if (k > 0) {
                std::vector<int> comp;
                for (int j : ground)
                    if (!std::binary_search(I.begin(), I.end(), j))
                        comp.push_back(j);
                for (size_t p = 0; p < comp.size(); ++p) {
                    std::vector<int> J = I;
                    J.insert(std::upper_bound(J.begin(), J.end(), comp[p]), comp[p]);
                    cell.faces.push_back({index[z(k - 1)].at(J), p % 2 ? -1 : 1, id});
                }
            }
            index[z(k)][I] = static_cast<int>(e.cells[z(k)].size());
            e.cells[z(k)].push_back(std::move(cell));
        }
    }
    return e;
}

}  // namespace

int ChainComplex::rank(int k) const
{
    if (k < 0 || k > dim)
        return 0;
    int r = 0;
    for (auto& c : cells[z(k)])
        r += c.cosets.size();
    return r;
}

std::vector<long long> ChainComplex::f_vector() const
{
    std::vector<long long> f;
    for (int k = 0; k <= dim; ++k)
        f.push_back(rank(k));
    return f;
}

std::pair<int, int> ChainComplex::locate(int k, int idx) const
{
    const auto& cs = cells[z(k)];
    for (size_t b = 0; b < cs.size(); ++b)
        if (idx >= cs[b].offset && idx < cs[b].offset + cs[b].cosets.size())
            return {static_cast<int>(b), idx - cs[b].offset};
    throw Error(ErrorCode::INVALID_ARGUMENT, "basis index out of range");
}

int ChainComplex::basis_index(int k, int cell, int group_idx) const
{
    const Cell& c = cells[z(k)][z(cell)];
    return c.offset + c.cosets.coset_of[z(group_idx)];
}

std::string ChainComplex::basis_label(int k, int idx) const
{
    auto [b, q] = locate(k, idx);
    const Cell& c = cells[z(k)][z(b)];
    Word w = group->group().word(c.cosets.reps[z(q)]);
    return c.name + ":" + (w.empty() ? std::string("e") : word_str(w));
}

ChainComplex deflate(const EquivariantComplex& e)
{
    const CoxeterSystem& sys = *e.group;
    const GroupTable& g = sys.group();
    ChainComplex c;
    c.group = e.group;
    c.dim = e.dim;
    c.cells.resize(e.cells.size());
    for (size_t k = 0; k < e.cells.size(); ++k) {
        int offset = 0;
        for (auto& ec : e.cells[k]) {
            Cell cell;
            cell.label = ec.label;
            cell.name = ec.name;
            Subgroup s = subgroup_closure(sys, ec.stabilizer);
            if (ec.stabilizer_order > 0 && s.order() != ec.stabilizer_order)
                throw Error(ErrorCode::INCONSISTENT, "stabilizer of " + ec.name + " has image of order " +
                                                         std::to_string(s.order()) + ", expected " +
                                                         std::to_string(ec.stabilizer_order));
            cell.cosets = coset_space(sys, s, Side::Left);
            std::vector<int> stab_idx;
            for (auto& x : ec.stabilizer)
                stab_idx.push_back(g.index_of(x.perm));
            for (auto& f : ec.faces) {
                if (k == 0 || f.cell < 0 || f.cell >= static_cast<int>(c.cells[k - 1].size()))
                    throw Error(ErrorCode::INVALID_ARGUMENT, "face refers to a missing cell");
                int gi = g.index_of(f.g.perm);
                const Subgroup& target = c.cells[k - 1][z(f.cell)].cosets.subgroup;
                for (int h : stab_idx)
                    if (!target.contains(g.mul(g.inv(gi), g.mul(h, gi))))
                        throw Error(ErrorCode::INCONSISTENT, "face map of " + ec.name + " is not equivariant");
                cell.faces.push_back({f.cell, f.sign, gi});
            }
            cell.offset = offset;
            offset += cell.cosets.size();
            c.cells[k].push_back(std::move(cell));
        }
    }
    c.boundary.resize(c.cells.size());
    c.boundary[0] = SparseIntMatrix(0, c.rank(0));
    for (int k = 1; k <= c.dim; ++k) {
        std::vector<Triplet> t;
        for (auto& cell : c.cells[z(k)])
            for (int q = 0; q < cell.cosets.size(); ++q) {
                int w = cell.cosets.reps[z(q)];
                for (auto& f : cell.faces) {
                    const Cell& target = c.cells[z(k - 1)][z(f.cell)];
                    int row = target.offset + target.cosets.coset_of[z(g.mul(w, f.g))];
                    t.emplace_back(row, cell.offset + q, Integer(f.sign));
                }
            }
        c.boundary[z(k)] = SparseIntMatrix::from_triplets(c.rank(k - 1), c.rank(k), std::move(t));
    }
    return c;
}

EquivariantComplex alcove_complex(const HatGroup& h)
{
    std::vector<int> ground;
    for (int i = 0; i < h.rank(); ++i)
        ground.push_back(i);
    const System& sys = h.base();
    return parabolic_complex(
        sys, ground, [&](int i) { return i == 0 ? h.r() : sys->generator(i); },
        [&](const std::vector<int>& I) { return I.empty() ? 1LL : finite_order(h.matrix().submatrix(I)); });
}

ChainComplex torus_complex(const HatGroup& h) { return deflate(alcove_complex(h)); }

EquivariantComplex coxeter_complex(System sys)
{
    std::vector<int> ground;
    for (int i = 1; i <= sys->rank(); ++i)
        ground.push_back(i);
    return parabolic_complex(
        sys, ground, [&](int i) { return sys->generator(i); },
        [&](const std::vector<int>& I) {
            std::vector<int> idx;
            for (int i : I)
                idx.push_back(i - 1);
            return I.empty() ? 1LL : finite_order(sys->matrix().submatrix(idx));
        });
}

bool boundary_squared_zero(const ChainComplex& c)
{
    for (int k = 2; k <= c.dim; ++k)
        if (!(c.boundary[z(k - 1)] * c.boundary[z(k)]).is_zero())
            return false;
    return true;
}

std::vector<int> act_on_basis(const ChainComplex& c, int k, int group_idx)
{
    const GroupTable& g = c.group->group();
    std::vector<int> p(z(c.rank(k)));
    for (auto& cell : c.cells[z(k)])
        for (int q = 0; q < cell.cosets.size(); ++q)
            p[z(cell.offset + q)] = cell.offset + cell.cosets.coset_of[z(g.mul(group_idx, cell.cosets.reps[z(q)]))];
    return p;
}

bool is_equivariant(const ChainComplex& c)
{
    const GroupTable& g = c.group->group();
    for (int s = 1; s <= c.group->rank(); ++s) {
        int gi = g.lmul(s, 0);
        for (int k = 1; k <= c.dim; ++k) {
            std::vector<int> src = act_on_basis(c, k, gi), dst = act_on_basis(c, k - 1, gi);
            const SparseIntMatrix& d = c.boundary[z(k)];
            for (int j = 0; j < d.cols(); ++j) {
                std::vector<std::pair<int, Integer>> moved;
                for (auto& [r, v] : d.column(j))
                    moved.emplace_back(dst[z(r)], v);
                std::sort(moved.begin(), moved.end());
                if (moved != d.column(src[z(j)]))
                    return false;
            }
        }
    }
    return true;
}

std::vector<std::vector<GroupRingElem>> group_ring_boundary(const ChainComplex& c, int k)
{
    if (k < 1 || k > c.dim)
        throw Error(ErrorCode::INVALID_ARGUMENT, "degree out of range");
    std::vector<std::vector<GroupRingElem>> m(c.cells[z(k)].size(),
                                              std::vector<GroupRingElem>(c.cells[z(k - 1)].size()));
    for (size_t b = 0; b < c.cells[z(k)].size(); ++b)
        for (auto& f : c.cells[z(k)][b].faces) {
            auto& e = m[b][z(f.cell)];
            e[f.g] += f.sign;
            if (e[f.g] == 0)
                e.erase(f.g);
        }
    return m;
}

}  // namespace cxt

#include "coxtorus/fungroup.hpp"

#include "coxtorus/error.hpp"
#include "coxtorus/homology.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace cxt {

namespace {

size_t z(int i) { return static_cast<size_t>(i); }

int letter_key(int x) { return 2 * (std::abs(x) - 1) + (x < 0 ? 1 : 0); }

bool shortlex_less(const Relator& a, const Relator& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return letter_key(a[i]) < letter_key(b[i]);
    return false;
}

struct ShortLexLess {
    bool operator()(const Relator& a, const Relator& b) const { return shortlex_less(a, b); }
};

Relator inverse_word(const Relator& r)
{
    Relator out;
    for (auto it = r.rbegin(); it != r.rend(); ++it)
        out.push_back(-*it);
    return out;
}

Relator free_reduce(const Relator& r)
{
    Relator out;
    for (int x : r) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

Relator cyclic_reduce(Relator r)
{
    r = free_reduce(r);
    size_t a = 0, b = r.size();
    while (b - a >= 2 && r[a] == -r[b - 1]) {
        ++a;
        --b;
    }
    return Relator(r.begin() + static_cast<long>(a), r.begin() + static_cast<long>(b));
}

bool negative_column(const FMatrix& m, int col)
{
    for (auto& row : m)
        if (!row[z(col)].is_zero())
            return row[z(col)].sign() < 0;
    throw Error(ErrorCode::INCONSISTENT, "zero column in a reflection representation");
}

// m <- m * s_d, using s_d(a_j) = a_j - cartan(d, j) a_d
void right_multiply(FMatrix& m, const FMatrix& cartan, int d)
{
    for (auto& row : m) {
        FieldElem pivot = row[z(d)];
        if (pivot.is_zero())
            continue;
        for (size_t j = 0; j < row.size(); ++j)
            if (!cartan[z(d)][j].is_zero())
                row[j] -= pivot * cartan[z(d)][j];
    }
}

// minimal representative of x W_J
void minimize(FMatrix& x, const FMatrix& cartan, const std::vector<int>& J)
{
    for (bool moved = true; moved;) {
        moved = false;
        for (int s : J)
            if (negative_column(x, s)) {
                right_multiply(x, cartan, s);
                moved = true;
            }
    }
}

// group index of x in W = <s_1..s_n>, or -1 if x is not in W
int finite_index(FMatrix x, const HatGroup& h)
{
    const GroupTable& g = h.base()->group();
    int n = h.base()->rank(), idx = 0;
    for (bool moved = true; moved;) {
        moved = false;
        for (int s = 1; s <= n; ++s)
            if (negative_column(x, s)) {
                right_multiply(x, h.cartan(), s);
                idx = g.lmul(s, idx);
                moved = true;
                break;
            }
    }
    return x == identity_matrix(h.rank()) ? idx : -1;
}

std::string label_of(const Word& w) { return "q_" + (w.empty() ? std::string("e") : word_str(w)); }

Presentation lattice_presentation(const HatGroup& h)
{
    Presentation p;
    int n = h.base()->rank();
    for (int i = 1; i <= n; ++i)
        p.generators.push_back("t_" + std::to_string(i));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            p.relators.push_back(canonical_relator({i, j, -i, -j}));
            p.kinds.push_back(RelatorKind::COMMUTATOR);
        }
    return p;
}

// relators sorted and deduplicated in canonical form, keeping the first kind seen
void normalise(Presentation& p)
{
    std::map<Relator, RelatorKind, ShortLexLess> seen;
    for (size_t i = 0; i < p.relators.size(); ++i) {
        Relator c = canonical_relator(p.relators[i]);
        if (!c.empty())
            seen.emplace(c, p.kinds[i]);
    }
    p.relators.clear();
    p.kinds.clear();
    for (auto& [r, k] : seen) {
        p.relators.push_back(r);
        p.kinds.push_back(k);
    }
}

}  // namespace

std::string to_string(RelatorKind k)
{
    switch (k) {
    case RelatorKind::SIDE:
        return "SIDE";
    case RelatorKind::CYCLE:
        return "CYCLE";
    case RelatorKind::COMMUTATOR:
        return "COMMUTATOR";
    }
    return "?";
}

size_t Presentation::total_length() const
{
    size_t n = 0;
    for (auto& r : relators)
        n += r.size();
    return n;
}

std::string Presentation::relator_str(const Relator& r) const
{
    std::string s;
    for (int x : r) {
        if (!s.empty())
            s += ' ';
        s += generators[z(std::abs(x) - 1)];
        if (x < 0)
            s += "^-1";
    }
    return s.empty() ? "1" : s;
}

Relator canonical_relator(const Relator& r)
{
    Relator c = cyclic_reduce(r);
    if (c.empty())
        return c;
    Relator best = c;
    for (const Relator& base : {c, inverse_word(c)})
        for (size_t k = 0; k < base.size(); ++k) {
            Relator rot(base.begin() + static_cast<long>(k), base.end());
            rot.insert(rot.end(), base.begin(), base.begin() + static_cast<long>(k));
            if (shortlex_less(rot, best))
                best = rot;
        }
    return best;
}

Subgroup centralizer_of_q0(const HatGroup& h)
{
    std::vector<int> letters;
    for (int s = 1; s < h.rank(); ++s)
        if (h.matrix()(0, s) == 2)
            letters.push_back(s);
    return parabolic_subgroup(*h.base(), letters);
}

Presentation pi1_presentation(const HatGroup& h)
{
    if (h.diagram_class() == DiagramClass::AFFINE)
        return lattice_presentation(h);
    if (h.diagram_class() != DiagramClass::COMPACT_HYPERBOLIC)
        throw Error(ErrorCode::UNSUPPORTED_EXTENSION, "the extension is neither affine nor compact hyperbolic");
    const CoxeterSystem& sys = *h.base();
    const GroupTable& g = sys.group();
    int n = sys.rank();

    std::vector<int> c_letters;
    for (int s = 1; s <= n; ++s)
        if (h.matrix()(0, s) == 2)
            c_letters.push_back(s);
    CosetSpace U = min_coset_reps(sys, c_letters, Side::Left);
    int m = U.size();

    Presentation p;
    HatElement q0 = h.q0();
    FMatrix q0_inv = h.inverse(q0).mat;
    for (int i = 0; i < m; ++i) {
        Element u = g.element(U.reps[z(i)]);
        FMatrix a = h.section(u).mat, a_inv = h.section(g.element(g.inv(U.reps[z(i)]))).mat;
        p.generators.push_back(label_of(u.word));
        p.images.push_back(mat_mul(mat_mul(a, q0.mat), a_inv));
        p.inverse_images.push_back(mat_mul(mat_mul(a, q0_inv), a_inv));
    }

    // q_u^-1 = q_{u r}
    int r_idx = g.index_of(h.r().perm);
    std::vector<int> partner(z(m));
    for (int i = 0; i < m; ++i) {
        partner[z(i)] = U.coset_of[z(g.mul(U.reps[z(i)], r_idx))];
        if (partner[z(i)] == i)
            throw Error(ErrorCode::INCONSISTENT, "a side is paired with itself");
    }
    for (int i = 0; i < m; ++i)
        if (i < partner[z(i)]) {
            p.relators.push_back({i + 1, partner[z(i)] + 1});
            p.kinds.push_back(RelatorKind::SIDE);
        }

    // ridge cycles through the ridges w F_{0,j} of the side of q_0, w in C_W(q_0)
    Subgroup c = parabolic_subgroup(sys, c_letters);
    std::set<Relator, ShortLexLess> primitive;
    for (int j = 1; j <= n; ++j) {
        if (h.matrix()(0, j) == 2 || h.matrix()(0, j) == kInfinity)
            continue;
        int sj = g.lmul(j, 0);
        for (int w0 : c.elements) {
            int w = w0, side = 0;
            FMatrix x = h.section(g.element(w)).mat;
            Relator cycle;
            for (int step = 0;; ++step) {
                if (step > 4 * g.size())
                    throw Error(ErrorCode::INCONSISTENT, "ridge cycle does not close");
                cycle.push_back(side + 1);
                x = mat_mul(p.inverse_images[z(side)], x);
                minimize(x, h.cartan(), {0, j});
                w = finite_index(x, h);
                if (w < 0)
                    throw Error(ErrorCode::INCONSISTENT, "side pairing leaves the boundary of the star");
                if (w == w0 || w == g.mul(w0, sj))
                    break;
                int a = U.coset_of[z(w)], b = U.coset_of[z(g.mul(w, sj))];
                int arrived = partner[z(side)];
                if (a != arrived && b != arrived)
                    throw Error(ErrorCode::INCONSISTENT, "ridge is not on the paired side");
                side = a == arrived ? b : a;
            }
            primitive.insert(canonical_relator(cycle));
        }
    }
    std::set<Relator, ShortLexLess> cycles;
    for (int v = 0; v < g.size(); ++v)
        for (auto& r : primitive) {
            Relator moved;
            for (int x : r) {
                int i = std::abs(x) - 1;
                int k = U.coset_of[z(g.mul(v, U.reps[z(i)]))] + 1;
                moved.push_back(x > 0 ? k : -k);
            }
            cycles.insert(canonical_relator(moved));
        }
    for (auto& r : cycles) {
        p.relators.push_back(r);
        p.kinds.push_back(RelatorKind::CYCLE);
    }
    return p;
}

Presentation pair_sides(const Presentation& p)
{
    int m = p.num_generators();
    std::vector<int> subst(z(m));  // old generator -> signed new letter
    for (int i = 0; i < m; ++i)
        subst[z(i)] = i + 1;
    for (size_t k = 0; k < p.relators.size(); ++k) {
        const Relator& r = p.relators[k];
        if (p.kinds[k] != RelatorKind::SIDE)
            continue;
        if (r.size() != 2 || r[0] < 0 || r[1] < 0)
            throw Error(ErrorCode::INVALID_ARGUMENT, "side relators must be q_u q_v");
        int a = std::min(r[0], r[1]), b = std::max(r[0], r[1]);
        subst[z(b - 1)] = -a;
    }
    Presentation out;
    std::vector<int> renumber(z(m), 0);
    for (int i = 0; i < m; ++i)
        if (subst[z(i)] == i + 1) {
            out.generators.push_back(p.generators[z(i)]);
            if (!p.images.empty()) {
                out.images.push_back(p.images[z(i)]);
                out.inverse_images.push_back(p.inverse_images[z(i)]);
            }
            renumber[z(i)] = out.num_generators();
        }
    for (size_t k = 0; k < p.relators.size(); ++k) {
        if (p.kinds[k] == RelatorKind::SIDE)
            continue;
        Relator r;
        for (int x : p.relators[k]) {
            int s = subst[z(std::abs(x) - 1)];
            int y = renumber[z(std::abs(s) - 1)];
            r.push_back((x > 0) == (s > 0) ? y : -y);
        }
        out.relators.push_back(r);
        out.kinds.push_back(p.kinds[k]);
    }
    out.trail = p.trail;
    normalise(out);
    return out;
}

Presentation eliminate_generators(const Presentation& p)
{
    Presentation cur = p;
    normalise(cur);
    std::vector<bool> alive(z(cur.num_generators()), true);

    auto substitute = [](const Relator& r, int g, const Relator& value) {
        Relator out;
        for (int x : r) {
            if (std::abs(x) != g) {
                out.push_back(x);
            } else if (x > 0) {
                out.insert(out.end(), value.begin(), value.end());
            } else {
                Relator inv = inverse_word(value);
                out.insert(out.end(), inv.begin(), inv.end());
            }
        }
        return canonical_relator(out);
    };

    for (;;) {
        // candidate: generator g occurring once in relator k
        long long best_len = -1;
        int best_g = 0;
        size_t best_k = 0;
        Relator best_value;
        for (size_t k = 0; k < cur.relators.size(); ++k) {
            const Relator& r = cur.relators[k];
            std::map<int, int> count;
            for (int x : r)
                ++count[std::abs(x)];
            for (size_t pos = 0; pos < r.size(); ++pos) {
                int g = std::abs(r[pos]);
                if (count[g] != 1)
                    continue;
                // r rotated to x^e C, so x^e = C^-1
                Relator rest(r.begin() + static_cast<long>(pos) + 1, r.end());
                rest.insert(rest.end(), r.begin(), r.begin() + static_cast<long>(pos));
                Relator value = r[pos] > 0 ? inverse_word(rest) : rest;
                long long len = 0;
                for (size_t other = 0; other < cur.relators.size(); ++other) {
                    if (other == k)
                        continue;
                    const Relator& o = cur.relators[other];
                    bool has = std::any_of(o.begin(), o.end(), [&](int x) { return std::abs(x) == g; });
                    len += static_cast<long long>(has ? substitute(o, g, value).size() : o.size());
                }
                if (best_len < 0 || len < best_len || (len == best_len && g < best_g)) {
                    best_len = len;
                    best_g = g;
                    best_k = k;
                    best_value = value;
                }
            }
        }
        if (best_len < 0)
            break;
        cur.trail.push_back(cur.generators[z(best_g - 1)] + " = " + cur.relator_str(best_value));
        alive[z(best_g - 1)] = false;
        std::vector<Relator> rels;
        std::vector<RelatorKind> kinds;
        for (size_t k = 0; k < cur.relators.size(); ++k)
            if (k != best_k) {
                rels.push_back(substitute(cur.relators[k], best_g, best_value));
                kinds.push_back(cur.kinds[k]);
            }
        cur.relators = rels;
        cur.kinds = kinds;
        normalise(cur);
    }

    // renumber the surviving generators
    Presentation out;
    out.trail = cur.trail;
    std::vector<int> renumber(alive.size(), 0);
    for (size_t i = 0; i < alive.size(); ++i)
        if (alive[i]) {
            out.generators.push_back(cur.generators[i]);
            if (!cur.images.empty()) {
                out.images.push_back(cur.images[i]);
                out.inverse_images.push_back(cur.inverse_images[i]);
            }
            renumber[i] = out.num_generators();
        }
    for (size_t k = 0; k < cur.relators.size(); ++k) {
        Relator r;
        for (int x : cur.relators[k]) {
            int y = renumber[z(std::abs(x) - 1)];
            if (y == 0)
                throw Error(ErrorCode::INCONSISTENT, "eliminated generator left in a relator");
            r.push_back(x > 0 ? y : -y);
        }
        out.relators.push_back(r);
        out.kinds.push_back(cur.kinds[k]);
    }
    normalise(out);
    return out;
}

bool verify_relators(const Presentation& p, int threads)
{
    if (p.images.size() != p.generators.size())
        throw Error(ErrorCode::NOT_APPLICABLE, "presentation carries no images in hat W");
    if (p.images.empty())
        return true;
    FMatrix one = identity_matrix(static_cast<int>(p.images[0].size()));
    std::atomic<bool> ok{true};
    std::vector<std::function<void()>> tasks;
    for (auto& r : p.relators)
        tasks.push_back([&, rel = &r] {
            FMatrix m = one;
            for (int x : *rel)
                m = mat_mul(m, x > 0 ? p.images[z(x - 1)] : p.inverse_images[z(-x - 1)]);
            if (m != one)
                ok = false;
        });
    detail::run_parallel(tasks, detail::thread_count(threads));
    return ok;
}

SparseIntMatrix exponent_matrix(const Presentation& p)
{
    std::vector<Triplet> t;
    for (size_t k = 0; k < p.relators.size(); ++k)
        for (int x : p.relators[k])
            t.emplace_back(static_cast<int>(k), std::abs(x) - 1, Integer(x > 0 ? 1 : -1));
    return SparseIntMatrix::from_triplets(static_cast<int>(p.relators.size()), p.num_generators(), t);
}

Abelianization abelianization(const Presentation& p)
{
    Abelianization a;
    a.free_rank = p.num_generators();
    if (p.relators.empty())
        return a;
    for (const Integer& d : smith_normal_form(exponent_matrix(p))) {
        if (d == 0)
            continue;
        --a.free_rank;
        if (abs(d) > 1)
            a.torsion.push_back(abs(d));
    }
    return a;
}

std::string Abelianization::str() const
{
    std::vector<std::string> parts;
    if (free_rank == 1)
        parts.push_back("Z");
    else if (free_rank > 1)
        parts.push_back("Z^" + std::to_string(free_rank));
    for (auto& t : torsion)
        parts.push_back("Z/" + t.get_str());
    if (parts.empty())
        return "0";
    std::string s = parts[0];
    for (size_t i = 1; i < parts.size(); ++i)
        s += " + " + parts[i];
    return s;
}

std::string to_text(const Presentation& p)
{
    std::ostringstream out;
    for (int i = 0; i < p.num_generators(); ++i)
        out << (i ? " " : "") << p.generators[z(i)];
    out << "\n";
    for (auto& r : p.relators) {
        for (size_t i = 0; i < r.size(); ++i)
            out << (i ? " " : "") << r[i];
        out << "\n";
    }
    return out.str();
}

}  // namespace cxt

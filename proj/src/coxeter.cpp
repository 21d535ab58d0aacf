#include "coxtorus/coxeter.hpp"

#include "coxtorus/error.hpp"

#include <algorithm>
#include <numeric>

namespace cxt {

namespace {

std::string root_key(const std::vector<FieldElem>& v)
{
    std::string k;
    for (const auto& e : v) {
        for (const auto& c : e.coeffs())
            k += c.get_str() + ",";
        k += "|";
    }
    return k;
}

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        // keep the smaller index as root so roots are the ShortLex-least members
        if (a < b)
            parent[static_cast<size_t>(b)] = a;
        else
            parent[static_cast<size_t>(a)] = b;
    }
};

}  // namespace

CoxeterSystem::~CoxeterSystem() = default;

std::shared_ptr<const CoxeterSystem> CoxeterSystem::create(const TypeSpec& t)
{
    std::shared_ptr<CoxeterSystem> s(new CoxeterSystem());
    s->build(coxeter_matrix(t), t);
    return s;
}

std::shared_ptr<const CoxeterSystem> CoxeterSystem::create(const CoxeterMatrix& m)
{
    std::shared_ptr<CoxeterSystem> s(new CoxeterSystem());
    s->build(m, std::nullopt);
    return s;
}

void CoxeterSystem::build(const CoxeterMatrix& m, std::optional<TypeSpec> t)
{
    matrix_ = m;
    type_ = t;
    order_ = finite_order(m);  // throws FINITE_TYPE_REQUIRED
    int n = m.size();
    cartan_.assign(static_cast<size_t>(n), std::vector<FieldElem>(static_cast<size_t>(n)));
    if (crystallographic()) {
        auto a = cartan_matrix(*t);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                cartan_[static_cast<size_t>(i)][static_cast<size_t>(j)] = FieldElem(a[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    } else {
        field_ = field_for_labels(m.labels());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                cartan_[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    i == j ? FieldElem(2) : -FieldElem::two_cos_pi_over(field_, m(i, j));
    }

    auto apply = [&](int i, const std::vector<FieldElem>& b) {
        FieldElem c;
        for (int j = 0; j < n; ++j)
            if (!b[static_cast<size_t>(j)].is_zero())
                c += cartan_[static_cast<size_t>(i)][static_cast<size_t>(j)] * b[static_cast<size_t>(j)];
        std::vector<FieldElem> r = b;
        r[static_cast<size_t>(i)] -= c;
        return r;
    };

    // positive roots by breadth-first search from the simple roots
    std::vector<std::pair<int, int>> parent;  // (letter, source root)
    for (int i = 0; i < n; ++i) {
        std::vector<FieldElem> v(static_cast<size_t>(n));
        v[static_cast<size_t>(i)] = FieldElem(1);
        root_lookup_[root_key(v)] = i;
        roots_.push_back(v);
        parent.emplace_back(-1, -1);
    }
    for (size_t k = 0; k < roots_.size(); ++k) {
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(k) == i)
                continue;
            auto r = apply(i, roots_[k]);
            auto key = root_key(r);
            if (root_lookup_.count(key))
                continue;
            for (auto& c : r)
                if (c.sign() < 0)
                    throw Error(ErrorCode::INCONSISTENT, "root with mixed signs");
            root_lookup_[key] = static_cast<int>(roots_.size());
            roots_.push_back(r);
            parent.emplace_back(i + 1, static_cast<int>(k));
            if (roots_.size() > 20000)
                throw Error(ErrorCode::FINITE_TYPE_REQUIRED, "root system is not finite");
        }
    }
    npos_ = static_cast<int>(roots_.size());
    for (int k = 0; k < npos_; ++k) {
        std::vector<FieldElem> v = roots_[static_cast<size_t>(k)];
        for (auto& c : v)
            c = -c;
        root_lookup_[root_key(v)] = npos_ + k;
        roots_.push_back(v);
    }

    gens_.clear();
    for (int i = 0; i < n; ++i) {
        Perm p(static_cast<size_t>(2 * npos_));
        for (int k = 0; k < 2 * npos_; ++k) {
            int img = root_index(apply(i, roots_[static_cast<size_t>(k)]));
            if (img < 0)
                throw Error(ErrorCode::INCONSISTENT, "root set not closed under reflections");
            p[static_cast<size_t>(k)] = static_cast<uint16_t>(img);
        }
        gens_.push_back(p);
    }

    refl_.assign(static_cast<size_t>(npos_), Perm());
    for (int k = 0; k < npos_; ++k) {
        auto [letter, src] = parent[static_cast<size_t>(k)];
        if (letter < 0)
            refl_[static_cast<size_t>(k)] = gens_[static_cast<size_t>(k)];
        else {
            const Perm& s = generator_perm(letter);
            refl_[static_cast<size_t>(k)] = compose(s, compose(refl_[static_cast<size_t>(src)], s));
        }
    }
}

int CoxeterSystem::root_index(const std::vector<FieldElem>& v) const
{
    auto it = root_lookup_.find(root_key(v));
    return it == root_lookup_.end() ? -1 : it->second;
}

int CoxeterSystem::highest_root() const
{
    int best = 0;
    FieldElem bh;
    for (int k = 0; k < npos_; ++k) {
        FieldElem h;
        for (auto& c : roots_[static_cast<size_t>(k)])
            h += c;
        if (k == 0 || (h - bh).sign() > 0) {
            best = k;
            bh = h;
        }
    }
    return best;
}

Perm CoxeterSystem::compose(const Perm& a, const Perm& b) const
{
    Perm r(b.size());
    for (size_t i = 0; i < b.size(); ++i)
        r[i] = a[b[i]];
    return r;
}

int CoxeterSystem::length(const Perm& p) const
{
    int l = 0;
    for (int k = 0; k < npos_; ++k)
        l += p[static_cast<size_t>(k)] >= npos_;
    return l;
}

Word CoxeterSystem::reduced_word(Perm p) const
{
    Word w;
    int n = rank();
    Perm inv(p.size());
    while (true) {
        for (size_t i = 0; i < p.size(); ++i)
            inv[p[i]] = static_cast<uint16_t>(i);
        int s = -1;
        for (int i = 0; i < n; ++i)
            if (inv[static_cast<size_t>(i)] >= npos_) {
                s = i;
                break;
            }
        if (s < 0)
            break;
        w.push_back(s + 1);
        p = compose(gens_[static_cast<size_t>(s)], p);
    }
    return w;
}

Element CoxeterSystem::identity() const
{
    Perm p(static_cast<size_t>(2 * npos_));
    std::iota(p.begin(), p.end(), 0);
    return {p, {}};
}

Element CoxeterSystem::generator(int letter) const
{
    if (letter < 1 || letter > rank())
        throw Error(ErrorCode::INVALID_ARGUMENT, "generator index out of range");
    return {gens_[static_cast<size_t>(letter - 1)], {letter}};
}

Element CoxeterSystem::element_from_word(const Word& w) const
{
    Element e = identity();
    for (int letter : w) {
        if (letter < 1 || letter > rank())
            throw Error(ErrorCode::INVALID_ARGUMENT, "generator index out of range");
        e.perm = compose(e.perm, gens_[static_cast<size_t>(letter - 1)]);
    }
    e.word = reduced_word(e.perm);
    return e;
}

Element CoxeterSystem::from_perm(Perm p) const
{
    Word w = reduced_word(p);
    return {std::move(p), std::move(w)};
}

Element CoxeterSystem::multiply(const Element& a, const Element& b) const { return from_perm(compose(a.perm, b.perm)); }

Element CoxeterSystem::inverse(const Element& a) const
{
    Perm inv(a.perm.size());
    for (size_t i = 0; i < a.perm.size(); ++i)
        inv[a.perm[i]] = static_cast<uint16_t>(i);
    return from_perm(inv);
}

bool CoxeterSystem::is_right_descent(const Element& a, int letter) const
{
    return a.perm[static_cast<size_t>(letter - 1)] >= npos_;
}

bool CoxeterSystem::is_left_descent(const Element& a, int letter) const
{
    for (size_t i = 0; i < a.perm.size(); ++i)
        if (a.perm[i] == letter - 1)
            return static_cast<int>(i) >= npos_;
    return false;
}

int CoxeterSystem::element_order(const Element& a) const
{
    Perm id = identity().perm;
    Perm p = a.perm;
    int k = 1;
    while (p != id) {
        p = compose(p, a.perm);
        ++k;
    }
    return k;
}

int CoxeterSystem::reflection_root(const Element& a) const
{
    for (int k = 0; k < npos_; ++k)
        if (refl_[static_cast<size_t>(k)] == a.perm)
            return k;
    return -1;
}

const GroupTable& CoxeterSystem::group() const
{
    std::call_once(group_once_, [this]() { group_ = std::make_unique<GroupTable>(*this); });
    return *group_;
}

// ---------------------------------------------------------------------------

GroupTable::GroupTable(const CoxeterSystem& sys) : sys_(&sys), width_(static_cast<size_t>(sys.num_roots()))
{
    if (sys.order() > 3000000)
        throw Error(ErrorCode::INVALID_ARGUMENT, "group too large to enumerate");
    int n = sys.rank();
    int npos = sys.num_positive_roots();
    size_t order = static_cast<size_t>(sys.order());
    perms_.reserve(order * width_);
    lengths_.reserve(order);
    index_.reserve(order);

    auto push = [&](const Perm& p, int len) {
        index_.emplace(key(p.data()), static_cast<int>(lengths_.size()));
        perms_.insert(perms_.end(), p.begin(), p.end());
        lengths_.push_back(len);
    };
    Perm id = sys.identity().perm;
    push(id, 0);
    // ShortLex: sv is new at length k+1 with normal form s.nf(v) iff s is its first left descent
    size_t begin = 0, end = 1;
    Perm buf(width_), inv(width_);
    for (int len = 0; begin < end; ++len) {
        for (int s = 1; s <= n; ++s) {
            const Perm& g = sys.generator_perm(s);
            for (size_t v = begin; v < end; ++v) {
                const uint16_t* pv = perm(static_cast<int>(v));
                for (size_t i = 0; i < width_; ++i)
                    buf[i] = g[pv[i]];
                if (sys.length(buf) != len + 1)
                    continue;
                for (size_t i = 0; i < width_; ++i)
                    inv[buf[i]] = static_cast<uint16_t>(i);
                int first = 0;
                for (int t = 0; t < n; ++t)
                    if (inv[static_cast<size_t>(t)] >= npos) {
                        first = t + 1;
                        break;
                    }
                if (first == s)
                    push(buf, len + 1);
            }
        }
        begin = end;
        end = lengths_.size();
    }
    if (lengths_.size() != order)
        throw Error(ErrorCode::INCONSISTENT, "group enumeration size mismatch");

    lmul_.assign(static_cast<size_t>(n), std::vector<int>(order));
    rmul_.assign(static_cast<size_t>(n), std::vector<int>(order));
    inv_.assign(order, 0);
    for (size_t v = 0; v < order; ++v) {
        const uint16_t* pv = perm(static_cast<int>(v));
        for (int s = 1; s <= n; ++s) {
            const Perm& g = sys.generator_perm(s);
            for (size_t i = 0; i < width_; ++i)
                buf[i] = g[pv[i]];
            lmul_[static_cast<size_t>(s - 1)][v] = index_of(buf);
            for (size_t i = 0; i < width_; ++i)
                buf[i] = pv[g[i]];
            rmul_[static_cast<size_t>(s - 1)][v] = index_of(buf);
        }
        for (size_t i = 0; i < width_; ++i)
            buf[pv[i]] = static_cast<uint16_t>(i);
        inv_[v] = index_of(buf);
    }
}

std::string GroupTable::key(const uint16_t* p) const
{
    // an element is determined by the images of the simple roots
    size_t n = static_cast<size_t>(sys_->rank());
    return std::string(reinterpret_cast<const char*>(p), n * sizeof(uint16_t));
}

int GroupTable::index_of(const Perm& p) const
{
    auto it = index_.find(key(p.data()));
    return it == index_.end() ? -1 : it->second;
}

int GroupTable::mul(int a, int b) const
{
    const uint16_t* pa = perm(a);
    const uint16_t* pb = perm(b);
    size_t n = static_cast<size_t>(sys_->rank());
    std::string k(n * sizeof(uint16_t), '\0');
    auto* out = reinterpret_cast<uint16_t*>(k.data());
    for (size_t i = 0; i < n; ++i)
        out[i] = pa[pb[i]];
    return index_.at(k);
}

bool GroupTable::right_descent(int idx, int letter) const
{
    return perm(idx)[letter - 1] >= sys_->num_positive_roots();
}

Word GroupTable::word(int idx) const
{
    Word w;
    while (length(idx) > 0) {
        for (int s = 1; s <= sys_->rank(); ++s)
            if (left_descent(idx, s)) {
                w.push_back(s);
                idx = lmul(s, idx);
                break;
            }
    }
    return w;
}

Element GroupTable::element(int idx) const
{
    const uint16_t* p = perm(idx);
    return {Perm(p, p + width_), word(idx)};
}

// ---------------------------------------------------------------------------

bool Subgroup::contains(int idx) const { return std::binary_search(elements.begin(), elements.end(), idx); }

Subgroup subgroup_closure(const CoxeterSystem& sys, const std::vector<Element>& gens)
{
    const GroupTable& g = sys.group();
    Subgroup h;
    h.generators = gens;
    std::vector<int> gidx;
    for (auto& e : gens)
        gidx.push_back(g.index_of(e.perm));
    std::vector<char> seen(static_cast<size_t>(g.size()), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (size_t k = 0; k < queue.size(); ++k)
        for (int x : gidx) {
            int y = g.mul(queue[k], x);
            if (!seen[static_cast<size_t>(y)]) {
                seen[static_cast<size_t>(y)] = 1;
                queue.push_back(y);
            }
        }
    std::sort(queue.begin(), queue.end());
    h.elements = std::move(queue);
    return h;
}

Subgroup parabolic_subgroup(const CoxeterSystem& sys, const std::vector<int>& letters)
{
    const GroupTable& g = sys.group();
    Subgroup h;
    for (int s : letters)
        h.generators.push_back(sys.generator(s));
    // an element lies in W_I iff its ShortLex word uses only letters of I;
    // equivalently all its left descents stay inside I along the reduction
    std::vector<char> in(static_cast<size_t>(g.size()), 0);
    in[0] = 1;
    for (int v = 1; v < g.size(); ++v) {
        for (int s = 1; s <= sys.rank(); ++s)
            if (g.left_descent(v, s)) {
                bool allowed = std::find(letters.begin(), letters.end(), s) != letters.end();
                in[static_cast<size_t>(v)] = allowed && in[static_cast<size_t>(g.lmul(s, v))];
                break;
            }
        if (in[static_cast<size_t>(v)])
            h.elements.push_back(v);
    }
    h.elements.insert(h.elements.begin(), 0);
    return h;
}

CosetSpace coset_space(const CoxeterSystem& sys, const Subgroup& h, Side side)
{
    const GroupTable& g = sys.group();
    DisjointSets ds(g.size());
    std::vector<int> gidx;
    for (auto& e : h.generators)
        gidx.push_back(g.index_of(e.perm));
    for (int v = 0; v < g.size(); ++v)
        for (int x : gidx)
            ds.unite(v, side == Side::Left ? g.mul(v, x) : g.mul(x, v));
    CosetSpace cs;
    cs.side = side;
    cs.subgroup = h;
    cs.coset_of.assign(static_cast<size_t>(g.size()), -1);
    for (int v = 0; v < g.size(); ++v) {
        int r = ds.find(v);
        if (r == v) {
            cs.coset_of[static_cast<size_t>(v)] = static_cast<int>(cs.reps.size());
            cs.reps.push_back(v);
        } else {
            cs.coset_of[static_cast<size_t>(v)] = cs.coset_of[static_cast<size_t>(r)];
        }
    }
    if (static_cast<long long>(cs.reps.size()) * h.order() != sys.order())
        throw Error(ErrorCode::INCONSISTENT, "coset count does not match the index");
    return cs;
}

CosetSpace min_coset_reps(const CoxeterSystem& sys, const std::vector<int>& letters, Side side)
{
    const GroupTable& g = sys.group();
    CosetSpace cs;
    cs.side = side;
    cs.subgroup = parabolic_subgroup(sys, letters);
    cs.coset_of.assign(static_cast<size_t>(g.size()), -1);
    std::vector<int> pos(static_cast<size_t>(g.size()), -1);
    for (int v = 0; v < g.size(); ++v) {
        int x = v;
        bool moved = true;
        while (moved) {
            moved = false;
            for (int s : letters) {
                bool desc = side == Side::Left ? g.right_descent(x, s) : g.left_descent(x, s);
                if (desc) {
                    x = side == Side::Left ? g.rmul(s, x) : g.lmul(s, x);
                    moved = true;
                }
            }
        }
        if (x == v) {
            pos[static_cast<size_t>(v)] = static_cast<int>(cs.reps.size());
            cs.reps.push_back(v);
        }
        cs.coset_of[static_cast<size_t>(v)] = pos[static_cast<size_t>(x)];
    }
    return cs;
}

std::vector<Element> double_cosets(const CoxeterSystem& sys, const std::vector<int>& I, const std::vector<int>& J)
{
    const GroupTable& g = sys.group();
    std::vector<Element> out;
    for (int v = 0; v < g.size(); ++v) {
        bool ok = true;
        for (int s : I)
            ok = ok && !g.left_descent(v, s);
        for (int s : J)
            ok = ok && !g.right_descent(v, s);
        if (ok)
            out.push_back(g.element(v));
    }
    return out;
}

PQFactor pq_factorize(const CoxeterSystem& sys, const Element& x, const std::vector<int>& I, const std::vector<int>& J)
{
    auto in = [](const std::vector<int>& s, int v) { return std::find(s.begin(), s.end(), v) != s.end(); };
    // x = a.d.b with a in W_I, b in W_J, d minimal
    Perm d = x.perm;
    Word a, b;
    Element dd;
    bool moved = true;
    while (moved) {
        moved = false;
        dd = {d, {}};
        for (int s : I)
            if (sys.is_left_descent(dd, s)) {
                d = sys.compose(sys.generator_perm(s), d);
                a.push_back(s);
                moved = true;
                break;
            }
        if (moved)
            continue;
        for (int t : J)
            if (sys.is_right_descent(dd, t)) {
                d = sys.compose(d, sys.generator_perm(t));
                b.insert(b.begin(), t);
                moved = true;
                break;
            }
    }
    Element delem = sys.from_perm(d);
    Element dinv = sys.inverse(delem);
    // K = {s in I : d^-1 s d in J}
    std::vector<int> K;
    for (int s : I) {
        Element c = sys.multiply(dinv, sys.multiply(sys.generator(s), delem));
        if (c.word.size() == 1 && in(J, c.word[0]))
            K.push_back(s);
    }
    Perm u = sys.element_from_word(a).perm;
    moved = true;
    while (moved) {
        moved = false;
        Element ue{u, {}};
        for (int s : K)
            if (sys.is_right_descent(ue, s)) {
                u = sys.compose(u, sys.generator_perm(s));
                moved = true;
                break;
            }
    }
    Element uel = sys.from_perm(u);
    Element v = sys.multiply(sys.inverse(sys.multiply(uel, delem)), x);
    return {uel, delem, v};
}

std::vector<Element> dyer_generators(const CoxeterSystem& sys, const Subgroup& h)
{
    const GroupTable& g = sys.group();
    int npos = sys.num_positive_roots();
    std::vector<int> refl_in;
    for (int k = 0; k < npos; ++k)
        if (h.contains(g.index_of(sys.reflection_perm(k))))
            refl_in.push_back(k);
    std::vector<Element> all;
    for (int k : refl_in)
        all.push_back(sys.reflection(k));
    if (subgroup_closure(sys, all).order() != h.order())
        throw Error(ErrorCode::NOT_REFLECTION_SUBGROUP, "subgroup is not generated by its reflections");
    std::vector<Element> out;
    for (int k : refl_in) {
        const Perm& r = sys.reflection_perm(k);
        bool only_self = true;
        for (int j : refl_in)
            if (j != k && r[static_cast<size_t>(j)] >= npos) {
                only_self = false;
                break;
            }
        if (only_self)
            out.push_back(sys.reflection(k));
    }
    return out;
}

ClassData conjugacy_classes(const CoxeterSystem& sys)
{
    const GroupTable& g = sys.group();
    ClassData cd;
    cd.class_of.assign(static_cast<size_t>(g.size()), -1);
    for (int v = 0; v < g.size(); ++v) {
        if (cd.class_of[static_cast<size_t>(v)] >= 0)
            continue;
        int c = static_cast<int>(cd.classes.size());
        std::vector<int> orbit{v};
        cd.class_of[static_cast<size_t>(v)] = c;
        for (size_t k = 0; k < orbit.size(); ++k)
            for (int s = 1; s <= sys.rank(); ++s) {
                int y = g.lmul(s, g.rmul(s, orbit[k]));
                if (cd.class_of[static_cast<size_t>(y)] < 0) {
                    cd.class_of[static_cast<size_t>(y)] = c;
                    orbit.push_back(y);
                }
            }
        cd.classes.push_back({v, static_cast<long long>(orbit.size())});
    }
    return cd;
}

}  // namespace cxt

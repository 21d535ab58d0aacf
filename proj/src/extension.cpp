#include "coxtorus/extension.hpp"

#include "coxtorus/error.hpp"

#include <algorithm>
#include <map>

namespace cxt {

namespace {

size_t z(int i) { return static_cast<size_t>(i); }

Element conj(const CoxeterSystem& sys, const Element& x, const Element& y)
{
    return sys.multiply(sys.inverse(y), sys.multiply(x, y));
}

Element power(const CoxeterSystem& sys, const Element& x, int k)
{
    Element r = sys.identity();
    for (int i = 0; i < k; ++i)
        r = sys.multiply(r, x);
    return r;
}

// first nonzero coordinate decides the sign of a root
bool negative_column(const FMatrix& m, int col)
{
    for (auto& row : m)
        if (!row[z(col)].is_zero())
            return row[z(col)].sign() < 0;
    throw Error(ErrorCode::INCONSISTENT, "zero column in a reflection representation");
}

int sign_changes(const std::vector<int>& signs)
{
    int prev = 0, n = 0;
    for (int s : signs) {
        if (s == 0)
            continue;
        if (prev != 0 && s != prev)
            ++n;
        prev = s;
    }
    return n;
}

std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
{
    int n = static_cast<int>(a.size());
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a[z(p)][z(c)] == 0)
            ++p;
        if (p == n)
            throw Error(ErrorCode::INCONSISTENT, "singular system");
        std::swap(a[z(p)], a[z(c)]);
        std::swap(b[z(p)], b[z(c)]);
        for (int r = 0; r < n; ++r) {
            if (r == c || a[z(r)][z(c)] == 0)
                continue;
            Rational f = a[z(r)][z(c)] / a[z(c)][z(c)];
            for (int k = c; k < n; ++k)
                a[z(r)][z(k)] -= f * a[z(c)][z(k)];
            b[z(r)] -= f * b[z(c)];
        }
    }
    for (int c = 0; c < n; ++c)
        b[z(c)] /= a[z(c)][z(c)];
    return b;
}

// equitable refinement of an ordered colouring; colour ids stay canonical
void refine(const CoxeterMatrix& m, std::vector<int>& color)
{
    int n = m.size();
    for (;;) {
        std::vector<std::vector<int>> sig(z(n));
        for (int v = 0; v < n; ++v) {
            std::vector<int> nb;
            for (int u = 0; u < n; ++u)
                if (u != v && m(v, u) != 2)
                    nb.push_back(color[z(u)] * 1000 + m(v, u));
            std::sort(nb.begin(), nb.end());
            sig[z(v)].push_back(color[z(v)]);
            sig[z(v)].insert(sig[z(v)].end(), nb.begin(), nb.end());
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> distinct(color);
        std::sort(distinct.begin(), distinct.end());
        int before = static_cast<int>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
        for (int v = 0; v < n; ++v)
            color[z(v)] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[z(v)]) - sorted.begin());
        if (static_cast<int>(sorted.size()) == before)
            return;
    }
}

void canonical_search(const CoxeterMatrix& m, std::vector<int> color, std::vector<int>& best, bool& have)
{
    refine(m, color);
    int n = m.size();
    std::vector<int> count(z(n), 0);
    for (int c : color)
        ++count[z(c)];
    int target = -1;
    for (int c = 0; c < n; ++c)
        if (count[z(c)] > 1) {
            target = c;
            break;
        }
    if (target < 0) {
        std::vector<int> order(z(n));
        for (int v = 0; v < n; ++v)
            order[z(color[z(v)])] = v;
        std::vector<int> entries;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                entries.push_back(m(order[z(a)], order[z(b)]));
        std::vector<int> cur_best;
        if (have)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    cur_best.push_back(m(best[z(a)], best[z(b)]));
        if (!have || entries < cur_best) {
            best = order;
            have = true;
        }
        return;
    }
    for (int v = 0; v < n; ++v) {
        if (color[z(v)] != target)
            continue;
        std::vector<int> c2(z(n));
        for (int u = 0; u < n; ++u)
            c2[z(u)] = 2 * color[z(u)] + (u == v ? 0 : 1);
        canonical_search(m, c2, best, have);
    }
}

}  // namespace

FMatrix identity_matrix(int n)
{
    FMatrix m(z(n), std::vector<FieldElem>(z(n)));
    for (int i = 0; i < n; ++i)
        m[z(i)][z(i)] = FieldElem(1);
    return m;
}

FMatrix mat_mul(const FMatrix& a, const FMatrix& b)
{
    size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
    FMatrix c(n, std::vector<FieldElem>(p));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero())
                continue;
            for (size_t j = 0; j < p; ++j)
                if (!b[l][j].is_zero())
                    c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

FMatrix transpose(const FMatrix& a)
{
    if (a.empty())
        return a;
    FMatrix t(a[0].size(), std::vector<FieldElem>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j)
            t[j][i] = a[i][j];
    return t;
}

FieldElem trace(const FMatrix& a)
{
    FieldElem t;
    for (size_t i = 0; i < a.size(); ++i)
        t += a[i][i];
    return t;
}

std::vector<FieldElem> char_poly(const FMatrix& a)
{
    // Faddeev-LeVerrier
    int n = static_cast<int>(a.size());
    std::vector<FieldElem> c(z(n + 1));
    c[z(n)] = FieldElem(1);
    FMatrix mk(z(n), std::vector<FieldElem>(z(n)));
    for (int k = 1; k <= n; ++k) {
        FMatrix am = mat_mul(a, mk);
        for (int i = 0; i < n; ++i)
            am[z(i)][z(i)] += c[z(n - k + 1)];
        mk = std::move(am);
        c[z(n - k)] = -trace(mat_mul(a, mk)) * FieldElem(Rational(1, k));
    }
    return c;
}

Signature signature(const FMatrix& sym)
{
    Signature s;
    if (sym.empty())
        return s;
    auto p = char_poly(sym);
    size_t lo = 0;
    while (lo < p.size() && p[lo].is_zero())
        ++lo;
    s.zero = static_cast<int>(lo);
    // all roots are real, so Descartes' rule is exact
    std::vector<int> plus, minus;
    for (size_t k = lo; k < p.size(); ++k) {
        int sg = p[k].sign();
        plus.push_back(sg);
        minus.push_back(k % 2 ? -sg : sg);
    }
    s.pos = sign_changes(plus);
    s.neg = sign_changes(minus);
    return s;
}

std::string to_string(DiagramClass c)
{
    switch (c) {
    case DiagramClass::FINITE: return "FINITE";
    case DiagramClass::AFFINE: return "AFFINE";
    case DiagramClass::COMPACT_HYPERBOLIC: return "COMPACT_HYPERBOLIC";
    case DiagramClass::NONCOMPACT_HYPERBOLIC: return "NONCOMPACT_HYPERBOLIC";
    case DiagramClass::OTHER: return "OTHER";
    }
    return "OTHER";
}

bool is_hyperbolic(DiagramClass c)
{
    return c == DiagramClass::COMPACT_HYPERBOLIC || c == DiagramClass::NONCOMPACT_HYPERBOLIC;
}

FMatrix tits_form(const CoxeterMatrix& m)
{
    Field f = field_for_labels(m.labels());
    int n = m.size();
    FMatrix b(z(n), std::vector<FieldElem>(z(n)));
    FieldElem half(Rational(1, 2));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b[z(i)][z(j)] = i == j ? FieldElem(1) : -FieldElem::two_cos_pi_over(f, m(i, j)) * half;
    return b;
}

DiagramClass classify_diagram(const CoxeterMatrix& m)
{
    FMatrix b = tits_form(m);
    Signature s = signature(b);
    if (s.neg == 0)
        return s.zero == 0 ? DiagramClass::FINITE : DiagramClass::AFFINE;
    if (s.zero != 0 || s.neg != 1)
        return DiagramClass::OTHER;
    int n = m.size();
    bool compact = true;
    for (int v = 0; v < n; ++v) {
        std::vector<int> keep;
        for (int u = 0; u < n; ++u)
            if (u != v)
                keep.push_back(u);
        FMatrix sub(keep.size(), std::vector<FieldElem>(keep.size()));
        for (size_t i = 0; i < keep.size(); ++i)
            for (size_t j = 0; j < keep.size(); ++j)
                sub[i][j] = b[z(keep[i])][z(keep[j])];
        Signature t = signature(sub);
        if (t.neg > 0)
            return DiagramClass::OTHER;
        if (t.zero > 0)
            compact = false;
    }
    return compact ? DiagramClass::COMPACT_HYPERBOLIC : DiagramClass::NONCOMPACT_HYPERBOLIC;
}

Element distinguished_reflection(const CoxeterSystem& sys)
{
    if (finite_components(sys.matrix()).size() != 1)
        throw Error(ErrorCode::INVALID_ARGUMENT, "distinguished reflection needs an irreducible system");
    if (!sys.type())
        throw Error(ErrorCode::INVALID_ARGUMENT, "distinguished reflection needs a named type");
    const TypeSpec& t = *sys.type();
    if (t.crystallographic())
        return sys.reflection(sys.highest_root());
    auto s = [&](int i) { return sys.generator(i); };
    if (t.family == 'I') {
        Element r = sys.multiply(power(sys, sys.multiply(s(1), s(2)), (t.m - 1) / 2), s(1));
        return sys.from_perm(r.perm);
    }
    if (t.family == 'H' && t.rank == 3) {
        Element y = power(sys, sys.multiply(s(2), s(1)), 2);
        return conj(sys, s(3), y);
    }
    if (t.family == 'H' && t.rank == 4) {
        Element a = conj(sys, s(1), sys.multiply(s(2), s(3)));
        Element zz = sys.multiply(a, power(sys, sys.multiply(s(1), s(2)), 2));
        zz = sys.multiply(zz, sys.multiply(s(3), s(4)));
        return conj(sys, s(4), sys.multiply(zz, zz));
    }
    throw Error(ErrorCode::INVALID_ARGUMENT, "no distinguished reflection for " + t.str());
}

CoxeterMatrix extended_matrix(const CoxeterSystem& sys, const Element& r)
{
    if (r == sys.identity() || sys.multiply(r, r) != sys.identity())
        throw Error(ErrorCode::NOT_INVOLUTION, "extension element must be an involution");
    int n = sys.rank();
    CoxeterMatrix m(n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            m.set(i + 1, j + 1, sys.matrix()(i, j));
    for (int i = 1; i <= n; ++i) {
        int o = sys.element_order(sys.multiply(r, sys.generator(i)));
        // r = s_i: the two generators are independent in the affine group
        m.set(0, i, o == 1 ? kInfinity : o);
    }
    return m;
}

std::shared_ptr<const HatGroup> HatGroup::create(System base)
{
    Element r = distinguished_reflection(*base);
    return create(std::move(base), r);
}

std::shared_ptr<const HatGroup> HatGroup::create(System base, const Element& r)
{
    std::shared_ptr<HatGroup> h(new HatGroup());
    const CoxeterSystem& sys = *base;
    h->matrix_ = extended_matrix(sys, r);
    h->class_ = classify_diagram(h->matrix_);
    if (h->class_ != DiagramClass::AFFINE && h->class_ != DiagramClass::COMPACT_HYPERBOLIC)
        throw Error(ErrorCode::UNSUPPORTED_EXTENSION, "extension diagram is " + to_string(h->class_));
    h->r_ = sys.from_perm(r.perm);
    h->field_ = field_for_labels(h->matrix_.labels());
    h->tits_ = tits_form(h->matrix_);
    int n = sys.rank(), N = n + 1;
    int hr = sys.crystallographic() ? sys.highest_root() : -1;
    h->integral_ = hr >= 0 && sys.reflection_perm(hr) == h->r_.perm;
    h->cartan_.assign(z(N), std::vector<FieldElem>(z(N)));
    if (h->integral_) {
        const auto& beta = sys.root(hr);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                h->cartan_[z(i + 1)][z(j + 1)] = sys.cartan(i, j);
        size_t k0 = 0;
        while (beta[k0].is_zero())
            ++k0;
        for (int j = 0; j < n; ++j) {
            // s_beta(a_j) = a_j - <a_j, beta^v> beta
            const auto& img = sys.root(sys.reflection_perm(hr)[z(j)]);
            FieldElem aj = (j == static_cast<int>(k0) ? FieldElem(1) : FieldElem(0)) - img[k0];
            FieldElem pair_coroot = aj / beta[k0];
            FieldElem pair_root;
            for (int k = 0; k < n; ++k)
                pair_root += beta[z(k)] * sys.cartan(j, k);
            h->cartan_[0][z(j + 1)] = -pair_coroot;
            h->cartan_[z(j + 1)][0] = -pair_root;
        }
        h->cartan_[0][0] = FieldElem(2);
        h->delta_.assign(z(N), Rational(0));
        h->delta_[0] = 1;
        for (int i = 0; i < n; ++i)
            h->delta_[z(i + 1)] = beta[z(i)].rational_value();
    } else {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                h->cartan_[z(i)][z(j)] = h->tits_[z(i)][z(j)] * FieldElem(2);
    }
    for (int i = 0; i < N; ++i) {
        FMatrix s = identity_matrix(N);
        for (int j = 0; j < N; ++j)
            s[z(i)][z(j)] -= h->cartan_[z(i)][z(j)];
        h->gens_.push_back(std::move(s));
    }
    FMatrix id = identity_matrix(N);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            int mij = h->matrix_(i, j);
            if (mij == kInfinity)
                continue;
            FMatrix p = mat_mul(h->gens_[z(i)], h->gens_[z(j)]);
            FMatrix acc = id;
            for (int k = 0; k < mij; ++k)
                acc = mat_mul(acc, p);
            if (acc != id)
                throw Error(ErrorCode::INCONSISTENT, "generator matrices violate a Coxeter relation");
        }
    h->base_ = std::move(base);
    return h;
}

FMatrix HatGroup::invariant_form() const
{
    int N = rank();
    if (!integral_) {
        return cartan_;
    }
    // e_i A(i,j) = e_j A(j,i)
    std::vector<FieldElem> e(z(N));
    std::vector<bool> done(z(N), false);
    e[0] = FieldElem(1);
    done[0] = true;
    std::vector<int> q{0};
    for (size_t k = 0; k < q.size(); ++k) {
        int i = q[k];
        for (int j = 0; j < N; ++j)
            if (!done[z(j)] && !cartan_[z(j)][z(i)].is_zero()) {
                e[z(j)] = e[z(i)] * cartan_[z(i)][z(j)] / cartan_[z(j)][z(i)];
                done[z(j)] = true;
                q.push_back(j);
            }
    }
    FMatrix f(z(N), std::vector<FieldElem>(z(N)));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            f[z(i)][z(j)] = e[z(i)] * cartan_[z(i)][z(j)];
    return f;
}

HatElement HatGroup::identity() const { return {identity_matrix(rank()), {}}; }

HatElement HatGroup::normal_form(const Word& w) const
{
    int N = rank();
    // inverse matrix, then peel the smallest left descent
    FMatrix inv = identity_matrix(N);
    for (int letter : w) {
        if (letter < 0 || letter >= N)
            throw Error(ErrorCode::INVALID_ARGUMENT, "letter out of range");
        inv = mat_mul(gens_[z(letter)], inv);
    }
    HatElement out;
    for (;;) {
        int d = -1;
        for (int i = 0; i < N && d < 0; ++i)
            if (negative_column(inv, i))
                d = i;
        if (d < 0)
            break;
        out.word.push_back(d);
        // inv <- inv * s_d
        for (auto& row : inv) {
            FieldElem pivot = row[z(d)];
            if (pivot.is_zero())
                continue;
            for (int j = 0; j < N; ++j)
                if (!cartan_[z(d)][z(j)].is_zero())
                    row[z(j)] -= pivot * cartan_[z(d)][z(j)];
        }
    }
    out.mat = identity_matrix(N);
    for (int letter : out.word)
        out.mat = mat_mul(out.mat, gens_[z(letter)]);
    return out;
}

HatElement HatGroup::from_matrix(const FMatrix& m) const
{
    int N = rank();
    FMatrix cur = m;
    Word rev;
    for (;;) {
        int d = -1;
        for (int i = 0; i < N && d < 0; ++i)
            if (negative_column(cur, i))
                d = i;
        if (d < 0)
            break;
        rev.push_back(d);
        cur = mat_mul(cur, gens_[z(d)]);
    }
    if (cur != identity_matrix(N))
        throw Error(ErrorCode::INVALID_ARGUMENT, "matrix is not in the group");
    std::reverse(rev.begin(), rev.end());
    return normal_form(rev);
}

HatElement HatGroup::multiply(const HatElement& a, const HatElement& b) const
{
    Word w = a.word;
    w.insert(w.end(), b.word.begin(), b.word.end());
    return normal_form(w);
}

HatElement HatGroup::inverse(const HatElement& a) const
{
    Word w(a.word.rbegin(), a.word.rend());
    return normal_form(w);
}

HatElement HatGroup::section(const Element& w) const
{
    return normal_form(w.word);
}

Element HatGroup::project(const Word& w) const
{
    Perm p = base_->identity().perm;
    for (int letter : w)
        p = base_->compose(p, letter == 0 ? r_.perm : base_->generator_perm(letter));
    return base_->from_perm(p);
}

HatElement HatGroup::q0() const
{
    Word w{0};
    w.insert(w.end(), r_.word.begin(), r_.word.end());
    return normal_form(w);
}

AffinePair HatGroup::affine_pair(const HatElement& x) const
{
    if (!integral_)
        throw Error(ErrorCode::NOT_APPLICABLE, "affine pair needs the integral affine realisation");
    const CoxeterSystem& sys = *base_;
    int n = sys.rank();
    AffinePair out;
    out.finite = project(x);
    // column j: x(a_j) = c_0 delta + sum_i (c_i - c_0 delta_i) a_i, and <w a_j, lambda> = -c_0
    std::vector<std::vector<Rational>> a(z(n), std::vector<Rational>(z(n)));
    std::vector<Rational> b(z(n));
    for (int j = 0; j < n; ++j) {
        Rational c0 = x.mat[0][z(j + 1)].rational_value();
        b[z(j)] = -c0;
        std::vector<Rational> u(z(n));
        for (int i = 0; i < n; ++i)
            u[z(i)] = x.mat[z(i + 1)][z(j + 1)].rational_value() - c0 * delta_[z(i + 1)];
        for (int k = 0; k < n; ++k) {
            Rational s = 0;
            for (int i = 0; i < n; ++i)
                s += u[z(i)] * sys.cartan(k, i).rational_value();
            a[z(j)][z(k)] = s;
        }
    }
    out.translation = solve_rational(a, b);
    return out;
}

Hat hat_group(System base) { return HatGroup::create(std::move(base)); }

HatElement hat_normal_form(const HatGroup& h, const Word& w) { return h.normal_form(w); }

Subgroup parabolic_image(const HatGroup& h, const std::vector<int>& I)
{
    std::vector<int> idx(I);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (static_cast<int>(idx.size()) >= h.rank())
        throw Error(ErrorCode::INVALID_ARGUMENT, "the full extended group is infinite");
    const CoxeterSystem& sys = *h.base();
    std::vector<Element> gens;
    for (int i : idx) {
        if (i < 0 || i >= h.rank())
            throw Error(ErrorCode::INVALID_ARGUMENT, "letter out of range");
        gens.push_back(i == 0 ? h.r() : sys.generator(i));
    }
    Subgroup s = subgroup_closure(sys, gens);
    long long expect = idx.empty() ? 1 : finite_order(h.matrix().submatrix(idx));
    if (s.order() != expect)
        throw Error(ErrorCode::INCONSISTENT, "parabolic image has order " + std::to_string(s.order()) +
                                                 ", abstract parabolic has order " + std::to_string(expect));
    return s;
}

CoxeterMatrix canonical_diagram(const CoxeterMatrix& m, bool keep_zero)
{
    int n = m.size();
    if (n == 0)
        return m;
    std::vector<int> color(z(n), keep_zero ? 1 : 0);
    if (keep_zero)
        color[0] = 0;
    std::vector<int> best;
    bool have = false;
    canonical_search(m, color, best, have);
    CoxeterMatrix out(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            out.set(a, b, m(best[z(a)], best[z(b)]));
    return out;
}

std::vector<ScanEntry> scan_reflection_extensions(const CoxeterSystem& sys)
{
    if (finite_components(sys.matrix()).size() != 1)
        throw Error(ErrorCode::INVALID_ARGUMENT, "scan needs an irreducible system");
    std::vector<ScanEntry> out;
    std::map<std::vector<int>, size_t> where;
    for (int k = 0; k < sys.num_positive_roots(); ++k) {
        CoxeterMatrix c = canonical_diagram(extended_matrix(sys, sys.reflection(k)), true);
        bool degenerate = k < sys.rank();
        std::vector<int> key{degenerate ? 1 : 0};
        for (int i = 0; i < c.size(); ++i)
            for (int j = 0; j < c.size(); ++j)
                key.push_back(c(i, j));
        auto it = where.find(key);
        if (it == where.end()) {
            where[key] = out.size();
            out.push_back({c, DiagramClass::OTHER, {k}, sys.reduced_word(sys.reflection_perm(k)), degenerate});
        } else {
            out[it->second].roots.push_back(k);
        }
    }
    for (auto& e : out)
        if (!e.degenerate)
            e.cls = classify_diagram(e.diagram);
    return out;
}

FieldElem q0_trace(const HatGroup& h)
{
    if (h.rank() != 3)
        throw Error(ErrorCode::INVALID_ARGUMENT, "trace formula needs a dihedral base group");
    // symmetric geometric realisation; the trace does not depend on the realisation
    int N = h.rank();
    std::vector<FMatrix> gens;
    for (int i = 0; i < N; ++i) {
        FMatrix s = identity_matrix(N);
        for (int j = 0; j < N; ++j)
            s[z(i)][z(j)] -= h.tits()[z(i)][z(j)] * FieldElem(2);
        gens.push_back(std::move(s));
    }
    FMatrix m = identity_matrix(N);
    for (int letter : h.q0().word)
        m = mat_mul(m, gens[z(letter)]);
    return trace(m);
}

}  // namespace cxt

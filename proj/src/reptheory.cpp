#include "coxtorus/reptheory.hpp"

#include "char_data.hpp"
#include "coxtorus/complex.hpp"
#include "coxtorus/error.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

namespace cxt {

namespace {

size_t z(int i) { return static_cast<size_t>(i); }

ClassFunction zip(const ClassFunction& a, const ClassFunction& b, const std::function<FieldElem(const FieldElem&, const FieldElem&)>& f)
{
    if (a.values.size() != b.values.size())
        throw Error(ErrorCode::INVALID_ARGUMENT, "class functions on different groups");
    ClassFunction r;
    for (size_t i = 0; i < a.values.size(); ++i)
        r.values.push_back(f(a.values[i], b.values[i]));
    return r;
}

// 2cos(k pi / m) in the field of I2(m)
FieldElem two_cos_dihedral(const Field& f, int m, int k)
{
    if (f) {
        if (f->m() % m != 0)
            throw Error(ErrorCode::INVALID_ARGUMENT, "field does not contain 2cos(pi/m)");
        return FieldElem::two_cos(f, k * (f->m() / m));
    }
    // rational generator: m = 2 or 3
    FieldElem g(m == 3 ? 1 : 0), prev(2), cur = g;
    k = std::abs(k);
    if (k == 0)
        return prev;
    for (int i = 1; i < k; ++i) {
        FieldElem next = g * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

FieldElem to_field(const Field& f, const FieldElem& x)
{
    return x.is_zero() ? FieldElem(f, {}) : FieldElem(f, x.coeffs());
}

Integer integral_value(const FieldElem& x)
{
    if (!x.is_rational())
        throw Error(ErrorCode::INCONSISTENT, "irrational multiplicity");
    Rational q = x.rational_value();
    if (q.get_den() != 1)
        throw Error(ErrorCode::INCONSISTENT, "fractional multiplicity");
    return q.get_num();
}

Rational parse_rational(const std::string& s)
{
    Rational q(s);
    q.canonicalize();
    return q;
}

}  // namespace

ClassFunction operator+(const ClassFunction& a, const ClassFunction& b)
{
    return zip(a, b, [](const FieldElem& x, const FieldElem& y) { return x + y; });
}

ClassFunction operator-(const ClassFunction& a, const ClassFunction& b)
{
    return zip(a, b, [](const FieldElem& x, const FieldElem& y) { return x - y; });
}

ClassFunction operator*(const ClassFunction& a, const ClassFunction& b)
{
    return zip(a, b, [](const FieldElem& x, const FieldElem& y) { return x * y; });
}

ClassFunction operator*(const FieldElem& s, const ClassFunction& a)
{
    ClassFunction r;
    for (auto& v : a.values)
        r.values.push_back(s * v);
    return r;
}

int CharTable::index_of(const std::string& label) const
{
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label)
            return static_cast<int>(i);
    return -1;
}

const ClassFunction& CharTable::operator[](const std::string& label) const
{
    int i = index_of(label);
    if (i < 0)
        throw Error(ErrorCode::INVALID_ARGUMENT, "no character " + label);
    return chars[z(i)];
}

int CharTable::degree(int i) const
{
    return static_cast<int>(chars[z(i)].values[0].rational_value().get_num().get_si());
}

FieldElem inner_product(const CoxeterSystem& sys, const ClassData& cd, const ClassFunction& a, const ClassFunction& b)
{
    FieldElem s(0);
    for (size_t c = 0; c < cd.classes.size(); ++c)
        s += FieldElem(static_cast<long>(cd.classes[c].size)) * a.values[c] * b.values[c];
    return s * FieldElem(Rational(1, static_cast<unsigned long>(sys.order())));
}

ClassFunction trivial_character(const CoxeterSystem&, const ClassData& cd)
{
    return ClassFunction{std::vector<FieldElem>(cd.classes.size(), FieldElem(1))};
}

ClassFunction sign_character(const CoxeterSystem& sys, const ClassData& cd)
{
    ClassFunction f;
    for (auto& c : cd.classes)
        f.values.push_back(FieldElem(sys.group().length(c.rep) % 2 ? -1 : 1));
    return f;
}

ClassFunction reflection_character(const CoxeterSystem& sys, const ClassData& cd)
{
    ClassFunction f;
    for (auto& c : cd.classes) {
        const uint16_t* p = sys.group().perm(c.rep);
        FieldElem t(0);
        for (int i = 0; i < sys.rank(); ++i)
            t += sys.root(p[i])[z(i)];
        f.values.push_back(t);
    }
    return f;
}

ClassFunction permutation_character(const CoxeterSystem& sys, const ClassData& cd, const Subgroup& h)
{
    // |W| |c cap H| / (|H| |c|)
    std::vector<long long> hits(cd.classes.size(), 0);
    for (int x : h.elements)
        ++hits[z(cd.class_of[z(x)])];
    ClassFunction f;
    for (size_t c = 0; c < cd.classes.size(); ++c) {
        Rational v(static_cast<long>(sys.order() * hits[c]), static_cast<unsigned long>(h.order() * cd.classes[c].size));
        v.canonicalize();
        f.values.push_back(FieldElem(v));
    }
    return f;
}

CharTable dihedral_char_table(int m)
{
    if (m < 3)
        throw Error(ErrorCode::INVALID_ARGUMENT, "dihedral tables need m >= 3");
    return dihedral_char_table(CoxeterSystem::create(TypeSpec{'I', 2, m}));
}

CharTable dihedral_char_table(System sys)
{
    if (sys->rank() != 2 || sys->matrix()(0, 1) < 3)
        throw Error(ErrorCode::INVALID_ARGUMENT, "not a dihedral group of order >= 6");
    int m = sys->matrix()(0, 1);
    CharTable t;
    t.sys = sys;
    t.classes = conjugacy_classes(*sys);
    const GroupTable& g = sys->group();
    const Field& f = sys->field();
    int s_class = t.classes.class_of[z(g.index_of(sys->generator(1).perm))];
    std::vector<int> rotation;  // exponent i of a^i, or -1 for reflection classes
    std::vector<bool> s_like;
    for (auto& c : t.classes.classes) {
        int len = g.length(c.rep);
        rotation.push_back(len % 2 ? -1 : len / 2);
        s_like.push_back(t.classes.class_of[z(c.rep)] == s_class);
    }
    auto make = [&](const std::string& label, const std::function<FieldElem(size_t)>& v) {
        ClassFunction cf;
        for (size_t c = 0; c < rotation.size(); ++c)
            cf.values.push_back(to_field(f, v(c)));
        t.labels.push_back(label);
        t.chars.push_back(cf);
    };
    make("1", [](size_t) { return FieldElem(1); });
    make("eps", [&](size_t c) { return FieldElem(rotation[c] < 0 ? -1 : 1); });
    if (m % 2 == 0) {
        // (st)^i has sign (-1)^i under both
        auto half = [&](size_t c, bool on_s) {
            if (rotation[c] >= 0)
                return FieldElem(rotation[c] % 2 ? -1 : 1);
            return FieldElem(s_like[c] == on_s ? 1 : -1);
        };
        make("eps_s", [&](size_t c) { return half(c, true); });
        make("eps_t", [&](size_t c) { return half(c, false); });
    }
    for (int j = 1; 2 * j < m; ++j)
        make("chi_" + std::to_string(j), [&](size_t c) {
            return rotation[c] < 0 ? FieldElem(0) : two_cos_dihedral(f, m, 2 * rotation[c] * j);
        });
    return t;
}

CharTable parse_char_table(System sys, const std::string& text)
{
    if (!sys->field() || sys->field()->m() % 5 != 0)
        throw Error(ErrorCode::INVALID_ARGUMENT, "table values live in Q(sqrt 5)");
    CharTable t;
    t.sys = sys;
    t.classes = conjugacy_classes(*sys);
    const GroupTable& g = sys->group();
    FieldElem sqrt5 = FieldElem(2) * FieldElem::two_cos_pi_over(sys->field(), 5) - FieldElem(1);
    std::vector<int> perm;  // data class -> computed class
    std::istringstream in(text);
    std::string line;
    auto corrupt = [](const std::string& why) { return Error(ErrorCode::CORRUPT_TABLE, why); };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "classes") {
            size_t n = 0;
            ls >> n;
            if (n != t.classes.classes.size())
                throw corrupt("class count mismatch");
            continue;
        }
        if (head == "class") {
            int idx = 0;
            long long size = 0;
            std::string w;
            ls >> idx >> size >> w;
            Word word;
            if (w != "e") {
                std::istringstream ws(w);
                for (std::string tok; std::getline(ws, tok, '.');)
                    word.push_back(std::stoi(tok));
            }
            int c = t.classes.class_of[z(g.index_of(sys->element_from_word(word).perm))];
            if (idx != static_cast<int>(perm.size()) || t.classes.classes[z(c)].size != size)
                throw corrupt("class record " + std::to_string(idx) + " does not match");
            perm.push_back(c);
            continue;
        }
        // label; degree; values
        auto semi1 = line.find(';'), semi2 = line.find(';', semi1 + 1);
        if (semi1 == std::string::npos || semi2 == std::string::npos)
            throw corrupt("malformed line: " + line);
        std::string label = line.substr(0, semi1);
        int degree = std::stoi(line.substr(semi1 + 1, semi2 - semi1 - 1));
        std::vector<FieldElem> raw;
        std::string rest = line.substr(semi2 + 1);
        for (size_t p = rest.find('('); p != std::string::npos; p = rest.find('(', p + 1)) {
            size_t comma = rest.find(',', p), close = rest.find(')', p);
            if (comma == std::string::npos || close == std::string::npos)
                throw corrupt("malformed value in " + label);
            Rational a = parse_rational(rest.substr(p + 1, comma - p - 1));
            Rational b = parse_rational(rest.substr(comma + 1, close - comma - 1));
            raw.push_back(FieldElem(a) + FieldElem(b) * sqrt5);
        }
        if (raw.size() != perm.size())
            throw corrupt("value count mismatch for " + label);
        ClassFunction cf;
        cf.values.assign(perm.size(), FieldElem(0));
        for (size_t i = 0; i < raw.size(); ++i)
            cf.values[z(perm[i])] = to_field(sys->field(), raw[i]);
        if (cf.values[z(t.classes.class_of[0])] != FieldElem(degree))
            throw corrupt("degree mismatch for " + label);
        t.labels.push_back(label);
        t.chars.push_back(cf);
    }
    if (t.chars.size() != t.classes.classes.size())
        throw corrupt("table is not square");
    long long squares = 0;
    for (size_t i = 0; i < t.chars.size(); ++i)
        squares += static_cast<long long>(t.degree(static_cast<int>(i))) * t.degree(static_cast<int>(i));
    if (squares != sys->order())
        throw corrupt("degrees do not square-sum to the group order");
    for (size_t i = 0; i < t.chars.size(); ++i)
        for (size_t j = i; j < t.chars.size(); ++j)
            if (inner_product(*sys, t.classes, t.chars[i], t.chars[j]) != FieldElem(i == j ? 1 : 0))
                throw corrupt("orthogonality fails for " + t.labels[i] + ", " + t.labels[j]);
    return t;
}

CharTable load_char_table(System sys)
{
    const auto& type = sys->type();
    if (type && type->family == 'H' && type->rank == 3)
        return parse_char_table(sys, detail::kH3Chars);
    if (type && type->family == 'H' && type->rank == 4)
        return parse_char_table(sys, detail::kH4Chars);
    throw Error(ErrorCode::NOT_APPLICABLE, "embedded tables cover H3 and H4");
}

CharTable char_table(System sys)
{
    if (sys->rank() == 2 && sys->matrix()(0, 1) >= 3)
        return dihedral_char_table(sys);
    return load_char_table(sys);
}

std::vector<long long> decompose_virtual(const CharTable& t, const ClassFunction& f)
{
    std::vector<long long> m;
    for (auto& c : t.chars)
        m.push_back(integral_value(inner_product(*t.sys, t.classes, f, c)).get_si());
    if (compose(t, m) != f)
        throw Error(ErrorCode::INCONSISTENT, "not a virtual character");
    return m;
}

std::vector<long long> decompose(const CharTable& t, const ClassFunction& f)
{
    std::vector<long long> m = decompose_virtual(t, f);
    for (long long x : m)
        if (x < 0)
            throw Error(ErrorCode::INCONSISTENT, "negative multiplicity in a character");
    return m;
}

ClassFunction compose(const CharTable& t, const std::vector<long long>& mult)
{
    ClassFunction f;
    f.values.assign(t.classes.classes.size(), FieldElem(0));
    for (size_t i = 0; i < t.chars.size(); ++i)
        if (mult[i])
            f = f + FieldElem(static_cast<long>(mult[i])) * t.chars[i];
    return f;
}

std::string format_decomposition(const CharTable& t, const std::vector<long long>& mult)
{
    std::string s;
    for (size_t i = 0; i < mult.size(); ++i) {
        if (!mult[i])
            continue;
        long long a = std::llabs(mult[i]);
        if (!s.empty())
            s += mult[i] < 0 ? " - " : " + ";
        else if (mult[i] < 0)
            s += "-";
        if (a != 1)
            s += std::to_string(a) + "*";
        s += t.labels[i];
    }
    return s.empty() ? "0" : s;
}

ClassFunction chain_character(const HatGroup& h, const ClassData& cd, int k)
{
    const CoxeterSystem& sys = *h.base();
    int n = sys.rank();
    if (k < 0 || k > n)
        throw Error(ErrorCode::INVALID_ARGUMENT, "degree out of range");
    ClassFunction f{std::vector<FieldElem>(cd.classes.size(), FieldElem(0))};
    for (unsigned mask = 0; mask + 1 < (1u << (n + 1)); ++mask) {
        if (std::popcount(mask) != n - k)
            continue;
        std::vector<int> I;
        for (int i = 0; i <= n; ++i)
            if (mask & (1u << i))
                I.push_back(i);
        f = f + permutation_character(sys, cd, parabolic_image(h, I));
    }
    return f;
}

ClassFunction hopf_virtual_character(const HatGroup& h, const ClassData& cd)
{
    int n = h.base()->rank();
    ClassFunction f{std::vector<FieldElem>(cd.classes.size(), FieldElem(0))};
    for (int k = 0; k <= n; ++k) {
        ClassFunction c = chain_character(h, cd, k);
        f = (n - k) % 2 ? f - c : f + c;
    }
    return f;
}

HomologyDecomposition decompose_homology(const HatGroup& h, const std::vector<int>& betti, const CharTable& t)
{
    int n = h.base()->rank();
    if (n < 2 || n > 4)
        throw Error(ErrorCode::NOT_APPLICABLE, "decomposition is solved for ranks 2 to 4");
    if (static_cast<int>(betti.size()) != n + 1)
        throw Error(ErrorCode::INVALID_ARGUMENT, "one Betti number per degree expected");
    const CoxeterSystem& sys = *h.base();
    size_t r = t.chars.size();
    using Vec = std::vector<long long>;

    ClassFunction eps = sign_character(sys, t.classes);
    std::vector<size_t> tw(r);
    for (size_t i = 0; i < r; ++i) {
        int j = -1;
        for (size_t k = 0; k < r; ++k)
            if (t.chars[k] == eps * t.chars[i])
                j = static_cast<int>(k);
        if (j < 0)
            throw Error(ErrorCode::CORRUPT_TABLE, "table is not closed under the sign twist");
        tw[i] = z(j);
    }
    auto twist = [&](const Vec& v) {
        Vec w(r);
        for (size_t i = 0; i < r; ++i)
            w[tw[i]] = v[i];
        return w;
    };
    auto degree_of = [&](const Vec& v) {
        long long d = 0;
        for (size_t i = 0; i < r; ++i)
            d += v[i] * t.degree(static_cast<int>(i));
        return d;
    };

    std::vector<Vec> bound;
    for (int k = 0; k <= n; ++k)
        bound.push_back(decompose(t, chain_character(h, t.classes, k)));
    Vec hopf = decompose_virtual(t, hopf_virtual_character(h, t.classes));
    Vec m0 = decompose(t, trivial_character(sys, t.classes)), mn = decompose(t, eps);

    HomologyDecomposition out;
    auto accept = [&](const Vec& m1) {
        std::vector<Vec> m(z(n + 1));
        m[0] = m0;
        m[z(n)] = mn;
        m[1] = m1;
        m[z(n - 1)] = twist(m1);
        if (n == 2 && m[1] != twist(m1))
            return;
        if (n == 4) {
            Vec m2(r);
            for (size_t i = 0; i < r; ++i)
                m2[i] = hopf[i] - m[0][i] + m[1][i] + m[3][i] - m[4][i];
            m[2] = m2;
        }
        for (int k = 0; k <= n; ++k) {
            if (degree_of(m[z(k)]) != betti[z(k)] || m[z(k)] != twist(m[z(n - k)]))
                return;
            for (size_t i = 0; i < r; ++i)
                if (m[z(k)][i] < 0 || m[z(k)][i] > bound[z(k)][i])
                    return;
        }
        int sign = n % 2 ? -1 : 1;
        for (size_t i = 0; i < r; ++i) {
            long long alt = 0;
            for (int k = 0; k <= n; ++k)
                alt += (k % 2 ? -1 : 1) * m[z(k)][i];
            if (sign * alt != hopf[i])
                return;
        }
        out.solutions.push_back(m);
    };

    // multiplicities of H_1 with the right dimension inside the chain bounds
    Vec cur(r, 0);
    std::function<void(size_t, long long)> search = [&](size_t i, long long left) {
        if (i == r) {
            if (left == 0)
                accept(cur);
            return;
        }
        long long d = t.degree(static_cast<int>(i));
        long long cap = std::min({bound[1][i], bound[z(n - 1)][tw[i]], left / d});
        for (long long k = 0; k <= cap; ++k) {
            cur[i] = k;
            search(i + 1, left - k * d);
        }
        cur[i] = 0;
    };
    search(0, betti[1]);
    if (out.solutions.empty())
        throw Error(ErrorCode::INCONSISTENT, "no homology decomposition satisfies the constraints");
    return out;
}

namespace {

constexpr uint64_t kP = 2147483647;  // 2^31 - 1

uint64_t mod_p(long long v)
{
    long long r = v % static_cast<long long>(kP);
    return static_cast<uint64_t>(r < 0 ? r + static_cast<long long>(kP) : r);
}

uint64_t inv_p(uint64_t a)
{
    uint64_t r = 1, e = kP - 2;
    while (e) {
        if (e & 1)
            r = r * a % kP;
        a = a * a % kP;
        e >>= 1;
    }
    return r;
}

// row echelon basis over F_p, rows kept with their pivot column
struct Echelon {
    std::vector<std::vector<uint64_t>> rows;
    std::vector<size_t> pivots;

    bool add(std::vector<uint64_t> v)
    {
        for (size_t i = 0; i < rows.size(); ++i) {
            uint64_t c = v[pivots[i]];
            if (c == 0)
                continue;
            for (size_t j = 0; j < v.size(); ++j)
                if (rows[i][j])
                    v[j] = (v[j] + (kP - c) * rows[i][j]) % kP;
        }
        size_t piv = 0;
        while (piv < v.size() && v[piv] == 0)
            ++piv;
        if (piv == v.size())
            return false;
        uint64_t s = inv_p(v[piv]);
        for (auto& x : v)
            x = x * s % kP;
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        return true;
    }
};

int rank_of(const std::vector<std::vector<uint64_t>>& vs)
{
    Echelon e;
    for (auto& v : vs)
        e.add(v);
    return static_cast<int>(e.rows.size());
}

}  // namespace

long long isotypic_homology_dimension(const ChainComplex& c, const ClassData& cd, const ClassFunction& f, int deg, int k)
{
    if (k < 0 || k > c.dim)
        throw Error(ErrorCode::INVALID_ARGUMENT, "degree out of range");
    const GroupTable& g = c.group->group();
    int order = g.size();
    std::vector<long long> value(cd.classes.size());
    for (size_t i = 0; i < value.size(); ++i)
        value[i] = integral_value(f.values[i]).get_si();
    auto f_at = [&](int x) { return value[z(cd.class_of[z(x)])]; };

    // the image U of E = sum f(g) g on C_k, built orbit by orbit
    std::mt19937_64 rng(0x5eed + static_cast<unsigned>(k));
    std::uniform_int_distribution<int> pick(0, order - 1);
    size_t nk = z(c.rank(k));
    std::vector<std::vector<uint64_t>> u;
    for (auto& cell : c.cells[z(k)]) {
        const CosetSpace& cs = cell.cosets;
        size_t size = z(cs.size());
        long long fixed = 0, stab = 0;
        std::vector<long long> v(size, 0);
        for (int x = 0; x < order; ++x) {
            v[z(cs.coset_of[z(x)])] += f_at(x);
            if (cs.coset_of[z(x)] == cs.coset_of[0]) {
                fixed += f_at(x);
                ++stab;
            }
        }
        if (fixed % stab != 0)
            throw Error(ErrorCode::INCONSISTENT, "class function is not a character sum");
        long long target = deg * (fixed / stab);
        Echelon e;
        for (int tries = 0; static_cast<long long>(e.rows.size()) < target; ++tries) {
            if (tries > 50 * target + 200)
                throw Error(ErrorCode::INCONSISTENT, "isotypic projection stalled");
            int h = tries == 0 ? 0 : pick(rng);
            std::vector<uint64_t> w(size, 0);
            for (size_t q = 0; q < size; ++q)
                w[z(cs.coset_of[z(g.mul(h, cs.reps[q]))])] = mod_p(v[q]);
            e.add(std::move(w));
        }
        for (auto& row : e.rows) {
            std::vector<uint64_t> full(nk, 0);
            std::copy(row.begin(), row.end(), full.begin() + cell.offset);
            u.push_back(std::move(full));
        }
    }
    long long dim = static_cast<long long>(u.size());
    if (dim == 0)
        return 0;

    if (k > 0) {
        const SparseIntMatrix& d = c.boundary[z(k)];
        std::vector<std::vector<uint64_t>> img;
        for (auto& col : u) {
            std::vector<uint64_t> y(z(d.rows()), 0);
            for (size_t j = 0; j < nk; ++j)
                if (col[j])
                    for (auto& [r, x] : d.column(static_cast<int>(j)))
                        y[z(r)] = (y[z(r)] + mod_p(x.get_si()) * col[j]) % kP;
            img.push_back(std::move(y));
        }
        dim -= rank_of(img);
    }
    if (k < c.dim) {
        // rank of U^T d_{k+1} equals that of E d_{k+1}; sampled on random vectors
        const SparseIntMatrix& d = c.boundary[z(k + 1)];
        std::uniform_int_distribution<uint64_t> coef(0, kP - 1);
        std::vector<std::vector<uint64_t>> img(u.size());
        for (size_t s = 0; s < u.size() + 8; ++s) {
            std::vector<uint64_t> y(nk, 0);
            for (int j = 0; j < d.cols(); ++j) {
                uint64_t a = coef(rng);
                for (auto& [r, x] : d.column(j))
                    y[z(r)] = (y[z(r)] + mod_p(x.get_si()) * a) % kP;
            }
            for (size_t i = 0; i < u.size(); ++i) {
                uint64_t acc = 0;
                for (size_t j = 0; j < nk; ++j)
                    if (u[i][j])
                        acc = (acc + u[i][j] * y[j]) % kP;
                img[i].push_back(acc);
            }
        }
        dim -= rank_of(img);
    }
    return dim;
}

void resolve_by_projection(HomologyDecomposition& d, const ChainComplex& c, const CharTable& t)
{
    if (!d.ambiguous())
        return;
    size_t r = t.chars.size();
    auto rational = [](const ClassFunction& f) {
        return std::all_of(f.values.begin(), f.values.end(), [](const FieldElem& x) { return x.is_rational(); });
    };
    for (size_t i = 0; i < r && d.ambiguous(); ++i) {
        std::vector<size_t> members{i};
        ClassFunction f = t.chars[i];
        if (!rational(f)) {
            for (size_t j = 0; j < r && members.size() == 1; ++j)
                if (j != i && t.degree(static_cast<int>(j)) == t.degree(static_cast<int>(i)) && rational(f + t.chars[j]))
                    members.push_back(j);
            if (members.size() == 1)
                continue;
            f = f + t.chars[members[1]];
        }
        for (size_t k = 1; k + 1 < d.solutions[0].size() && d.ambiguous(); ++k) {
            auto mult = [&](const std::vector<std::vector<long long>>& s) {
                long long m = 0;
                for (size_t j : members)
                    m += s[k][j];
                return m;
            };
            bool differ = std::any_of(d.solutions.begin(), d.solutions.end(),
                                      [&](auto& s) { return mult(s) != mult(d.solutions[0]); });
            if (!differ)
                continue;
            int deg = t.degree(static_cast<int>(i));
            long long dim = isotypic_homology_dimension(c, t.classes, f, deg, static_cast<int>(k));
            if (dim % deg != 0)
                throw Error(ErrorCode::INCONSISTENT, "isotypic dimension is not a multiple of the degree");
            std::erase_if(d.solutions, [&](auto& s) { return mult(s) != dim / deg; });
            d.projected = true;
            if (d.solutions.empty())
                throw Error(ErrorCode::INCONSISTENT, "projection contradicts every candidate decomposition");
        }
    }
}

}  // namespace cxt

#include "coxtorus/complex.hpp"

#include "coxtorus/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace cxt {

namespace {

size_t z(int i) { return static_cast<size_t>(i); }

Element longest_element(const CoxeterSystem& sys, const std::vector<int>& letters)
{
    Element w = sys.identity();
    for (bool grew = true; grew;) {
        grew = false;
        for (int s : letters)
            if (!sys.is_right_descent(w, s)) {
                w = sys.multiply(w, sys.generator(s));
                grew = true;
                break;
            }
    }
    return w;
}

// x -> w x + coweight_i on fundamental coweight coordinates; permutation of the vertices or empty
std::vector<int> vertex_permutation(const CoxeterSystem& sys, const Element& w, int i,
                                    const std::vector<std::vector<Rational>>& vertices)
{
    int n = sys.rank();
    Element winv = sys.inverse(w);
    // row k: coordinates of w^-1(alpha_k)
    std::vector<std::vector<Rational>> rows;
    for (int k = 0; k < n; ++k) {
        const auto& root = sys.root(winv.perm[z(k)]);
        std::vector<Rational> r;
        for (auto& c : root)
            r.push_back(c.rational_value());
        rows.push_back(r);
    }
    std::vector<int> perm;
    for (auto& v : vertices) {
        std::vector<Rational> img(z(n));
        for (int k = 0; k < n; ++k) {
            Rational s = (k + 1 == i) ? 1 : 0;
            for (int m = 0; m < n; ++m)
                s += rows[z(k)][z(m)] * v[z(m)];
            img[z(k)] = s;
        }
        auto it = std::find(vertices.begin(), vertices.end(), img);
        if (it == vertices.end())
            return {};
        perm.push_back(static_cast<int>(it - vertices.begin()));
    }
    return perm;
}

OmegaElement omega_mul(const CoxeterSystem& sys, const OmegaElement& a, const OmegaElement& b)
{
    OmegaElement c;
    for (int x : b.perm)
        c.perm.push_back(a.perm[z(x)]);
    c.image = sys.multiply(a.image, b.image);
    return c;
}

std::vector<OmegaElement> closure(const CoxeterSystem& sys, const std::vector<OmegaElement>& gens, int points)
{
    OmegaElement id;
    id.perm.resize(z(points));
    std::iota(id.perm.begin(), id.perm.end(), 0);
    id.image = sys.identity();
    std::vector<OmegaElement> out{id};
    for (size_t k = 0; k < out.size(); ++k)
        for (auto& g : gens) {
            OmegaElement c = omega_mul(sys, out[k], g);
            bool seen = std::any_of(out.begin(), out.end(), [&](const OmegaElement& e) { return e.perm == c.perm; });
            if (!seen)
                out.push_back(c);
        }
    return out;
}

unsigned apply_mask(const std::vector<int>& perm, unsigned mask)
{
    unsigned out = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        if (mask & (1u << i))
            out |= 1u << perm[i];
    return out;
}

Flag apply_flag(const std::vector<int>& perm, const Flag& f)
{
    Flag g;
    for (unsigned s : f.sets)
        g.sets.push_back(apply_mask(perm, s));
    return g;
}

bool flag_eq(const Flag& a, const Flag& b) { return a.sets == b.sets; }

void all_flags(unsigned full, int length, std::vector<unsigned>& cur, std::vector<Flag>& out)
{
    if (static_cast<int>(cur.size()) == length) {
        out.push_back({cur});
        return;
    }
    unsigned below = cur.empty() ? 0 : cur.back();
    for (unsigned s = 1; s <= full; ++s)
        if ((s & below) == below && s != below && (s & ~full) == 0) {
            cur.push_back(s);
            all_flags(full, length, cur, out);
            cur.pop_back();
        }
}

}  // namespace

int expected_omega_order(const TypeSpec& t)
{
    switch (t.family) {
    case 'A': return t.rank + 1;
    case 'B':
    case 'C': return 2;
    case 'D': return 4;
    case 'E': return t.rank == 6 ? 3 : t.rank == 7 ? 2 : 1;
    default: return 1;
    }
}

std::string OmegaAction::structure() const
{
    int n = static_cast<int>(group.size());
    if (n == 1)
        return "1";
    for (auto& e : group) {
        std::vector<int> p = e.perm;
        int ord = 1;
        for (std::vector<int> q = p; q != group[0].perm; ++ord) {
            std::vector<int> next;
            for (int x : q)
                next.push_back(p[z(x)]);
            q = next;
        }
        if (ord == n)
            return "Z/" + std::to_string(n);
    }
    return n == 4 ? "Z/2 x Z/2" : "order " + std::to_string(n);
}

std::string cycle_str(const std::vector<int>& perm)
{
    std::ostringstream os;
    std::vector<char> seen(perm.size(), 0);
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i] || perm[i] == static_cast<int>(i))
            continue;
        os << '(';
        for (size_t j = i; !seen[j]; j = z(perm[j])) {
            seen[j] = 1;
            os << (j == i ? "" : ",") << j;
        }
        os << ')';
    }
    std::string s = os.str();
    return s.empty() ? "()" : s;
}

OmegaAction omega_action(const TypeSpec& t)
{
    if (!t.crystallographic())
        throw Error(ErrorCode::NOT_APPLICABLE, "the fundamental group needs a crystallographic type");
    OmegaAction om;
    om.type = t;
    om.sys = CoxeterSystem::create(t);
    const CoxeterSystem& sys = *om.sys;
    int n = sys.rank();
    for (auto& c : sys.root(sys.highest_root()))
        om.highest_coeffs.push_back(static_cast<int>(c.rational_value().get_num().get_si()));
    om.vertices.assign(z(n + 1), std::vector<Rational>(z(n), Rational(0)));
    for (int i = 1; i <= n; ++i)
        om.vertices[z(i)][z(i - 1)] = Rational(1, om.highest_coeffs[z(i - 1)]);
    std::vector<int> all;
    for (int i = 1; i <= n; ++i)
        all.push_back(i);
    Element w0 = longest_element(sys, all);
    std::vector<OmegaElement> gens;
    for (int i = 1; i <= n; ++i) {
        if (om.highest_coeffs[z(i - 1)] != 1)
            continue;
        om.minuscule.push_back(i);
        std::vector<int> rest;
        for (int j : all)
            if (j != i)
                rest.push_back(j);
        Element w = sys.multiply(longest_element(sys, rest), w0);
        std::vector<int> perm = vertex_permutation(sys, w, i, om.vertices);
        if (perm.empty())
            throw Error(ErrorCode::INCONSISTENT, "omega_" + std::to_string(i) + " does not preserve the alcove");
        om.perms[i] = perm;
        om.finite_parts[i] = w;
        gens.push_back({perm, w});
    }
    om.group = closure(sys, gens, n + 1);
    if (static_cast<int>(om.group.size()) != expected_omega_order(t))
        throw Error(ErrorCode::INCONSISTENT, "fundamental group of order " + std::to_string(om.group.size()) +
                                                 " for " + t.str());
    return om;
}

std::vector<OmegaElement> omega_subgroup(const OmegaAction& om, const std::vector<int>& gens)
{
    std::vector<OmegaElement> g;
    for (int i : gens) {
        auto it = om.perms.find(i);
        if (it == om.perms.end())
            throw Error(ErrorCode::INVALID_ARGUMENT, "letter " + std::to_string(i) + " is not minuscule");
        g.push_back({it->second, om.finite_parts.at(i)});
    }
    return closure(*om.sys, g, om.sys->rank() + 1);
}

bool subset_less(unsigned a, unsigned b)
{
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb)
        return pa < pb;
    unsigned x = a ^ b;
    if (x == 0)
        return false;
    return (a & (x & (~x + 1))) != 0;
}

bool flag_less(const Flag& a, const Flag& b)
{
    return std::lexicographical_compare(a.sets.begin(), a.sets.end(), b.sets.begin(), b.sets.end(), subset_less);
}

std::string flag_str(const Flag& f)
{
    std::ostringstream os;
    os << '(';
    for (size_t k = 0; k < f.sets.size(); ++k) {
        os << (k ? "," : "") << '{';
        bool first = true;
        for (int i = 0; i < 32; ++i)
            if (f.sets[k] & (1u << i)) {
                os << (first ? "" : ",") << i;
                first = false;
            }
        os << '}';
    }
    os << ')';
    return os.str();
}

BarycentricData barycentric_data(const OmegaAction& om, const std::vector<int>& h_gens)
{
    const System& sys = om.sys;
    int n = sys->rank();
    unsigned full = (1u << (n + 1)) - 1;
    std::vector<OmegaElement> omy = omega_subgroup(om, h_gens);
    Hat hat = hat_group(sys);
    Element id = sys->identity();

    BarycentricData out;
    out.complex.group = sys;
    out.complex.dim = n;
    out.complex.cells.resize(z(n + 1));
    out.reps.resize(z(n + 1));
    out.omega_stab.resize(z(n + 1));

    auto orbit_min = [&](const Flag& f) {
        Flag best = f;
        for (auto& w : omy) {
            Flag g = apply_flag(w.perm, f);
            if (flag_less(g, best))
                best = g;
        }
        return best;
    };

    for (int d = 0; d <= n; ++d) {
        std::vector<Flag> flags;
        std::vector<unsigned> cur;
        all_flags(full, d + 1, cur, flags);
        std::vector<Flag> reps;
        for (auto& f : flags)
            if (flag_eq(orbit_min(f), f))
                reps.push_back(f);
        std::sort(reps.begin(), reps.end(), flag_less);

        for (auto& f : reps) {
            EquivariantCell cell;
            for (unsigned s : f.sets)
                cell.label.push_back(static_cast<int>(s));
            cell.name = flag_str(f);
            std::vector<int> fixed;  // S_0 minus the largest set
            for (int j = 0; j <= n; ++j)
                if (!(f.sets.back() & (1u << j)))
                    fixed.push_back(j);
            for (int j : fixed)
                cell.stabilizer.push_back(j == 0 ? hat->r() : sys->generator(j));
            long long wa = fixed.empty() ? 1 : finite_order(hat->matrix().submatrix(fixed));
            long long stab = 0;
            for (auto& w : omy)
                if (flag_eq(apply_flag(w.perm, f), f)) {
                    ++stab;
                    cell.stabilizer.push_back(w.image);
                }
            cell.stabilizer_order = wa * stab;
            if (d > 0) {
                const auto& lower = out.reps[z(d - 1)];
                for (int p = 0; p <= d; ++p) {
                    Flag face = f;
                    face.sets.erase(face.sets.begin() + p);
                    Flag m = orbit_min(face);
                    auto it = std::lower_bound(lower.begin(), lower.end(), m, flag_less);
                    if (it == lower.end() || !flag_eq(*it, m))
                        throw Error(ErrorCode::INCONSISTENT, "missing orbit representative " + flag_str(m));
                    const OmegaElement* twist = nullptr;
                    for (auto& w : omy)
                        if (flag_eq(apply_flag(w.perm, m), face)) {
                            twist = &w;
                            break;
                        }
                    cell.faces.push_back({static_cast<int>(it - lower.begin()), p % 2 ? -1 : 1,
                                          twist ? twist->image : id});
                }
            }
            out.complex.cells[z(d)].push_back(std::move(cell));
            out.omega_stab[z(d)].push_back(stab);
        }
        out.reps[z(d)] = std::move(reps);
    }
    return out;
}

ChainComplex barycentric_complex(const OmegaAction& om, const std::vector<int>& h_gens)
{
    return deflate(barycentric_data(om, h_gens).complex);
}

}  // namespace cxt

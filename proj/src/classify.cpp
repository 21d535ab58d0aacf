#include "coxtorus/coxeter.hpp"
#include "coxtorus/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace cxt {

CoxeterMatrix::CoxeterMatrix(int n) : n_(n), m_(static_cast<size_t>(n * n), 2)
{
    for (int i = 0; i < n; ++i)
        m_[static_cast<size_t>(i * n + i)] = 1;
}

CoxeterMatrix::CoxeterMatrix(int n, const std::vector<int>& entries) : n_(n), m_(entries)
{
    if (static_cast<int>(entries.size()) != n * n)
        throw Error(ErrorCode::INVALID_ARGUMENT, "Coxeter matrix has wrong number of entries");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int v = (*this)(i, j);
            if (v != (*this)(j, i))
                throw Error(ErrorCode::INVALID_ARGUMENT, "Coxeter matrix is not symmetric");
            if (i == j ? v != 1 : (v != kInfinity && v < 2))
                throw Error(ErrorCode::INVALID_ARGUMENT, "bad Coxeter matrix entry");
        }
}

void CoxeterMatrix::set(int i, int j, int m)
{
    if (i != j && m != kInfinity && m < 2)
        throw Error(ErrorCode::INVALID_ARGUMENT, "bad Coxeter matrix entry");
    m_[static_cast<size_t>(i * n_ + j)] = m;
    m_[static_cast<size_t>(j * n_ + i)] = m;
}

CoxeterMatrix CoxeterMatrix::submatrix(const std::vector<int>& idx) const
{
    CoxeterMatrix r(static_cast<int>(idx.size()));
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = a + 1; b < idx.size(); ++b)
            r.set(static_cast<int>(a), static_cast<int>(b), (*this)(idx[a], idx[b]));
    return r;
}

std::vector<int> CoxeterMatrix::labels() const
{
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            out.push_back((*this)(i, j));
    return out;
}

std::string CoxeterMatrix::str() const
{
    std::ostringstream os;
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            int v = (*this)(i, j);
            os << (j ? " " : "") << (v == kInfinity ? std::string("inf") : std::to_string(v));
        }
        os << "\n";
    }
    return os.str();
}

std::string TypeSpec::str() const
{
    if (family == 'I')
        return "I2(" + std::to_string(m) + ")";
    return std::string(1, family) + std::to_string(rank);
}

TypeSpec parse_type(const std::string& raw)
{
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    auto bad = [&]() { return Error(ErrorCode::INVALID_ARGUMENT, "unrecognised type '" + raw + "'"); };
    if (s.size() < 2)
        throw bad();
    TypeSpec t;
    t.family = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    if (t.family == 'I') {
        // I2(m), I2_m or I2m
        size_t pos = 1;
        if (s[pos] != '2')
            throw bad();
        ++pos;
        std::string rest = s.substr(pos);
        rest.erase(std::remove_if(rest.begin(), rest.end(), [](char c) { return c == '(' || c == ')' || c == '_'; }),
                   rest.end());
        if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit))
            throw bad();
        t.rank = 2;
        t.m = std::stoi(rest);
        if (t.m < 2)
            throw bad();
        return t;
    }
    std::string num = s.substr(1);
    if (num.empty() || !std::all_of(num.begin(), num.end(), ::isdigit))
        throw bad();
    t.rank = std::stoi(num);
    bool ok = false;
    switch (t.family) {
    case 'A': ok = t.rank >= 1; break;
    case 'B': ok = t.rank >= 2; break;
    case 'C': ok = t.rank >= 2; break;
    case 'D': ok = t.rank >= 4; break;
    case 'E': ok = t.rank >= 6 && t.rank <= 8; break;
    case 'F': ok = t.rank == 4; break;
    case 'G': ok = t.rank == 2; break;
    case 'H': ok = t.rank == 3 || t.rank == 4; break;
    default: break;
    }
    if (!ok)
        throw bad();
    return t;
}

namespace {

// edges (i, j, label) of the Dynkin diagram, 0-based, Bourbaki numbering
std::vector<std::tuple<int, int, int>> diagram_edges(const TypeSpec& t)
{
    std::vector<std::tuple<int, int, int>> e;
    int n = t.rank;
    switch (t.family) {
    case 'A':
        for (int i = 0; i + 1 < n; ++i)
            e.emplace_back(i, i + 1, 3);
        break;
    case 'B':
    case 'C':
        for (int i = 0; i + 2 < n; ++i)
            e.emplace_back(i, i + 1, 3);
        e.emplace_back(n - 2, n - 1, 4);
        break;
    case 'D':
        for (int i = 0; i + 2 < n; ++i)
            e.emplace_back(i, i + 1, 3);
        e.emplace_back(n - 3, n - 1, 3);
        break;
    case 'E':
        e.emplace_back(0, 2, 3);
        e.emplace_back(1, 3, 3);
        for (int i = 2; i + 1 < n; ++i)
            e.emplace_back(i, i + 1, 3);
        break;
    case 'F':
        e = {{0, 1, 3}, {1, 2, 4}, {2, 3, 3}};
        break;
    case 'G':
        e = {{0, 1, 6}};
        break;
    case 'H':
        e.emplace_back(0, 1, 5);
        for (int i = 1; i + 1 < n; ++i)
            e.emplace_back(i, i + 1, 3);
        break;
    case 'I':
        e = {{0, 1, t.m}};
        break;
    default:
        throw Error(ErrorCode::INVALID_ARGUMENT, "unknown family");
    }
    return e;
}

}  // namespace

CoxeterMatrix coxeter_matrix(const TypeSpec& t)
{
    CoxeterMatrix m(t.rank);
    for (auto [i, j, l] : diagram_edges(t))
        m.set(i, j, l);
    return m;
}

std::vector<std::vector<int>> cartan_matrix(const TypeSpec& t)
{
    if (!t.crystallographic())
        throw Error(ErrorCode::INVALID_ARGUMENT, t.str() + " has no Cartan integers");
    int n = t.rank;
    std::vector<std::vector<int>> a(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        a[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
    for (auto [i, j, l] : diagram_edges(t)) {
        auto& aij = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
        auto& aji = a[static_cast<size_t>(j)][static_cast<size_t>(i)];
        aij = aji = -1;
        if (l == 3)
            continue;
        // j short in B and F, i short in C and G
        bool j_short = t.family == 'B' || t.family == 'F';
        int k = l == 4 ? -2 : -3;
        if (j_short)
            aji = k;
        else
            aij = k;
    }
    return a;
}

std::vector<std::pair<TypeSpec, std::vector<int>>> finite_components(const CoxeterMatrix& m)
{
    int n = m.size();
    std::vector<int> comp(static_cast<size_t>(n), -1);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<size_t>(s)] >= 0)
            continue;
        std::vector<int> members{s};
        comp[static_cast<size_t>(s)] = static_cast<int>(comps.size());
        for (size_t k = 0; k < members.size(); ++k)
            for (int j = 0; j < n; ++j)
                if (j != members[k] && m(members[k], j) != 2 && comp[static_cast<size_t>(j)] < 0) {
                    comp[static_cast<size_t>(j)] = static_cast<int>(comps.size());
                    members.push_back(j);
                }
        std::sort(members.begin(), members.end());
        comps.push_back(members);
    }

    auto infinite = [&]() { return Error(ErrorCode::FINITE_TYPE_REQUIRED, "Coxeter matrix is not of finite type"); };
    std::vector<std::pair<TypeSpec, std::vector<int>>> out;
    for (auto& c : comps) {
        int r = static_cast<int>(c.size());
        TypeSpec t;
        t.rank = r;
        if (r == 1) {
            t.family = 'A';
        } else if (r == 2) {
            int l = m(c[0], c[1]);
            if (l == kInfinity)
                throw infinite();
            t.family = 'I';
            t.m = l;
        } else {
            std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(r));
            int nedges = 0, n4 = 0, n5 = 0;
            for (int a = 0; a < r; ++a)
                for (int b = a + 1; b < r; ++b) {
                    int l = m(c[static_cast<size_t>(a)], c[static_cast<size_t>(b)]);
                    if (l == 2)
                        continue;
                    if (l != 3 && l != 4 && l != 5)
                        throw infinite();
                    adj[static_cast<size_t>(a)].emplace_back(b, l);
                    adj[static_cast<size_t>(b)].emplace_back(a, l);
                    ++nedges;
                    n4 += l == 4;
                    n5 += l == 5;
                }
            if (nedges != r - 1 || n4 + n5 > 1)
                throw infinite();
            int maxdeg = 0, branch = -1;
            for (int a = 0; a < r; ++a) {
                int d = static_cast<int>(adj[static_cast<size_t>(a)].size());
                if (d > maxdeg)
                    maxdeg = d;
                if (d == 3)
                    branch = a;
            }
            if (maxdeg > 3)
                throw infinite();
            if (maxdeg <= 2) {
                // path: locate the special edge position
                int end = 0;
                while (adj[static_cast<size_t>(end)].size() != 1)
                    ++end;
                std::vector<int> order{end};
                std::vector<int> lab;
                int prev = -1, cur = end;
                while (true) {
                    int next = -1, l = 0;
                    for (auto [b, lb] : adj[static_cast<size_t>(cur)])
                        if (b != prev) {
                            next = b;
                            l = lb;
                        }
                    if (next < 0)
                        break;
                    lab.push_back(l);
                    order.push_back(next);
                    prev = cur;
                    cur = next;
                }
                int pos = -1, special = 3;
                for (size_t k = 0; k < lab.size(); ++k)
                    if (lab[k] != 3) {
                        pos = static_cast<int>(k);
                        special = lab[k];
                    }
                bool at_end = pos == 0 || pos == static_cast<int>(lab.size()) - 1;
                if (special == 3)
                    t.family = 'A';
                else if (special == 4 && at_end)
                    t.family = 'B';
                else if (special == 4 && r == 4)
                    t.family = 'F';
                else if (special == 5 && at_end && r <= 4)
                    t.family = 'H';
                else
                    throw infinite();
            } else {
                if (n4 + n5 > 0)
                    throw infinite();
                std::vector<int> arms;
                for (auto [b0, l0] : adj[static_cast<size_t>(branch)]) {
                    (void)l0;
                    int len = 1, prev = branch, cur = b0;
                    while (true) {
                        int next = -1;
                        for (auto [b, lb] : adj[static_cast<size_t>(cur)])
                            if (b != prev)
                                next = b;
                        if (next < 0)
                            break;
                        if (adj[static_cast<size_t>(cur)].size() > 2)
                            throw infinite();
                        prev = cur;
                        cur = next;
                        ++len;
                    }
                    arms.push_back(len);
                }
                std::sort(arms.begin(), arms.end());
                if (arms[0] == 1 && arms[1] == 1)
                    t.family = 'D';
                else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
                    t.family = 'E';
                else
                    throw infinite();
            }
        }
        out.emplace_back(t, c);
    }
    return out;
}

std::vector<int> degrees(const TypeSpec& t)
{
    std::vector<int> d;
    int n = t.rank;
    switch (t.family) {
    case 'A':
        for (int i = 2; i <= n + 1; ++i)
            d.push_back(i);
        break;
    case 'B':
    case 'C':
        for (int i = 1; i <= n; ++i)
            d.push_back(2 * i);
        break;
    case 'D':
        for (int i = 1; i < n; ++i)
            d.push_back(2 * i);
        d.push_back(n);
        break;
    case 'E':
        if (n == 6)
            d = {2, 5, 6, 8, 9, 12};
        else if (n == 7)
            d = {2, 6, 8, 10, 12, 14, 18};
        else
            d = {2, 8, 12, 14, 18, 20, 24, 30};
        break;
    case 'F': d = {2, 6, 8, 12}; break;
    case 'G': d = {2, 6}; break;
    case 'H': d = n == 3 ? std::vector<int>{2, 6, 10} : std::vector<int>{2, 12, 20, 30}; break;
    case 'I': d = {2, t.m}; break;
    default: throw Error(ErrorCode::INVALID_ARGUMENT, "unknown family");
    }
    std::sort(d.begin(), d.end());
    return d;
}

long long finite_order(const CoxeterMatrix& m)
{
    long long order = 1;
    for (auto& [t, verts] : finite_components(m))
        for (int d : degrees(t))
            order *= d;
    return order;
}

std::string word_str(const Word& w)
{
    std::string s;
    for (size_t k = 0; k < w.size(); ++k)
        s += (k ? "," : "") + std::to_string(w[k]);
    return "[" + s + "]";
}

}  // namespace cxt

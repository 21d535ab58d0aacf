#include "coxtorus/tessellate.hpp"

#include "coxtorus/error.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace cxt {

namespace {

using Vec = std::array<double, 3>;
using Mat = std::array<Vec, 3>;

Mat to_double(const FMatrix& m)
{
    Mat r{};
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            r[i][j] = m[i][j].to_double();
    return r;
}

Vec mat_vec(const Mat& m, const Vec& v)
{
    Vec r{};
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            r[i] += m[i][j] * v[j];
    return r;
}

Mat inverse(const Mat& a)
{
    Mat c{};
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            size_t i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
            c[j][i] = a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1];
        }
    double det = a[0][0] * c[0][0] + a[0][1] * c[1][0] + a[0][2] * c[2][0];
    for (auto& row : c)
        for (auto& x : row)
            x /= det;
    return c;
}

// Minkowski frame for the invariant form, centred on the fundamental chamber
struct Frame {
    Mat b{};
    Vec t{}, e1{}, e2{};

    double form(const Vec& x, const Vec& y) const
    {
        double s = 0;
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j)
                s += x[i] * b[i][j] * y[j];
        return s;
    }

    // point of the disk for a timelike vector
    std::array<double, 2> disk(const Vec& x) const
    {
        double n = std::sqrt(-form(x, x));
        double tt = -form(x, t) / n, x1 = form(x, e1) / n, x2 = form(x, e2) / n;
        return {x2 / (1 + tt), -x1 / (1 + tt)};
    }
};

Vec combine(const Vec& a, double s, const Vec& b)
{
    return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
}

Vec scaled(const Vec& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

void require_triangle_group(const HatGroup& h)
{
    if (h.rank() != 3 || h.diagram_class() != DiagramClass::COMPACT_HYPERBOLIC)
        throw Error(ErrorCode::NOT_APPLICABLE, "tessellation needs a compact hyperbolic triangle group, got " +
                                                   to_string(h.diagram_class()) + " of rank " + std::to_string(h.rank()));
}

struct Geometry {
    Frame frame;
    std::array<Vec, 3> vertices;  // of the fundamental chamber
};

Geometry geometry(const HatGroup& h)
{
    Geometry g;
    g.frame.b = to_double(h.invariant_form());
    Mat binv = inverse(g.frame.b);
    for (size_t i = 0; i < 3; ++i) {
        g.vertices[i] = binv[i];  // B v_i = e_i, B symmetric
        if (g.frame.form(g.vertices[i], g.vertices[i]) >= 0)
            throw Error(ErrorCode::INCONSISTENT, "vertex of the fundamental chamber is not timelike");
    }
    // all vertices on the sheet of v_0
    for (size_t i = 1; i < 3; ++i)
        if (g.frame.form(g.vertices[i], g.vertices[0]) > 0)
            g.vertices[i] = scaled(g.vertices[i], -1);
    Frame& f = g.frame;
    Vec c{};
    for (auto& v : g.vertices)
        c = combine(c, 1 / std::sqrt(-f.form(v, v)), v);
    f.t = scaled(c, 1 / std::sqrt(-f.form(c, c)));
    Vec u = combine(g.vertices[0], f.form(g.vertices[0], f.t), f.t);
    f.e1 = scaled(u, 1 / std::sqrt(f.form(u, u)));
    u = combine(combine(g.vertices[1], f.form(g.vertices[1], f.t), f.t), -f.form(g.vertices[1], f.e1), f.e1);
    f.e2 = scaled(u, 1 / std::sqrt(f.form(u, u)));
    return g;
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", std::abs(x) < 5e-6 ? 0.0 : x);
    return buf;
}

struct Chamber {
    Word word;
    bool in_q = false;
    std::array<Vec, 3> v;  // hyperboloid vertices
};

std::vector<Chamber> chambers(const HatGroup& h, const Geometry& geo, int depth)
{
    if (depth < 0)
        throw Error(ErrorCode::INVALID_ARGUMENT, "negative depth");
    Element one = h.base()->identity();
    std::vector<Chamber> out;
    std::function<void(const HatElement&)> visit = [&](const HatElement& x) {
        Chamber c;
        c.word = x.word;
        c.in_q = h.project(x) == one;
        Mat m = to_double(x.mat);
        for (size_t i = 0; i < 3; ++i)
            c.v[i] = mat_vec(m, geo.vertices[i]);
        out.push_back(std::move(c));
        if (x.length() == depth)
            return;
        for (int s = 0; s < 3; ++s) {
            Word w = x.word;
            w.push_back(s);
            HatElement y = h.normal_form(w);
            if (y.word == w)
                visit(y);
        }
    };
    visit(h.identity());
    return out;
}

}  // namespace

std::vector<DiskTriangle> disk_tessellation(const HatGroup& h, int depth)
{
    require_triangle_group(h);
    Geometry geo = geometry(h);
    std::vector<DiskTriangle> out;
    for (auto& c : chambers(h, geo, depth)) {
        DiskTriangle t;
        t.word = c.word;
        t.in_q = c.in_q;
        for (size_t i = 0; i < 3; ++i)
            t.vertices[i] = geo.frame.disk(c.v[i]);
        out.push_back(std::move(t));
    }
    return out;
}

std::string tessellation_svg(const HatGroup& h, const SvgOptions& opt)
{
    require_triangle_group(h);
    if (opt.samples < 1 || opt.size < 1)
        throw Error(ErrorCode::INVALID_ARGUMENT, "samples and size must be positive");
    Geometry geo = geometry(h);
    std::vector<Chamber> tris = chambers(h, geo, opt.depth);

    // geodesic from a to b: normalised chords of the hyperboloid
    auto edge_points = [&](const Vec& a, const Vec& b, std::vector<std::array<double, 2>>& pts) {
        Vec an = scaled(a, 1 / std::sqrt(-geo.frame.form(a, a))), bn = scaled(b, 1 / std::sqrt(-geo.frame.form(b, b)));
        for (int k = 0; k < opt.samples; ++k) {
            double s = static_cast<double>(k) / opt.samples;
            pts.push_back(geo.frame.disk(combine(scaled(an, 1 - s), s, bn)));
        }
    };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.size << "\" height=\"" << opt.size
       << "\" viewBox=\"-1.02 -1.02 2.04 2.04\">\n";
    auto& type = h.base()->type();
    os << "<title>" << (type ? type->str() : std::string("Coxeter")) << " hat group, " << tris.size() << " chambers to length " << opt.depth
       << "</title>\n";
    os << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"#f4f4f4\" stroke=\"#000\" stroke-width=\"0.004\"/>\n";

    std::map<std::string, int> vertices;  // position -> type, for the skeleton
    std::set<std::string> edges;
    for (auto& t : tris) {
        const auto& v = t.v;
        if (!opt.skeleton) {
            std::vector<std::array<double, 2>> pts;
            for (size_t i = 0; i < 3; ++i)
                edge_points(v[i], v[(i + 1) % 3], pts);
            os << "<polygon fill=\"" << (t.in_q ? "#3aa655" : "#ffffff")
               << "\" stroke=\"#333\" stroke-width=\"0.002\" points=\"";
            for (size_t k = 0; k < pts.size(); ++k)
                os << (k ? " " : "") << fmt(pts[k][0]) << "," << fmt(pts[k][1]);
            os << "\"/>\n";
            continue;
        }
        for (size_t i = 0; i < 3; ++i) {
            auto p = geo.frame.disk(v[i]);
            vertices.emplace(fmt(p[0]) + "," + fmt(p[1]), static_cast<int>(i));
            for (size_t j = i + 1; j < 3; ++j) {
                std::vector<std::array<double, 2>> pts;
                edge_points(v[i], v[j], pts);
                pts.push_back(geo.frame.disk(v[j]));
                std::string a = fmt(pts.front()[0]) + "," + fmt(pts.front()[1]);
                std::string b = fmt(pts.back()[0]) + "," + fmt(pts.back()[1]);
                if (!edges.insert(a < b ? a + " " + b : b + " " + a).second)
                    continue;
                os << "<polyline fill=\"none\" stroke=\"#333\" stroke-width=\"0.003\" points=\"";
                for (size_t k = 0; k < pts.size(); ++k)
                    os << (k ? " " : "") << fmt(pts[k][0]) << "," << fmt(pts[k][1]);
                os << "\"/>\n";
            }
        }
    }
    if (opt.skeleton) {
        static const char* colours[] = {"#000000", "#ffffff", "#d03030"};
        for (auto& [pos, type] : vertices) {
            auto comma = pos.find(',');
            os << "<circle cx=\"" << pos.substr(0, comma) << "\" cy=\"" << pos.substr(comma + 1)
               << "\" r=\"0.008\" fill=\"" << colours[type] << "\" stroke=\"#000\" stroke-width=\"0.002\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace cxt

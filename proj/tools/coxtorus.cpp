// coxtorus: command line front end for the torus complexes of finite Coxeter groups.

#include "coxtorus/cochain.hpp"
#include "coxtorus/complex.hpp"
#include "coxtorus/error.hpp"
#include "coxtorus/fungroup.hpp"
#include "coxtorus/homology.hpp"
#include "coxtorus/reptheory.hpp"
#include "coxtorus/serialize.hpp"
#include "coxtorus/tessellate.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace cxt;

namespace {

struct Job {
    std::string type;
    int m = 0;
    std::string lattice;
    std::string primes;
    double snf_threshold = -1;
    std::string mode;
    int depth = 6;
    bool skeleton = false;
    std::string stage = "reduced";
    std::string out;
    std::string input;
    bool json = false;
};

TypeSpec resolve_type(const Job& j)
{
    if (j.type.empty())
        throw Error(ErrorCode::INVALID_ARGUMENT, "--type is required");
    std::string s = j.type;
    if (j.m) {
        if (s != "I2" && s != "I")
            throw Error(ErrorCode::INVALID_ARGUMENT, "--m only applies to --type I2");
        s = "I2(" + std::to_string(j.m) + ")";
    } else if (s == "I2" || s == "I") {
        throw Error(ErrorCode::INVALID_ARGUMENT, "--type I2 needs --m");
    }
    return parse_type(s);
}

std::vector<std::string> split(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty())
            out.push_back(item);
    return out;
}

int to_int(const std::string& s, const char* what)
{
    size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw Error(ErrorCode::INVALID_ARGUMENT, std::string("bad ") + what + " '" + s + "'");
    return v;
}

HomologyOptions homology_options(const Job& j, HomologyMode fallback = HomologyMode::INTEGRAL)
{
    HomologyOptions opt;
    opt.mode = fallback;
    if (j.mode == "integral")
        opt.mode = HomologyMode::INTEGRAL;
    else if (j.mode == "modular")
        opt.mode = HomologyMode::MODULAR;
    else if (j.mode == "rational")
        opt.mode = HomologyMode::RATIONAL;
    else if (!j.mode.empty())
        throw Error(ErrorCode::INVALID_ARGUMENT, "mode must be integral, modular or rational");
    if (!j.primes.empty()) {
        opt.primes.clear();
        for (auto& p : split(j.primes)) {
            int v = to_int(p, "prime");
            if (v < 2)
                throw Error(ErrorCode::INVALID_ARGUMENT, "bad prime '" + p + "'");
            opt.primes.push_back(static_cast<uint32_t>(v));
        }
    }
    if (j.snf_threshold >= 0)
        opt.snf_limit = j.snf_threshold;
    return opt;
}

// "" is T(W); otherwise a barycentric quotient of the simply connected torus by a subgroup of
// Omega: "sc" (trivial), "full", or a comma list of minuscule letters
struct Built {
    TypeSpec type;
    System sys;
    ChainComplex complex;
    std::string lattice;
};

std::vector<int> lattice_generators(const OmegaAction& om, const std::string& lattice)
{
    if (lattice == "sc")
        return {};
    if (lattice == "full")
        return om.minuscule;
    std::vector<int> gens;
    for (auto& s : split(lattice)) {
        int i = to_int(s, "lattice generator");
        if (std::find(om.minuscule.begin(), om.minuscule.end(), i) == om.minuscule.end())
            throw Error(ErrorCode::INVALID_ARGUMENT, "lattice generator " + s + " is not a minuscule node of " +
                                                         om.type.str());
        gens.push_back(i);
    }
    return gens;
}

Built build(const Job& j)
{
    Built b{resolve_type(j), nullptr, {}, j.lattice};
    b.sys = CoxeterSystem::create(b.type);
    if (j.lattice.empty()) {
        b.complex = torus_complex(*hat_group(b.sys));
        return b;
    }
    if (!b.type.crystallographic())
        throw Error(ErrorCode::NOT_APPLICABLE, "--lattice needs a crystallographic type, got " + b.type.str());
    OmegaAction om = omega_action(b.type);
    b.complex = barycentric_complex(om, lattice_generators(om, j.lattice));
    return b;
}

void emit(const Job& j, const std::string& content)
{
    if (j.out.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(j.out, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::INVALID_ARGUMENT, "cannot write " + j.out);
    f << content;
    if (!f)
        throw Error(ErrorCode::INVALID_ARGUMENT, "cannot write " + j.out);
}

template <class T>
std::string joined(const std::vector<T>& v, const char* sep = " ")
{
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i)
        os << (i ? sep : "") << v[i];
    return os.str();
}

// rows separated by '/', infinity as "inf"
std::string diagram_line(const CoxeterMatrix& m)
{
    std::ostringstream os;
    for (int i = 0; i < m.size(); ++i) {
        os << (i ? " / " : "");
        for (int j = 0; j < m.size(); ++j) {
            os << (j ? " " : "");
            if (m(i, j) == kInfinity)
                os << "inf";
            else
                os << m(i, j);
        }
    }
    return os.str();
}

std::string torsion_str(const HomologyReport& r)
{
    std::ostringstream os;
    bool any = false;
    for (size_t k = 0; k < r.torsion.size(); ++k)
        for (auto& t : r.torsion[k]) {
            os << (any ? ", " : "") << "H_" << k << ": Z/" << t;
            any = true;
        }
    return any ? os.str() : "none";
}

void print_report(std::ostream& os, const std::string& type, const HomologyReport& r)
{
    os << "type: " << type << "\n";
    os << "f-vector: " << joined(r.f_vector) << "\n";
    os << "betti: " << joined(r.betti) << "\n";
    os << "torsion: " << torsion_str(r) << "\n";
    os << "certification: " << to_string(r.certification) << "\n";
    for (auto& [p, b] : r.modular_betti)
        os << "betti mod " << p << ": " << joined(b) << "\n";
    if (!r.modular_betti.empty())
        os << "modular ranks agree: " << (r.torsion_free_evidence ? "yes" : "no") << "\n";
    os << "euler characteristic: " << r.euler << "\n";
}

int cmd_complex(const Job& j)
{
    Built b = build(j);
    std::string text = complex_to_json(complex_file(b.complex, b.type, b.lattice));
    emit(j, text);
    if (!j.out.empty())
        std::cout << "f-vector: " << joined(b.complex.f_vector()) << "\n";
    return 0;
}

int cmd_homology(const Job& j)
{
    std::string type;
    HomologyReport r;
    if (!j.input.empty()) {
        if (!j.type.empty() || !j.lattice.empty())
            throw Error(ErrorCode::INVALID_ARGUMENT, "--input replaces --type and --lattice");
        std::ifstream f(j.input, std::ios::binary);
        if (!f)
            throw Error(ErrorCode::INVALID_ARGUMENT, "cannot read " + j.input);
        std::stringstream ss;
        ss << f.rdbuf();
        ComplexFile cf = complex_from_json(ss.str());
        type = cf.type + (cf.lattice.empty() ? "" : " lattice " + cf.lattice);
        r = homology(cf, homology_options(j));
    } else {
        Built b = build(j);
        type = b.type.str() + (b.lattice.empty() ? "" : " lattice " + b.lattice);
        r = homology(b.complex, homology_options(j));
    }
    if (j.json) {
        std::cout << report_to_json(r, type);
    } else {
        print_report(std::cout, type, r);
    }
    if (!j.out.empty())
        emit(j, report_to_json(r, type));
    return 0;
}

long long binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

int cmd_cupring(const Job& j)
{
    Built b = build(j);
    CupProductRanks r = cup_product_ranks(b.complex);
    bool exterior = true;
    int b1 = r.betti.size() > 1 ? r.betti[1] : 0;
    for (size_t k = 0; k < r.betti.size(); ++k) {
        std::cout << "H^" << k << ": dim " << r.betti[k] << ", products of degree-one classes span " << r.products[k]
                  << "\n";
        exterior = exterior && r.betti[k] == binomial(b1, static_cast<int>(k)) && r.products[k] == r.betti[k];
    }
    std::cout << "exterior algebra on H^1: " << (exterior ? "yes" : "no") << "\n";
    return 0;
}

int cmd_pi1(const Job& j)
{
    if (!j.lattice.empty())
        throw Error(ErrorCode::NOT_APPLICABLE, "pi1 is computed for T(W) only");
    Hat h = hat_group(CoxeterSystem::create(resolve_type(j)));
    Presentation p = pi1_presentation(*h);
    bool lattice = p.images.empty();
    if (j.stage == "paired" || j.stage == "reduced")
        p = lattice ? p : pair_sides(p);
    if (j.stage == "reduced")
        p = eliminate_generators(p);
    else if (j.stage != "raw" && j.stage != "paired")
        throw Error(ErrorCode::INVALID_ARGUMENT, "stage must be raw, paired or reduced");
    if (!lattice && !verify_relators(p))
        throw Error(ErrorCode::INCONSISTENT, "a relator is not the identity in hat W");

    bool json_file = j.out.size() > 5 && j.out.compare(j.out.size() - 5, 5, ".json") == 0;
    if (!j.out.empty())
        emit(j, json_file ? presentation_to_json(p) : to_text(p));
    if (j.json) {
        std::cout << presentation_to_json(p);
        return 0;
    }
    std::map<size_t, int> lengths;
    for (auto& r : p.relators)
        ++lengths[r.size()];
    std::cout << "generators: " << p.num_generators() << "\n";
    std::cout << "relators: " << p.relators.size();
    for (auto& [len, count] : lengths)
        std::cout << (len == lengths.begin()->first ? " (" : ", ") << count << " of length " << len;
    std::cout << (lengths.empty() ? "" : ")") << "\n";
    std::cout << "total length: " << p.total_length() << "\n";
    std::cout << "abelianization: " << abelianization(p).str() << "\n";
    if (!lattice)
        std::cout << "relators verified in hat W: yes\n";
    if (j.out.empty())
        std::cout << to_text(p);
    return 0;
}

int cmd_decompose(const Job& j)
{
    if (!j.lattice.empty())
        throw Error(ErrorCode::NOT_APPLICABLE, "decompose is computed for T(W) only");
    TypeSpec t = resolve_type(j);
    if (t.family != 'I' && t.family != 'H')
        throw Error(ErrorCode::NOT_APPLICABLE, "character tables are available for I2(m), H3 and H4, not " + t.str());
    System sys = CoxeterSystem::create(t);
    Hat h = hat_group(sys);
    if (h->diagram_class() != DiagramClass::COMPACT_HYPERBOLIC)
        throw Error(ErrorCode::NOT_APPLICABLE, t.str() + " has a " + to_string(h->diagram_class()) + " extension");
    CharTable table = char_table(sys);
    ChainComplex c = torus_complex(*h);
    HomologyReport r = homology(c, homology_options(j, HomologyMode::RATIONAL));
    HomologyDecomposition d = decompose_homology(*h, r.betti, table);
    if (d.ambiguous())
        resolve_by_projection(d, c, table);
    if (j.json) {
        std::cout << decomposition_to_json(d, table);
        return 0;
    }
    std::cout << "type: " << t.str() << "\n";
    std::cout << "betti: " << joined(r.betti) << "\n";
    std::cout << "hopf character: "
              << format_decomposition(table, decompose_virtual(table, hopf_virtual_character(*h, table.classes)))
              << "\n";
    for (size_t s = 0; s < d.solutions.size(); ++s) {
        if (d.solutions.size() > 1)
            std::cout << "candidate " << s + 1 << ":\n";
        for (size_t k = 0; k < d.solutions[s].size(); ++k)
            std::cout << "H_" << k << " = " << format_decomposition(table, d.solutions[s][k]) << "\n";
    }
    if (d.projected)
        std::cout << "candidates separated by isotypic projection\n";
    return d.ambiguous() ? 3 : 0;
}

int cmd_scan(const Job& j)
{
    System sys = CoxeterSystem::create(resolve_type(j));
    auto entries = scan_reflection_extensions(*sys);
    std::map<std::string, int> counts;
    std::cout << "reflections: " << sys->num_positive_roots() << "\n";
    for (auto& e : entries) {
        std::string cls = e.degenerate ? "DEGENERATE" : to_string(e.cls);
        ++counts[cls];
        std::cout << cls << "  roots " << e.roots.size() << "  r = " << word_str(e.rep) << "  diagram "
                  << diagram_line(e.diagram) << "\n";
    }
    for (auto& [cls, n] : counts)
        std::cout << cls << ": " << n << "\n";
    return 0;
}

int cmd_lattice(const Job& j)
{
    TypeSpec t = resolve_type(j);
    if (!t.crystallographic())
        throw Error(ErrorCode::NOT_APPLICABLE, "lattice needs a crystallographic type, got " + t.str());
    OmegaAction om = omega_action(t);
    std::cout << "type: " << t.str() << "\n";
    std::cout << "fundamental group: " << om.structure() << "\n";
    std::cout << "highest root coefficients: " << joined(om.highest_coeffs) << "\n";
    std::cout << "minuscule nodes: " << (om.minuscule.empty() ? "none" : joined(om.minuscule)) << "\n";
    for (auto& [i, perm] : om.perms)
        std::cout << "omega_" << i << ": " << cycle_str(perm) << ", w = " << word_str(om.finite_parts.at(i).word)
                  << "\n";
    for (size_t v = 0; v < om.vertices.size(); ++v) {
        std::cout << "v_" << v << " =";
        for (auto& x : om.vertices[v])
            std::cout << " " << x;
        std::cout << "\n";
    }
    if (!j.lattice.empty()) {
        BarycentricData bd = barycentric_data(om, lattice_generators(om, j.lattice));
        ChainComplex c = deflate(bd.complex);
        std::cout << "lattice " << j.lattice << ": orbits";
        for (auto& reps : bd.reps)
            std::cout << " " << reps.size();
        std::cout << ", f-vector " << joined(c.f_vector()) << "\n";
    }
    return 0;
}

int cmd_tessellate(const Job& j)
{
    Hat h = hat_group(CoxeterSystem::create(resolve_type(j)));
    SvgOptions opt;
    opt.depth = j.depth;
    opt.skeleton = j.skeleton;
    emit(j, tessellation_svg(*h, opt));
    return 0;
}

std::string elliptic_point(const TypeSpec& t)
{
    if (t.family == 'B' && t.rank == 2)
        return "tau = i, j(tau) = 1728";
    if ((t.family == 'A' && t.rank == 2) || t.family == 'G')
        return "tau = exp(2 pi i / 3), j(tau) = 0";
    return "";
}

int cmd_report(const Job& j)
{
    if (!j.lattice.empty())
        throw Error(ErrorCode::NOT_APPLICABLE, "report describes T(W); use homology --lattice for quotients");
    TypeSpec t = resolve_type(j);
    System sys = CoxeterSystem::create(t);
    Hat h = hat_group(sys);
    ChainComplex c = torus_complex(*h);
    HomologyReport r = homology(c, homology_options(j));
    std::cout << "type: " << t.str() << "\n";
    std::cout << "order of W: " << sys->order() << "\n";
    std::cout << "extension: " << to_string(h->diagram_class()) << ", r = " << word_str(h->r_word()) << "\n";
    std::cout << "extended diagram: " << diagram_line(h->matrix()) << "\n";
    std::cout << "f-vector: " << joined(r.f_vector) << "\n";
    std::cout << "euler characteristic: " << r.euler << "\n";
    std::cout << "W(q)/hat W(q) at q = 1: " << poincare_series_check(*h) << "\n";
    std::cout << "betti: " << joined(r.betti) << "\n";
    std::cout << "torsion: " << torsion_str(r) << "\n";
    std::cout << "certification: " << to_string(r.certification) << "\n";
    if (c.dim == 2 || c.dim == 4) {
        try {
            std::cout << (c.dim == 2 ? "area: " : "volume: ") << geometric_report(r.euler, c.dim, h->diagram_class()).str()
                      << "\n";
        } catch (const Error&) {
        }
    }
    if (h->rank() == 3) {
        FieldElem tr = q0_trace(*h);
        std::cout << "trace of q0: " << tr.str() << " ~ " << approximate(tr, 6) << "\n";
    }
    if (auto e = elliptic_point(t); !e.empty())
        std::cout << "elliptic point: " << e << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"torus complexes of finite Coxeter groups"};
    app.require_subcommand(1);
    Job job;

    auto add_type = [&](CLI::App* c) {
        c->add_option("--type", job.type, "Coxeter type: A1..A8, B2.., H3, H4, I2 (with --m) or I2(m)")->required();
        c->add_option("--m", job.m, "dihedral parameter for I2")->check(CLI::PositiveNumber);
    };
    auto add_homology = [&](CLI::App* c) {
        c->add_option("--primes", job.primes, "comma separated primes for modular ranks");
        c->add_option("--snf-threshold", job.snf_threshold, "nnz * rows above which full SNF is skipped");
        c->add_option("--mode", job.mode, "integral, modular or rational");
    };
    auto add_lattice = [&](CLI::App* c) {
        c->add_option("--lattice", job.lattice, "quotient of the simply connected torus: sc, full or minuscule nodes");
    };

    std::map<CLI::App*, int (*)(const Job&)> handlers;
    auto sub = [&](const char* name, const char* desc, int (*f)(const Job&)) {
        CLI::App* c = app.add_subcommand(name, desc);
        handlers[c] = f;
        return c;
    };

    CLI::App* c = sub("complex", "chain complex as JSON", cmd_complex);
    add_type(c);
    add_lattice(c);
    c->add_option("--out", job.out, "output file");

    c = sub("homology", "integral homology", cmd_homology);
    c->add_option("--type", job.type, "Coxeter type");
    c->add_option("--m", job.m, "dihedral parameter for I2")->check(CLI::PositiveNumber);
    c->add_option("--input", job.input, "complex JSON file instead of --type");
    add_lattice(c);
    add_homology(c);
    c->add_flag("--json", job.json, "print the report as JSON");
    c->add_option("--out", job.out, "write the JSON report here");

    c = sub("cupring", "products of degree-one cohomology classes", cmd_cupring);
    add_type(c);
    add_lattice(c);

    c = sub("pi1", "fundamental group presentation", cmd_pi1);
    add_type(c);
    c->add_option("--stage", job.stage, "raw, paired or reduced");
    c->add_flag("--json", job.json, "print the presentation as JSON");
    c->add_option("--out", job.out, "presentation file (.json for JSON, else plain text)");

    c = sub("decompose", "homology as a W-representation", cmd_decompose);
    add_type(c);
    add_homology(c);
    c->add_flag("--json", job.json, "print the decomposition as JSON");

    c = sub("scan", "extensions by every reflection", cmd_scan);
    add_type(c);

    c = sub("lattice", "fundamental group of the root system and lattice quotients", cmd_lattice);
    add_type(c);
    add_lattice(c);

    c = sub("tessellate", "SVG of the Poincare disk tessellation", cmd_tessellate);
    add_type(c);
    c->add_option("--depth", job.depth, "maximal word length")->check(CLI::NonNegativeNumber);
    c->add_flag("--skeleton", job.skeleton, "draw the 1-skeleton with typed vertices only");
    c->add_option("--out", job.out, "output file");

    c = sub("report", "summary of T(W)", cmd_report);
    add_type(c);
    add_homology(c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        for (auto& [cmd, f] : handlers)
            if (cmd->parsed())
                return f(job);
    } catch (const Error& e) {
        std::cerr << "coxtorus: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "coxtorus: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

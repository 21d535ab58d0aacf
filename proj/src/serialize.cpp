#include "coxtorus/serialize.hpp"

#include "coxtorus/error.hpp"

#include <json.hpp>

#include <numeric>

namespace cxt {

using nlohmann::json;

namespace {

std::string dec(long long v) { return std::to_string(v); }
std::string dec(const Integer& v) { return v.get_str(); }

[[noreturn]] void corrupt(const std::string& what) { throw Error(ErrorCode::CORRUPT_TABLE, "complex file: " + what); }

long long parse_ll(const json& j)
{
    if (!j.is_string())
        corrupt("expected a decimal string");
    const std::string& s = j.get_ref<const std::string&>();
    size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        corrupt("bad integer '" + s + "'");
    }
    if (used != s.size())
        corrupt("bad integer '" + s + "'");
    return v;
}

Integer parse_integer(const json& j)
{
    if (!j.is_string())
        corrupt("expected a decimal string");
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0)
        corrupt("bad integer '" + j.get<std::string>() + "'");
    return v;
}

const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        corrupt(std::string("missing '") + key + "'");
    return j.at(key);
}

json strings(const std::vector<Integer>& v)
{
    json a = json::array();
    for (auto& x : v)
        a.push_back(dec(x));
    return a;
}

}  // namespace

std::vector<int> ComplexFile::ranks() const
{
    std::vector<int> r;
    for (auto& d : degrees)
        r.push_back(static_cast<int>(std::accumulate(d.coset_sizes.begin(), d.coset_sizes.end(), 0LL)));
    return r;
}

std::vector<long long> ComplexFile::f_vector() const
{
    std::vector<long long> f;
    for (int r : ranks())
        f.push_back(r);
    return f;
}

ComplexFile complex_file(const ChainComplex& c, const TypeSpec& t, const std::string& lattice)
{
    ComplexFile f;
    f.type = t.str();
    f.rank = t.rank;
    f.m = t.family == 'I' ? t.m : 0;
    f.lattice = lattice;
    for (auto& cells : c.cells) {
        ComplexFile::Degree d;
        for (auto& cell : cells) {
            d.subsets.push_back(cell.label);
            d.coset_sizes.push_back(static_cast<long long>(cell.cosets.reps.size()));
            d.labels.push_back(cell.name);
        }
        f.degrees.push_back(std::move(d));
    }
    for (int k = 1; k <= c.dim; ++k)
        f.boundaries.push_back(c.boundary[static_cast<size_t>(k)]);
    return f;
}

std::string complex_to_json(const ComplexFile& f)
{
    json j;
    j["type"] = f.type;
    j["rank"] = dec(f.rank);
    if (f.m)
        j["m"] = dec(f.m);
    if (!f.lattice.empty())
        j["lattice"] = f.lattice;
    j["degrees"] = json::array();
    j["labels"] = json::array();
    for (auto& d : f.degrees) {
        json sizes = json::array();
        for (long long s : d.coset_sizes)
            sizes.push_back(dec(s));
        j["degrees"].push_back({{"subsets", d.subsets}, {"coset_sizes", sizes}});
        j["labels"].push_back(d.labels);
    }
    json fv = json::array();
    for (long long x : f.f_vector())
        fv.push_back(dec(x));
    j["f_vector"] = fv;
    j["boundaries"] = json::array();
    for (size_t k = 0; k < f.boundaries.size(); ++k) {
        json trip = json::array();
        for (auto& [r, c, v] : f.boundaries[k].triplets())
            trip.push_back({r, c, dec(v)});
        j["boundaries"].push_back({{"degree", static_cast<int>(k + 1)}, {"triplets", trip}});
    }
    return j.dump() + "\n";
}

ComplexFile complex_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        corrupt(e.what());
    }
    ComplexFile f;
    try {
        f.type = field(j, "type").get<std::string>();
        f.rank = static_cast<int>(parse_ll(field(j, "rank")));
        if (j.contains("m"))
            f.m = static_cast<int>(parse_ll(j.at("m")));
        if (j.contains("lattice"))
            f.lattice = j.at("lattice").get<std::string>();
        const json& degrees = field(j, "degrees");
        const json& labels = field(j, "labels");
        if (!degrees.is_array() || degrees.empty() || !labels.is_array() || labels.size() != degrees.size())
            corrupt("degrees and labels must be arrays of equal length");
        for (size_t k = 0; k < degrees.size(); ++k) {
            ComplexFile::Degree d;
            d.subsets = field(degrees[k], "subsets").get<std::vector<std::vector<int>>>();
            for (auto& s : field(degrees[k], "coset_sizes"))
                d.coset_sizes.push_back(parse_ll(s));
            d.labels = labels[k].get<std::vector<std::string>>();
            if (d.subsets.size() != d.coset_sizes.size() || d.labels.size() != d.coset_sizes.size())
                corrupt("degree " + std::to_string(k) + " has mismatched lengths");
            for (long long s : d.coset_sizes)
                if (s <= 0)
                    corrupt("nonpositive coset size");
            f.degrees.push_back(std::move(d));
        }
        std::vector<int> ranks = f.ranks();
        const json& bnd = field(j, "boundaries");
        if (!bnd.is_array() || bnd.size() + 1 != f.degrees.size())
            corrupt("expected one boundary per positive degree");
        for (size_t k = 1; k < f.degrees.size(); ++k) {
            const json& b = bnd[k - 1];
            if (field(b, "degree").get<int>() != static_cast<int>(k))
                corrupt("boundaries out of order");
            int rows = ranks[k - 1], cols = ranks[k];
            std::vector<Triplet> t;
            for (auto& e : field(b, "triplets")) {
                if (!e.is_array() || e.size() != 3)
                    corrupt("triplet must have three entries");
                int r = e[0].get<int>(), c = e[1].get<int>();
                if (r < 0 || r >= rows || c < 0 || c >= cols)
                    corrupt("triplet index out of range");
                t.emplace_back(r, c, parse_integer(e[2]));
            }
            f.boundaries.push_back(SparseIntMatrix::from_triplets(rows, cols, std::move(t)));
        }
        if (j.contains("f_vector")) {
            std::vector<long long> fv;
            for (auto& x : j.at("f_vector"))
                fv.push_back(parse_ll(x));
            if (fv != f.f_vector())
                corrupt("f_vector disagrees with the coset sizes");
        }
    } catch (const json::exception& e) {
        corrupt(e.what());
    }
    for (size_t k = 1; k < f.boundaries.size(); ++k)
        if (!(f.boundaries[k - 1] * f.boundaries[k]).is_zero())
            throw Error(ErrorCode::NOT_A_COMPLEX, "boundary composite in degree " + std::to_string(k + 1) + " is nonzero");
    return f;
}

HomologyReport homology(const ComplexFile& f, const HomologyOptions& opt)
{
    std::vector<SparseIntMatrix> d{SparseIntMatrix(0, f.ranks()[0])};
    d.insert(d.end(), f.boundaries.begin(), f.boundaries.end());
    return homology(f.ranks(), d, opt);
}

std::string report_to_json(const HomologyReport& r, const std::string& type)
{
    json j;
    j["type"] = type;
    j["betti"] = r.betti;
    json tors = json::array();
    for (auto& t : r.torsion)
        tors.push_back(strings(t));
    j["torsion"] = tors;
    j["certification"] = to_string(r.certification);
    j["primes"] = r.primes;
    json mod = json::object();
    for (auto& [p, b] : r.modular_betti)
        mod[std::to_string(p)] = b;
    j["modular_betti"] = mod;
    j["torsion_free_evidence"] = r.torsion_free_evidence;
    j["euler"] = dec(r.euler);
    json fv = json::array();
    for (long long x : r.f_vector)
        fv.push_back(dec(x));
    j["f_vector"] = fv;
    return j.dump(2) + "\n";
}

std::string presentation_to_json(const Presentation& p)
{
    json j;
    j["generators"] = p.generators;
    j["relators"] = p.relators;
    json kinds = json::array();
    for (auto k : p.kinds)
        kinds.push_back(to_string(k));
    j["kinds"] = kinds;
    j["trail"] = p.trail;
    Abelianization ab = abelianization(p);
    j["abelianization"] = {{"free_rank", ab.free_rank}, {"torsion", strings(ab.torsion)}, {"text", ab.str()}};
    return j.dump(1) + "\n";
}

std::string decomposition_to_json(const HomologyDecomposition& d, const CharTable& t)
{
    json j;
    j["characters"] = t.labels;
    j["projected"] = d.projected;
    j["ambiguous"] = d.ambiguous();
    json sols = json::array();
    for (auto& s : d.solutions) {
        json degs = json::array();
        for (auto& mult : s)
            degs.push_back({{"multiplicities", mult}, {"text", format_decomposition(t, mult)}});
        sols.push_back(degs);
    }
    j["solutions"] = sols;
    return j.dump(2) + "\n";
}

}  // namespace cxt

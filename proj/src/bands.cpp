#include "cobord/bands.hpp"

#include "cobord/error.hpp"

#include <algorithm>
#include <cctype>

namespace cobord::bands {

std::string to_string(BandRelation r)
{
    switch (r) {
    case BandRelation::equivalent:
        return "equivalent";
    case BandRelation::equivalent_up_to_reparametrization:
        return "equivalent up to reparametrization";
    case BandRelation::inequivalent:
        return "inequivalent";
    case BandRelation::incomparable:
        return "incomparable";
    }
    return "?";
}

namespace {

int case_of(const BandFlags& f)
{
    if (f.ambient_orientable)
        throw Error("band classification is for a non-orientable ambient manifold");
    if (!f.core_orientable_in_M)
        return 3;
    return f.odd_self_homotopy ? 2 : 1;
}

} // namespace

int model_of(int twist)
{
    const int r = ((twist % 4) + 4) % 4;
    return r == 3 ? -1 : r;
}

BandClassification classify_bands(const BandFlags& flags)
{
    BandClassification c;
    c.case_number = case_of(flags);
    switch (c.case_number) {
    case 1:
        c.classes = {{0}, {1}, {2}, {-1}};
        break;
    case 2:
        c.classes = {{0}, {2}, {1, -1}};
        break;
    default:
        c.classes = {{0}, {2}, {1, -1}};
        c.reparametrization_pairs = {{0, 2}};
        break;
    }
    c.class_count = static_cast<int>(c.classes.size());
    return c;
}

BandRelation bands_equivalent(const BandModel& a, const BandModel& b)
{
    if (!(a.flags == b.flags))
        throw Error("band models carry different flags");
    const auto c = classify_bands(a.flags);
    const int ma = model_of(a.twist);
    const int mb = model_of(b.twist);
    if ((ma - mb) % 2 != 0)
        return BandRelation::incomparable;
    for (const auto& cls : c.classes)
        if (std::ranges::find(cls, ma) != cls.end() && std::ranges::find(cls, mb) != cls.end())
            return BandRelation::equivalent;
    for (const auto& [x, y] : c.reparametrization_pairs)
        if ((ma == x && mb == y) || (ma == y && mb == x))
            return BandRelation::equivalent_up_to_reparametrization;
    return BandRelation::inequivalent;
}

// ---------------------------------------------------------------------------

gf2::BitVector w1_cohomology_coords(const homology::HomologyContext& ctx)
{
    // Kronecker matrix E[i][j] = alpha_j(z_i); w1 in the H^1 basis solves E x = w1(z).
    const auto& cycles = ctx.homology(1).basis();
    const auto& cocycles = ctx.cohomology(1).basis();
    gf2::BitMatrix e(cycles.size(), cocycles.size());
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (std::size_t j = 0; j < cocycles.size(); ++j)
            e.set(i, j, cocycles[j].dot(cycles[i]));
    auto x = gf2::solve(e, ctx.w1_vector());
    if (!x)
        throw Error("Kronecker pairing is degenerate");
    return *x;
}

Isotropy kink_isotropy(const complex::Triangulation& surface, Parity parity)
{
    if (surface.dim() != 2)
        throw Error("the kink action is defined on a closed surface");
    const homology::HomologyContext ctx(surface);
    Isotropy out;
    out.h1_dim = ctx.cohomology(1).dim();
    out.w1 = w1_cohomology_coords(ctx);
    out.subgroup = {gf2::BitVector(out.h1_dim)};
    if (parity == Parity::odd) {
        if (out.w1.is_zero())
            throw Error("odd regular homotopy classes need a non-orientable surface");
        out.subgroup.push_back(out.w1);
    }
    std::sort(out.subgroup.begin(), out.subgroup.end());
    if (out.h1_dim >= 64)
        throw Error("H^1 too large to count classes");
    out.class_count = (std::uint64_t{1} << out.h1_dim) / out.subgroup.size();
    return out;
}

// ---------------------------------------------------------------------------

Permutation parse_permutation(const std::string& text)
{
    Permutation p{1, 2, 3, 4};
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s == "id" || s == "e" || s == "()" || s.empty())
        return p;
    std::array<bool, 4> seen{};
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '(')
            throw Error("permutation '" + text + "': expected '('");
        const auto close = s.find(')', i);
        if (close == std::string::npos)
            throw Error("permutation '" + text + "': unclosed cycle");
        const std::string cycle = s.substr(i + 1, close - i - 1);
        if (cycle.empty())
            throw Error("permutation '" + text + "': empty cycle");
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            const int v = cycle[k] - '0';
            if (v < 1 || v > 4)
                throw Error("permutation '" + text + "': points are 1..4");
            if (seen[v - 1])
                throw Error("permutation '" + text + "': point " + std::to_string(v) + " repeated");
            seen[v - 1] = true;
            p[v - 1] = cycle[(k + 1) % cycle.size()] - '0';
        }
        i = close + 1;
    }
    return p;
}

std::string cycle_notation(const Permutation& p)
{
    std::string out;
    std::array<bool, 4> seen{};
    for (int start = 1; start <= 4; ++start) {
        if (seen[start - 1] || p[start - 1] == start)
            continue;
        out += "(";
        for (int v = start; !seen[v - 1]; v = p[v - 1]) {
            seen[v - 1] = true;
            out += static_cast<char>('0' + v);
        }
        out += ")";
    }
    return out.empty() ? "id" : out;
}

const std::vector<Permutation>& x_symmetries()
{
    static const std::vector<Permutation> group = [] {
        std::vector<Permutation> g;
        for (const char* c : {"id", "(1234)", "(13)(24)", "(1432)", "(12)(34)", "(24)", "(14)(23)", "(13)"})
            g.push_back(parse_permutation(c));
        return g;
    }();
    return group;
}

bool preserves_figure8_pairs(const Permutation& p)
{
    auto same_pair = [](int a, int b) { return (a == 1 && b == 4) || (a == 4 && b == 1) || (a == 2 && b == 3) || (a == 3 && b == 2); };
    return same_pair(p[0], p[3]) && same_pair(p[1], p[2]);
}

XBundle classify_x_bundle(const Permutation& p)
{
    const auto& g = x_symmetries();
    const auto it = std::ranges::find(g, p);
    if (it == g.end())
        throw Error("permutation " + cycle_notation(p) + " is not a symmetry of the figure X");
    XBundle b;
    b.index = static_cast<int>(it - g.begin());
    b.orientable = b.index <= 3;
    switch (b.index) {
    case 0:
        b.fiber8 = {{"torus", "solid torus"}};
        break;
    case 2:
        b.fiber8 = {{"Klein bottle", "solid torus"}};
        break;
    case 4:
        b.fiber8 = {{"torus", "solid Klein bottle"}};
        break;
    case 6:
        b.fiber8 = {{"Klein bottle", "solid Klein bottle"}};
        break;
    default:
        break;
    }
    return b;
}

} // namespace cobord::bands

#include "cobord/immersion.hpp"

#include "cobord/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cobord::immersion {

namespace {

const homology::HomologyContext& context_of(const CobordismGroup& g)
{
    if (!g.context())
        throw Error("group has no manifold behind it");
    // n is read off as chi mod 2, which is the third factor only for Z/2
    if (g.modulus() != 2)
        throw Error("immersion invariants are defined for the non-orientable group");
    return *g.context();
}

void require_shape(const homology::HomologyContext& ctx, const ImmersionData& imm)
{
    if (imm.image_chain.size() != ctx.simplex_count(2))
        throw Error("image chain of '" + imm.label + "' has length " + std::to_string(imm.image_chain.size()) +
                    ", expected " + std::to_string(ctx.simplex_count(2)));
    if (imm.double_locus.size() != ctx.simplex_count(1))
        throw Error("double locus of '" + imm.label + "' has length " + std::to_string(imm.double_locus.size()) +
                    ", expected " + std::to_string(ctx.simplex_count(1)));
    if (imm.chi_mod2 > 1)
        throw Error("chi_mod2 must be 0 or 1");
}

std::string simplex_text(const complex::Simplex& s)
{
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i]);
    return out + ")";
}

std::string chain_text(const homology::HomologyContext& ctx, int k, const BitVector& chain)
{
    std::string out;
    for (auto i : chain.support())
        out += (out.empty() ? "" : " ") + simplex_text(ctx.skeleton().faces(k)[i]);
    return out.empty() ? "0" : out;
}

} // namespace

ImmersionData empty_immersion(const homology::HomologyContext& ctx, std::string label)
{
    return {BitVector(ctx.simplex_count(2)), BitVector(ctx.simplex_count(1)), 0, std::move(label)};
}

Element psi(const CobordismGroup& g, const ImmersionData& imm)
{
    const auto& ctx = context_of(g);
    require_shape(ctx, imm);
    if (!ctx.is_cycle(2, imm.image_chain))
        throw Error("image chain of '" + imm.label + "' is not a 2-cycle");
    if (!ctx.is_cycle(1, imm.double_locus))
        throw Error("double locus of '" + imm.label + "' is not a 1-cycle");
    return g.make(ctx.class_of_cycle(2, imm.image_chain), ctx.class_of_cycle(1, imm.double_locus), imm.chi_mod2);
}

bool cobordant(const CobordismGroup& g, const ImmersionData& a, const ImmersionData& b)
{
    return psi(g, a) == psi(g, b);
}

ImmersionData disjoint_union(const CobordismGroup& g, const ImmersionData& a, const ImmersionData& b)
{
    const auto& ctx = context_of(g);
    require_shape(ctx, a);
    require_shape(ctx, b);
    for (auto i : a.image_chain.support())
        if (b.image_chain.get(i))
            throw Error("image chains of '" + a.label + "' and '" + b.label + "' share the triangle " +
                        simplex_text(ctx.skeleton().faces(2)[i]));
    const auto ha = ctx.class_of_cycle(2, a.image_chain);
    const auto hb = ctx.class_of_cycle(2, b.image_chain);
    const auto twist = ctx.representative(ctx.intersect_H2(ha, hb));

    ImmersionData out;
    out.image_chain = a.image_chain + b.image_chain;
    out.double_locus = a.double_locus + b.double_locus + twist;
    out.chi_mod2 = (a.chi_mod2 + b.chi_mod2) % 2;
    out.label = "(" + a.label + ") + (" + b.label + ") [twist: " + chain_text(ctx, 1, twist) + "]";
    return out;
}

std::string to_string(ComponentKind kind)
{
    switch (kind) {
    case ComponentKind::embedding:
        return "embedding";
    case ComponentKind::kinked_tube:
        return "kinked tube";
    case ComponentKind::ball:
        return "ball";
    }
    return "?";
}

long support_euler_characteristic(const homology::HomologyContext& ctx, const BitVector& chain)
{
    std::set<complex::Simplex> vertices, edges;
    const auto& triangles = ctx.skeleton().faces(2);
    for (auto i : chain.support()) {
        const auto& t = triangles[i];
        for (int v : t)
            vertices.insert({v});
        edges.insert({t[0], t[1]});
        edges.insert({t[0], t[2]});
        edges.insert({t[1], t[2]});
    }
    return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) +
           static_cast<long>(chain.popcount());
}

Realization realize(const CobordismGroup& g, const Element& target)
{
    const auto& ctx = context_of(g);
    if (!g.contains(target))
        throw Error("target is not an element of the group");

    Realization r;
    r.data = empty_immersion(ctx, "realize " + g.label(target));
    unsigned chi = 0;
    auto add = [&](Component c) {
        r.data.image_chain += c.data.image_chain;
        r.data.double_locus += c.data.double_locus;
        chi = (chi + c.data.chi_mod2) % 2;
        r.components.push_back(std::move(c));
    };

    if (!target.h.is_zero()) {
        auto data = empty_immersion(ctx, "embedding");
        data.image_chain = ctx.representative(ctx.make_class(2, target.h));
        const long euler = support_euler_characteristic(ctx, data.image_chain);
        data.chi_mod2 = static_cast<unsigned>(((euler % 2) + 2) % 2);
        add({ComponentKind::embedding, "support chi=" + std::to_string(euler), std::move(data)});
    }

    if (!target.d.is_zero()) {
        const auto delta = ctx.make_class(1, target.d);
        const auto knot = ctx.representative(delta);
        // boundary of the tetrahedra around K: a null-homologous 2-cycle
        const auto& edges = ctx.skeleton().faces(1);
        BitVector solid(ctx.simplex_count(3));
        const auto& tets = ctx.skeleton().faces(3);
        for (std::size_t i = 0; i < tets.size(); ++i) {
            for (auto e : knot.support()) {
                const auto& edge = edges[e];
                if (std::includes(tets[i].begin(), tets[i].end(), edge.begin(), edge.end())) {
                    solid.set(i);
                    break;
                }
            }
        }
        auto data = empty_immersion(ctx, "kinked tube");
        data.image_chain = ctx.boundary_of(3, solid);
        data.double_locus = knot;
        add({ComponentKind::kinked_tube, ctx.evaluate_w1(delta) ? "Klein bottle" : "torus", std::move(data)});
    }

    if (chi != target.n) {
        const auto& tet = ctx.skeleton().faces(3).front();
        auto data = empty_immersion(ctx, "ball");
        data.image_chain = ctx.boundary_of(3, BitVector::unit(ctx.simplex_count(3), 0));
        data.double_locus = ctx.boundary_of(2, ctx.chain_from_simplices(2, {{tet[0], tet[1], tet[2]}}));
        data.chi_mod2 = 1;
        add({ComponentKind::ball, "RP2", std::move(data)});
    }
    r.data.chi_mod2 = chi;
    return r;
}

std::optional<BitVector> representative_avoiding(const homology::HomologyContext& ctx, const BitVector& h,
                                                 const BitVector& avoid, std::mt19937_64* rng)
{
    if (avoid.size() != ctx.simplex_count(2))
        throw Error("avoided chain has the wrong length");
    const auto start = ctx.representative(ctx.make_class(2, h));
    const auto rows = avoid.support();
    if (rows.empty() && !rng)
        return start;
    const auto& d3 = ctx.boundary(3);
    gf2::BitMatrix a(rows.size(), d3.cols());
    BitVector rhs(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        a.row(r) = d3.row(rows[r]);
        rhs.set(r, start.get(rows[r]));
    }
    auto c = gf2::solve(a, rhs);
    if (!c)
        return std::nullopt;
    if (rng) {
        std::bernoulli_distribution coin(0.5);
        for (const auto& k : gf2::kernel_basis(a))
            if (coin(*rng))
                *c += k;
    }
    return start + ctx.boundary_of(3, *c);
}

ImmersionData parse_immersion(std::istream& in, const homology::HomologyContext& ctx)
{
    auto out = empty_immersion(ctx, "file");
    std::string line;
    std::size_t lineno = 0;
    bool have_chi = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream tokens(line);
        std::string head;
        if (!(tokens >> head))
            continue;
        if (!have_chi) {
            int chi = -1;
            if (head != "chi" || !(tokens >> chi) || (chi != 0 && chi != 1))
                throw ParseError(lineno, "expected 'chi 0' or 'chi 1'");
            out.chi_mod2 = static_cast<unsigned>(chi);
            have_chi = true;
        } else if (head == "triangle" || head == "edge") {
            const std::size_t n = head == "triangle" ? 3 : 2;
            complex::Simplex s;
            long v;
            while (tokens >> v) {
                if (v < 0 || v >= ctx.triangulation().vertex_count())
                    throw ParseError(lineno, "vertex " + std::to_string(v) + " out of range");
                s.push_back(static_cast<int>(v));
            }
            if (!tokens.eof())
                throw ParseError(lineno, "vertices must be integers");
            if (s.size() != n)
                throw ParseError(lineno, head + " needs " + std::to_string(n) + " vertices");
            std::sort(s.begin(), s.end());
            if (!ctx.skeleton().contains(s))
                throw ParseError(lineno, head + " " + simplex_text(s) + " is not a simplex of the manifold");
            (n == 3 ? out.image_chain : out.double_locus).flip(ctx.skeleton().index(s));
            continue;
        } else {
            throw ParseError(lineno, "unknown keyword '" + head + "'");
        }
        std::string rest;
        if (tokens >> rest)
            throw ParseError(lineno, "unexpected token '" + rest + "'");
    }
    if (!have_chi)
        throw ParseError(lineno, "missing 'chi' line");
    return out;
}

ImmersionData parse_immersion(const std::string& text, const homology::HomologyContext& ctx)
{
    std::istringstream in(text);
    return parse_immersion(in, ctx);
}

std::string to_text(const ImmersionData& imm, const homology::HomologyContext& ctx)
{
    std::ostringstream out;
    out << "chi " << imm.chi_mod2 << "\n";
    for (auto i : imm.image_chain.support()) {
        const auto& s = ctx.skeleton().faces(2)[i];
        out << "triangle " << s[0] << " " << s[1] << " " << s[2] << "\n";
    }
    for (auto i : imm.double_locus.support()) {
        const auto& s = ctx.skeleton().faces(1)[i];
        out << "edge " << s[0] << " " << s[1] << "\n";
    }
    return out.str();
}

} // namespace cobord::immersion

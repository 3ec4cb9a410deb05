#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobord/complex.hpp"
#include "cobord/error.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace cobord;
using namespace cobord::complex;

namespace {

bool has_issue(const ValidationReport& r, IssueKind kind)
{
    return std::any_of(r.issues.begin(), r.issues.end(), [&](const auto& i) { return i.kind == kind; });
}

// Boundary of the 3-simplex: the smallest 2-sphere.
Triangulation tetrahedron_boundary() { return Triangulation(2, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}); }

// Components of the graph on top simplices joined through shared facets.
std::size_t facet_components(const Triangulation& t)
{
    std::map<Simplex, std::vector<std::size_t>> by_facet;
    for (std::size_t s = 0; s < t.size(); ++s)
        for (std::size_t drop = 0; drop < t.top_simplices()[s].size(); ++drop) {
            Simplex f = t.top_simplices()[s];
            f.erase(f.begin() + static_cast<long>(drop));
            by_facet[f].push_back(s);
        }
    std::vector<std::size_t> parent(t.size());
    for (std::size_t i = 0; i < parent.size(); ++i)
        parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [f, list] : by_facet)
        for (std::size_t i = 1; i < list.size(); ++i)
            parent[find(list[i])] = find(list[0]);
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < parent.size(); ++i)
        roots.insert(find(i));
    return roots.size();
}

} // namespace

TEST_CASE("constructor rejects malformed input")
{
    CHECK_THROWS_AS(Triangulation(4, 5, {}), Error);
    CHECK_THROWS_AS(Triangulation(2, 3, {{0, 1}}), Error);
    CHECK_THROWS_AS(Triangulation(2, 3, {{0, 1, 3}}), Error);
    const Triangulation t(2, 3, {{2, 0, 1}});
    CHECK(t.top_simplices().front() == Simplex{0, 1, 2});
}

TEST_CASE("validation reports each defect")
{
    CHECK(has_issue(validate(Triangulation(2, 1, {})), IssueKind::empty));
    CHECK(has_issue(validate(Triangulation(2, 4, {{0, 0, 1}, {0, 1, 2}})), IssueKind::repeated_vertex));

    auto dup = tetrahedron_boundary().top_simplices();
    dup.push_back({0, 1, 2});
    CHECK(has_issue(validate(Triangulation(2, 4, dup)), IssueKind::duplicate_simplex));

    CHECK(has_issue(validate(Triangulation(2, 5, tetrahedron_boundary().top_simplices())), IssueKind::unused_vertex));

    const Triangulation disk(2, 4, {{0, 1, 2}, {0, 2, 3}});
    CHECK(has_issue(validate(disk), IssueKind::open_face));

    // three triangles on the edge 01
    auto branch = tetrahedron_boundary().top_simplices();
    branch.push_back({0, 1, 4});
    branch.push_back({0, 1, 5});
    branch.push_back({0, 4, 5});
    branch.push_back({1, 4, 5});
    CHECK(has_issue(validate(Triangulation(2, 6, branch)), IssueKind::branching_face));

    // two disjoint spheres
    const auto sphere = tetrahedron_boundary();
    auto two = sphere.top_simplices();
    for (auto s : sphere.top_simplices()) {
        for (auto& v : s)
            v += 4;
        two.push_back(s);
    }
    const Triangulation pair(2, 8, two);
    CHECK(has_issue(validate(pair), IssueKind::disconnected));
    CHECK(validate(pair, {.require_connected = false}).valid());

    // two tetrahedron boundaries glued at one vertex: the link of 0 is two circles
    auto pinched = tetrahedron_boundary().top_simplices();
    for (const auto& s : std::vector<Simplex>{{0, 4, 5}, {0, 4, 6}, {0, 5, 6}, {4, 5, 6}})
        pinched.push_back(s);
    CHECK(has_issue(validate(Triangulation(2, 7, pinched)), IssueKind::bad_vertex_link));

    CHECK_THROWS_AS(require_valid(disk), Error);
}

TEST_CASE("every catalog entry is a valid closed manifold")
{
    const std::map<std::string, long> euler = {{"S3", 0},     {"S2xS1", 0}, {"S2twS1", 0}, {"RP2xS1", 0}, {"KxS1", 0},
                                               {"T3", 0},     {"RP2", 1},   {"S2", 2},     {"T2", 0},     {"K2", 0}};
    for (const auto& name : catalog_names()) {
        CAPTURE(name);
        const auto t = catalog(name);
        CHECK(validate(t).valid());
        CHECK(euler_characteristic(t) == euler.at(name));
        CHECK(is_orientable(t) == catalog_orientable(name));
        // the orientation cover is connected exactly for non-orientable bases
        const auto cover = orientation_double_cover(t);
        CHECK(cover.orientable == catalog_orientable(name));
        CHECK(facet_components(cover.cover) == (catalog_orientable(name) ? 2u : 1u));
        CHECK(cover.cover.size() == 2 * t.size());
        CHECK(validate(cover.cover, {.require_connected = false}).valid());
        if (!catalog_orientable(name))
            CHECK(is_orientable(cover.cover));
        CHECK(euler_characteristic(cover.cover) == 2 * euler.at(name));
    }
    CHECK_THROWS_AS(catalog("Poincare"), Error);
}

TEST_CASE("builders")
{
    const auto rp2 = rp2_six_vertex();
    CHECK(euler_characteristic(rp2) == 1);
    CHECK_FALSE(is_orientable(rp2));

    const auto torus = torus_seven_vertex();
    CHECK(torus.size() == 14);
    CHECK(euler_characteristic(torus) == 0);
    CHECK(is_orientable(torus));

    const auto kb = klein_bottle();
    CHECK(euler_characteristic(kb) == 0);
    CHECK_FALSE(is_orientable(kb));

    const auto genus2 = connected_sum(torus, torus);
    CHECK(validate(genus2).valid());
    CHECK(euler_characteristic(genus2) == -2);
    CHECK(is_orientable(genus2));

    const auto kt = connected_sum(kb, torus);
    CHECK(euler_characteristic(kt) == -2);
    CHECK_FALSE(is_orientable(kt));

    CHECK(is_automorphism(octahedron(), octahedron_antipodal()));
    CHECK(is_automorphism(torus_grid3(), torus_grid3_reflection()));
    CHECK_FALSE(is_automorphism(octahedron(), SimplicialAutomorphism{{1, 0, 2, 3, 4, 4}}));

    const auto prod = product_with_circle(octahedron(), 3);
    CHECK(prod.size() == 3 * 3 * 8);
    CHECK(prod.vertex_count() == 18);
    CHECK(is_orientable(prod));

    const auto twisted = mapping_torus(torus_grid3(), torus_grid3_reflection(), 3);
    CHECK(validate(twisted).valid());
    CHECK_FALSE(is_orientable(twisted));
    CHECK_THROWS_AS(mapping_torus(octahedron(), octahedron_antipodal(), 2), Error);
}

TEST_CASE("facet adjacency is an involution")
{
    for (const auto& name : catalog_names()) {
        const auto t = catalog(name);
        const auto adj = facet_adjacency(t);
        for (std::size_t s = 0; s < adj.size(); ++s) {
            for (std::size_t i = 0; i < adj[s].size(); ++i) {
                const auto n = adj[s][i];
                const auto back = adj[n.simplex][static_cast<std::size_t>(n.opposite)];
                CHECK(back.simplex == s);
                CHECK(back.opposite == static_cast<int>(i));
            }
        }
    }
}

TEST_CASE("skeleton indexes faces lexicographically")
{
    const Skeleton sk(tetrahedron_boundary());
    CHECK(sk.count(0) == 4);
    CHECK(sk.count(1) == 6);
    CHECK(sk.count(2) == 4);
    CHECK(sk.faces(1).front() == Simplex{0, 1});
    CHECK(sk.index({2, 3}) == 5);
    CHECK_FALSE(sk.contains({0, 4}));
    CHECK_THROWS_AS(sk.index({0, 4}), Error);
}

TEST_CASE("w1 on explicit loops")
{
    const auto rp2 = rp2_six_vertex();
    const W1Evaluator w(rp2);
    // a triangle bounding a face is null-homologous
    CHECK_FALSE(w.evaluate_walk({0, 1, 2, 0}));
    // 0-1-4-0 is not a face of the 6-vertex RP2 ({0,1,4} absent) and is a projective line
    CHECK(w.evaluate_walk({0, 1, 4, 0}));

    const auto torus = torus_seven_vertex();
    const W1Evaluator wt(torus);
    CHECK_FALSE(wt.evaluate_walk({0, 1, 2, 3, 4, 5, 6, 0}));
}

TEST_CASE("w1 does not depend on internal choices")
{
    for (const auto& name : catalog_names()) {
        const auto t = catalog(name);
        const W1Evaluator w(t);
        const auto& edges = w.skeleton().faces(1);
        // the loop through every edge of one vertex star
        for (int v = 0; v < std::min(t.vertex_count(), 4); ++v) {
            std::vector<Vertex> walk;
            for (const auto& e : edges)
                if (e[0] == v && walk.size() < 1)
                    walk = {v, e[1]};
            if (walk.empty())
                continue;
            // extend to a closed walk back through another neighbour of v
            for (const auto& e : edges) {
                if (e[0] == walk[1] && e[1] != v) {
                    const Simplex back{std::min(v, e[1]), std::max(v, e[1])};
                    if (std::binary_search(edges.begin(), edges.end(), back)) {
                        walk.push_back(e[1]);
                        walk.push_back(v);
                        break;
                    }
                }
            }
            if (walk.size() != 4)
                continue;
            const bool base = w.evaluate_walk(walk);
            std::mt19937_64 rng(static_cast<std::uint64_t>(v) + 1);
            for (int rerun = 0; rerun < 20; ++rerun)
                CHECK(w.evaluate_walk(walk, &rng) == base);
        }
    }
}

TEST_CASE("parser")
{
    const auto t = parse_triangulation("# a sphere\ndim 2\nvertices 4\n0 1 2\n0 1 3\n0 2 3 # face\n1 2 3\n");
    CHECK(t == tetrahedron_boundary());
    CHECK(parse_triangulation(t.to_text()) == t);

    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_triangulation(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("dim 5\n") == 1);
    CHECK(line_of("dim 2\nverts 4\n") == 2);
    CHECK(line_of("dim 2\nvertices 4\n0 1 2\n0 1 7\n") == 4);
    CHECK(line_of("dim 2\nvertices 4\n0 1 2\n0 1\n") == 4);
    CHECK(line_of("dim 2\nvertices 4\n0 1 x\n") == 3);
    CHECK(line_of("dim 2\nvertices 4 5\n") == 2);
    CHECK_THROWS_AS(parse_triangulation(""), ParseError);
}

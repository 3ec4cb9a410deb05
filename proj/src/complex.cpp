#include "cobord/complex.hpp"

#include "cobord/error.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <stack>

namespace cobord::complex {

namespace {

class UnionFind
{
  public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent_[std::max(a, b)] = std::min(a, b);
    }

  private:
    std::vector<std::size_t> parent_;
};

Simplex drop(const Simplex& s, std::size_t i)
{
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t k = 0; k < s.size(); ++k)
        if (k != i)
            f.push_back(s[k]);
    return f;
}

std::string simplex_text(const Simplex& s)
{
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ' ';
        out += std::to_string(s[i]);
    }
    return out + "]";
}

// Relabel a list of simplices onto dense vertices 0..m-1 preserving order.
Triangulation relabeled(int dim, const std::vector<Simplex>& simplices)
{
    std::set<Vertex> used;
    for (const auto& s : simplices)
        used.insert(s.begin(), s.end());
    std::map<Vertex, Vertex> label;
    for (auto v : used)
        label.emplace(v, static_cast<Vertex>(label.size()));
    std::vector<Simplex> out;
    out.reserve(simplices.size());
    for (const auto& s : simplices) {
        Simplex r;
        for (auto v : s)
            r.push_back(label.at(v));
        out.push_back(std::move(r));
    }
    return Triangulation(dim, static_cast<int>(used.size()), std::move(out));
}

// Link of a vertex in a surface: every link vertex of degree 2 and the link connected.
bool link_is_circle(const std::vector<Simplex>& edges)
{
    std::map<Vertex, std::vector<Vertex>> nbr;
    for (const auto& e : edges) {
        nbr[e[0]].push_back(e[1]);
        nbr[e[1]].push_back(e[0]);
    }
    if (nbr.size() < 3)
        return false;
    for (const auto& [v, n] : nbr)
        if (n.size() != 2)
            return false;
    std::set<Vertex> seen;
    std::stack<Vertex> todo;
    todo.push(nbr.begin()->first);
    while (!todo.empty()) {
        auto v = todo.top();
        todo.pop();
        if (!seen.insert(v).second)
            continue;
        for (auto w : nbr[v])
            todo.push(w);
    }
    return seen.size() == nbr.size();
}

} // namespace

// ---------------------------------------------------------------------------
// Triangulation

Triangulation::Triangulation(int dim, int vertex_count, std::vector<Simplex> top_simplices)
    : dim_(dim), vertex_count_(vertex_count), top_(std::move(top_simplices))
{
    if (dim != 2 && dim != 3)
        throw Error("triangulation dimension must be 2 or 3, got " + std::to_string(dim));
    if (vertex_count < 0)
        throw Error("negative vertex count");
    for (auto& s : top_) {
        if (s.size() != static_cast<std::size_t>(dim + 1))
            throw Error("simplex " + simplex_text(s) + " has " + std::to_string(s.size()) + " vertices, expected " +
                        std::to_string(dim + 1));
        for (auto v : s)
            if (v < 0 || v >= vertex_count)
                throw Error("vertex " + std::to_string(v) + " out of range in simplex " + simplex_text(s));
        std::sort(s.begin(), s.end());
    }
}

std::string Triangulation::to_text() const
{
    std::ostringstream out;
    out << "dim " << dim_ << "\nvertices " << vertex_count_ << "\n";
    for (const auto& s : top_) {
        for (std::size_t i = 0; i < s.size(); ++i)
            out << (i ? " " : "") << s[i];
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Skeleton

Skeleton::Skeleton(const Triangulation& t)
    : faces_(static_cast<std::size_t>(t.dim() + 1)), lookup_(static_cast<std::size_t>(t.dim() + 1))
{
    std::vector<std::set<Simplex>> sets(faces_.size());
    for (const auto& s : t.top_simplices()) {
        const unsigned n = static_cast<unsigned>(s.size());
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            Simplex f;
            for (unsigned i = 0; i < n; ++i)
                if (mask & (1u << i))
                    f.push_back(s[i]);
            sets[f.size() - 1].insert(std::move(f));
        }
    }
    for (std::size_t k = 0; k < sets.size(); ++k) {
        faces_[k].assign(sets[k].begin(), sets[k].end());
        for (std::size_t i = 0; i < faces_[k].size(); ++i)
            lookup_[k].emplace(faces_[k][i], i);
    }
}

std::size_t Skeleton::index(const Simplex& s) const
{
    if (s.empty() || s.size() > lookup_.size())
        throw Error("no simplex " + simplex_text(s) + " in this triangulation");
    auto it = lookup_[s.size() - 1].find(s);
    if (it == lookup_[s.size() - 1].end())
        throw Error("no simplex " + simplex_text(s) + " in this triangulation");
    return it->second;
}

bool Skeleton::contains(const Simplex& s) const
{
    return !s.empty() && s.size() <= lookup_.size() && lookup_[s.size() - 1].count(s) > 0;
}

// ---------------------------------------------------------------------------
// validation

std::string to_string(IssueKind kind)
{
    switch (kind) {
    case IssueKind::empty:
        return "empty";
    case IssueKind::repeated_vertex:
        return "repeated_vertex";
    case IssueKind::duplicate_simplex:
        return "duplicate_simplex";
    case IssueKind::unused_vertex:
        return "unused_vertex";
    case IssueKind::open_face:
        return "open_face";
    case IssueKind::branching_face:
        return "branching_face";
    case IssueKind::disconnected:
        return "disconnected";
    case IssueKind::bad_vertex_link:
        return "bad_vertex_link";
    }
    return "unknown";
}

ValidationReport validate(const Triangulation& t, ValidationOptions options)
{
    ValidationReport report;
    auto add = [&](IssueKind kind, Simplex s, std::string msg) {
        report.issues.push_back({kind, std::move(s), std::move(msg)});
    };

    if (t.size() == 0 || t.vertex_count() == 0) {
        add(IssueKind::empty, {}, "triangulation has no simplices");
        return report;
    }

    std::set<Simplex> seen;
    std::vector<bool> used(static_cast<std::size_t>(t.vertex_count()), false);
    for (const auto& s : t.top_simplices()) {
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            add(IssueKind::repeated_vertex, s, "simplex " + simplex_text(s) + " repeats a vertex");
        if (!seen.insert(s).second)
            add(IssueKind::duplicate_simplex, s, "simplex " + simplex_text(s) + " appears twice");
        for (auto v : s)
            used[static_cast<std::size_t>(v)] = true;
    }
    for (std::size_t v = 0; v < used.size(); ++v)
        if (!used[v])
            add(IssueKind::unused_vertex, {static_cast<Vertex>(v)},
                "vertex " + std::to_string(v) + " lies in no simplex");
    if (!report.valid())
        return report;

    std::map<Simplex, std::vector<std::size_t>> facets;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& s = t.top_simplices()[i];
        for (std::size_t k = 0; k < s.size(); ++k)
            facets[drop(s, k)].push_back(i);
    }
    UnionFind components(t.size());
    bool facets_ok = true;
    for (const auto& [f, owners] : facets) {
        if (owners.size() == 1) {
            add(IssueKind::open_face, f, "face " + simplex_text(f) + " lies in only one top simplex");
            facets_ok = false;
        } else if (owners.size() > 2) {
            add(IssueKind::branching_face, f,
                "face " + simplex_text(f) + " lies in " + std::to_string(owners.size()) + " top simplices");
            facets_ok = false;
        }
        for (std::size_t k = 1; k < owners.size(); ++k)
            components.unite(owners[0], owners[k]);
    }
    if (options.require_connected) {
        for (std::size_t i = 1; i < t.size(); ++i) {
            if (components.find(i) != 0) {
                add(IssueKind::disconnected, t.top_simplices()[i],
                    "simplex " + simplex_text(t.top_simplices()[i]) + " is not connected to simplex " +
                        simplex_text(t.top_simplices()[0]));
                break;
            }
        }
    }
    if (!facets_ok)
        return report;

    std::vector<std::vector<Simplex>> links(static_cast<std::size_t>(t.vertex_count()));
    for (const auto& s : t.top_simplices())
        for (std::size_t k = 0; k < s.size(); ++k)
            links[static_cast<std::size_t>(s[k])].push_back(drop(s, k));
    for (std::size_t v = 0; v < links.size(); ++v) {
        bool ok = false;
        if (t.dim() == 2) {
            ok = link_is_circle(links[v]);
        } else {
            const auto link = relabeled(2, links[v]);
            ok = validate(link).valid() && euler_characteristic(link) == 2;
        }
        if (!ok)
            add(IssueKind::bad_vertex_link, {static_cast<Vertex>(v)},
                "link of vertex " + std::to_string(v) + " is not a " + (t.dim() == 2 ? "circle" : "2-sphere"));
    }
    return report;
}

void require_valid(const Triangulation& t, ValidationOptions options)
{
    const auto report = validate(t, options);
    if (!report.valid())
        throw Error("invalid triangulation: " + report.issues.front().message);
}

std::vector<std::vector<FacetNeighbor>> facet_adjacency(const Triangulation& t)
{
    std::map<Simplex, std::vector<std::pair<std::size_t, int>>> facets;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& s = t.top_simplices()[i];
        for (std::size_t k = 0; k < s.size(); ++k)
            facets[drop(s, k)].emplace_back(i, static_cast<int>(k));
    }
    std::vector<std::vector<FacetNeighbor>> adj(t.size(), std::vector<FacetNeighbor>(static_cast<std::size_t>(t.dim() + 1)));
    for (const auto& [f, owners] : facets) {
        if (owners.size() != 2)
            throw Error("face " + simplex_text(f) + " is not shared by exactly two top simplices");
        const auto [a, ia] = owners[0];
        const auto [b, ib] = owners[1];
        adj[a][static_cast<std::size_t>(ia)] = {b, ib};
        adj[b][static_cast<std::size_t>(ib)] = {a, ia};
    }
    return adj;
}

// ---------------------------------------------------------------------------
// orientation cover

namespace {

// Crossing the facet opposite local i into the neighbour's facet opposite
// local j reverses the sign relative to sorted order iff i + j is even.
bool crossing_flips(int i, int j) { return (i + j) % 2 == 0; }

} // namespace

DoubleCover orientation_double_cover(const Triangulation& t)
{
    require_valid(t);
    const auto adj = facet_adjacency(t);
    const std::size_t corners_per = static_cast<std::size_t>(t.dim() + 1);
    const std::size_t cover_count = 2 * t.size();
    UnionFind corners(cover_count * corners_per);
    UnionFind sheets(cover_count);

    for (std::size_t s = 0; s < t.size(); ++s) {
        const auto& simplex = t.top_simplices()[s];
        for (std::size_t i = 0; i < corners_per; ++i) {
            const auto [nb, j] = adj[s][i];
            const auto& other = t.top_simplices()[nb];
            const bool flip = crossing_flips(static_cast<int>(i), j);
            for (std::size_t e = 0; e < 2; ++e) {
                const std::size_t here = 2 * s + e;
                const std::size_t there = 2 * nb + (flip ? 1 - e : e);
                sheets.unite(here, there);
                for (std::size_t k = 0; k < corners_per; ++k) {
                    if (k == i)
                        continue;
                    const auto pos = std::find(other.begin(), other.end(), simplex[k]) - other.begin();
                    corners.unite(here * corners_per + k, there * corners_per + static_cast<std::size_t>(pos));
                }
            }
        }
    }

    DoubleCover out;
    std::map<std::size_t, Vertex> vertex_of_root;
    std::vector<Simplex> tops(cover_count);
    std::vector<int> lifts(static_cast<std::size_t>(t.vertex_count()), 0);
    for (std::size_t c = 0; c < cover_count; ++c) {
        const auto& base = t.top_simplices()[c / 2];
        for (std::size_t k = 0; k < corners_per; ++k) {
            const auto root = corners.find(c * corners_per + k);
            auto [it, inserted] = vertex_of_root.emplace(root, static_cast<Vertex>(vertex_of_root.size()));
            if (inserted) {
                out.projection.push_back(base[k]);
                ++lifts[static_cast<std::size_t>(base[k])];
            }
            tops[c].push_back(it->second);
        }
    }
    for (std::size_t v = 0; v < lifts.size(); ++v)
        if (lifts[v] != 2)
            throw Error("vertex " + std::to_string(v) + " has " + std::to_string(lifts[v]) +
                        " lifts in the orientation cover; its star is not an orientable ball");

    out.cover = Triangulation(t.dim(), static_cast<int>(vertex_of_root.size()), std::move(tops));
    out.sheet_map.resize(t.size());
    for (std::size_t s = 0; s < t.size(); ++s)
        out.sheet_map[s] = {2 * s, 2 * s + 1};
    // the two sheets over simplex 0 lie in one component iff the cover is connected
    out.orientable = sheets.find(0) != sheets.find(1);
    return out;
}

bool is_orientable(const Triangulation& t) { return orientation_double_cover(t).orientable; }

// ---------------------------------------------------------------------------
// w1

W1Evaluator::W1Evaluator(const Triangulation& t)
    : t_(t), skeleton_(t), adjacency_(facet_adjacency(t)), vertex_star_(static_cast<std::size_t>(t.vertex_count()))
{
    for (std::size_t s = 0; s < t.size(); ++s)
        for (auto v : t.top_simplices()[s])
            vertex_star_[static_cast<std::size_t>(v)].push_back(s);
}

std::size_t W1Evaluator::pick_simplex(Vertex a, Vertex b, std::mt19937_64* choices) const
{
    std::vector<std::size_t> candidates;
    for (auto s : vertex_star_[static_cast<std::size_t>(a)]) {
        const auto& simplex = t_.top_simplices()[s];
        if (std::find(simplex.begin(), simplex.end(), b) != simplex.end())
            candidates.push_back(s);
    }
    if (candidates.empty())
        throw Error("vertices " + std::to_string(a) + " and " + std::to_string(b) + " do not span an edge");
    if (!choices)
        return candidates.front();
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return candidates[pick(*choices)];
}

int W1Evaluator::star_transport(std::size_t from, std::size_t to, Vertex center, std::mt19937_64* choices) const
{
    if (from == to)
        return 0;
    // sign[s] relative to `from`; -1 = not reached yet
    std::map<std::size_t, int> sign;
    sign[from] = 0;
    std::vector<std::size_t> frontier{from};
    while (!frontier.empty()) {
        std::size_t s;
        if (choices) {
            // randomised depth-first order
            std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
            const auto k = pick(*choices);
            s = frontier[k];
            frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(k));
        } else {
            s = frontier.front();
            frontier.erase(frontier.begin());
        }
        const auto& simplex = t_.top_simplices()[s];
        for (std::size_t i = 0; i < simplex.size(); ++i) {
            if (simplex[i] == center)
                continue; // that facet does not contain the centre
            const auto [nb, j] = adjacency_[s][i];
            if (sign.count(nb))
                continue;
            sign[nb] = sign[s] ^ (crossing_flips(static_cast<int>(i), j) ? 1 : 0);
            if (nb == to)
                return sign[nb];
            frontier.push_back(nb);
        }
    }
    throw Error("star of vertex " + std::to_string(center) + " is not face-connected");
}

bool W1Evaluator::evaluate_walk(const std::vector<Vertex>& walk, std::mt19937_64* choices) const
{
    if (walk.size() < 3 || walk.front() != walk.back())
        throw Error("a closed walk needs at least two edges and must end where it starts");
    const std::size_t edges = walk.size() - 1;
    std::vector<std::size_t> carriers(edges);
    for (std::size_t i = 0; i < edges; ++i)
        carriers[i] = pick_simplex(walk[i], walk[i + 1], choices);
    int sign = 0;
    for (std::size_t i = 1; i < edges; ++i)
        sign ^= star_transport(carriers[i - 1], carriers[i], walk[i], choices);
    sign ^= star_transport(carriers[edges - 1], carriers[0], walk[0], choices);
    return sign != 0;
}

bool W1Evaluator::evaluate(const gf2::BitVector& cycle, std::mt19937_64* choices) const
{
    const auto& edges = skeleton_.faces(1);
    if (cycle.size() != edges.size())
        throw Error("1-chain length " + std::to_string(cycle.size()) + " does not match edge count " +
                    std::to_string(edges.size()));

    std::map<Vertex, std::vector<std::size_t>> incident;
    for (auto e : cycle.support()) {
        incident[edges[e][0]].push_back(e);
        incident[edges[e][1]].push_back(e);
    }
    for (const auto& [v, list] : incident)
        if (list.size() % 2)
            throw Error("1-chain is not a cycle: vertex " + std::to_string(v) + " has odd degree");

    const auto support = cycle.support();
    std::set<std::size_t> unused(support.begin(), support.end());
    bool value = false;
    auto take_edge = [&](Vertex at) -> std::optional<std::size_t> {
        std::vector<std::size_t> options;
        for (auto e : incident[at])
            if (unused.count(e))
                options.push_back(e);
        if (options.empty())
            return std::nullopt;
        if (!choices)
            return options.front();
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        return options[pick(*choices)];
    };

    while (!unused.empty()) {
        std::size_t first = *unused.begin();
        if (choices) {
            std::uniform_int_distribution<std::size_t> pick(0, unused.size() - 1);
            first = *std::next(unused.begin(), static_cast<std::ptrdiff_t>(pick(*choices)));
        }
        const Vertex start = edges[first][0];
        std::vector<Vertex> walk{start, edges[first][1]};
        unused.erase(first);
        while (auto e = take_edge(walk.back())) {
            unused.erase(*e);
            const auto& edge = edges[*e];
            walk.push_back(edge[0] == walk.back() ? edge[1] : edge[0]);
        }
        value ^= evaluate_walk(walk, choices);
    }
    return value;
}

bool w1_evaluate(const Triangulation& t, const gf2::BitVector& cycle, std::mt19937_64* choices)
{
    return W1Evaluator(t).evaluate(cycle, choices);
}

// ---------------------------------------------------------------------------
// automorphisms and builders

SimplicialAutomorphism SimplicialAutomorphism::identity(int vertex_count)
{
    SimplicialAutomorphism id;
    id.vertex_map.resize(static_cast<std::size_t>(vertex_count));
    std::iota(id.vertex_map.begin(), id.vertex_map.end(), 0);
    return id;
}

SimplicialAutomorphism SimplicialAutomorphism::compose(const SimplicialAutomorphism& inner) const
{
    SimplicialAutomorphism out;
    for (auto v : inner.vertex_map)
        out.vertex_map.push_back((*this)(v));
    return out;
}

SimplicialAutomorphism SimplicialAutomorphism::power(int n) const
{
    auto out = identity(static_cast<int>(vertex_map.size()));
    for (int i = 0; i < n; ++i)
        out = compose(out);
    return out;
}

bool is_automorphism(const Triangulation& f, const SimplicialAutomorphism& phi)
{
    if (phi.vertex_map.size() != static_cast<std::size_t>(f.vertex_count()))
        return false;
    std::vector<Vertex> sorted = phi.vertex_map;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != static_cast<Vertex>(i))
            return false;
    const std::set<Simplex> tops(f.top_simplices().begin(), f.top_simplices().end());
    for (const auto& s : f.top_simplices()) {
        Simplex image;
        for (auto v : s)
            image.push_back(phi(v));
        std::sort(image.begin(), image.end());
        if (!tops.count(image))
            return false;
    }
    return true;
}

Triangulation mapping_torus(const Triangulation& surface, const SimplicialAutomorphism& phi, int layers)
{
    if (surface.dim() != 2)
        throw Error("circle builders need a surface");
    require_valid(surface);
    if (layers < 3)
        throw Error("circle builders need at least 3 layers, got " + std::to_string(layers));
    if (!is_automorphism(surface, phi))
        throw Error("vertex map is not a simplicial automorphism of the surface");

    const int V = surface.vertex_count();
    std::vector<Simplex> tets;
    tets.reserve(surface.size() * 3 * static_cast<std::size_t>(layers));
    for (int t = 0; t < layers; ++t) {
        auto below = [&](Vertex v) { return layer_vertex(v, t, V); };
        auto above = [&](Vertex v) { return t + 1 < layers ? layer_vertex(v, t + 1, V) : layer_vertex(phi(v), 0, V); };
        for (const auto& tri : surface.top_simplices()) {
            const Vertex a = tri[0], b = tri[1], c = tri[2];
            tets.push_back({below(a), below(b), below(c), above(c)});
            tets.push_back({below(a), below(b), above(b), above(c)});
            tets.push_back({below(a), above(a), above(b), above(c)});
        }
    }
    return Triangulation(3, V * layers, std::move(tets));
}

Triangulation product_with_circle(const Triangulation& surface, int layers)
{
    return mapping_torus(surface, SimplicialAutomorphism::identity(surface.vertex_count()), layers);
}

Triangulation connected_sum(const Triangulation& a, const Triangulation& b)
{
    if (a.dim() != 2 || b.dim() != 2)
        throw Error("connected_sum is implemented for surfaces");
    require_valid(a);
    require_valid(b);
    const auto& removed_a = a.top_simplices().front();
    const auto& removed_b = b.top_simplices().front();
    std::vector<Vertex> label(static_cast<std::size_t>(b.vertex_count()), -1);
    for (std::size_t k = 0; k < 3; ++k)
        label[static_cast<std::size_t>(removed_b[k])] = removed_a[k];
    Vertex next = a.vertex_count();
    for (auto& l : label)
        if (l < 0)
            l = next++;
    std::vector<Simplex> tops(a.top_simplices().begin() + 1, a.top_simplices().end());
    for (auto it = b.top_simplices().begin() + 1; it != b.top_simplices().end(); ++it) {
        Simplex s;
        for (auto v : *it)
            s.push_back(label[static_cast<std::size_t>(v)]);
        tops.push_back(std::move(s));
    }
    return Triangulation(2, next, std::move(tops));
}

long euler_characteristic(const Triangulation& t)
{
    const Skeleton sk(t);
    long chi = 0;
    for (int k = 0; k <= sk.dim(); ++k)
        chi += (k % 2 ? -1 : 1) * static_cast<long>(sk.count(k));
    return chi;
}

// ---------------------------------------------------------------------------
// built-in triangulations

Triangulation octahedron()
{
    // 0,1 = +-x; 2,3 = +-y; 4,5 = +-z
    std::vector<Simplex> tris;
    for (Vertex x : {0, 1})
        for (Vertex y : {2, 3})
            for (Vertex z : {4, 5})
                tris.push_back({x, y, z});
    return Triangulation(2, 6, std::move(tris));
}

SimplicialAutomorphism octahedron_antipodal() { return {{1, 0, 3, 2, 5, 4}}; }

Triangulation rp2_six_vertex()
{
    return Triangulation(2, 6,
                         {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                          {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
}

Triangulation torus_seven_vertex()
{
    std::vector<Simplex> tris;
    for (int i = 0; i < 7; ++i) {
        tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return Triangulation(2, 7, std::move(tris));
}

Triangulation klein_bottle() { return connected_sum(rp2_six_vertex(), rp2_six_vertex()); }

Triangulation torus_grid3()
{
    auto id = [](int x, int y) { return ((x % 3) + 3) % 3 + 3 * (((y % 3) + 3) % 3); };
    std::vector<Simplex> tris;
    for (int y = 0; y < 3; ++y) {
        for (int x = 0; x < 3; ++x) {
            tris.push_back({id(x, y), id(x + 1, y), id(x + 1, y + 1)});
            tris.push_back({id(x, y), id(x, y + 1), id(x + 1, y + 1)});
        }
    }
    return Triangulation(2, 9, std::move(tris));
}

SimplicialAutomorphism torus_grid3_reflection()
{
    SimplicialAutomorphism phi;
    for (int v = 0; v < 9; ++v)
        phi.vertex_map.push_back(v / 3 + 3 * (v % 3));
    return phi;
}

const std::vector<std::string>& catalog_names()
{
    static const std::vector<std::string> names{"S3", "S2xS1", "S2twS1", "RP2xS1", "KxS1",
                                                "T3", "RP2",   "S2",     "T2",     "K2"};
    return names;
}

Triangulation catalog(const std::string& name)
{
    constexpr int layers = 3;
    if (name == "S3") {
        std::vector<Simplex> tets;
        for (Vertex skip = 4; skip >= 0; --skip) {
            Simplex s;
            for (Vertex v = 0; v < 5; ++v)
                if (v != skip)
                    s.push_back(v);
            tets.push_back(std::move(s));
        }
        return Triangulation(3, 5, std::move(tets));
    }
    if (name == "S2xS1")
        return product_with_circle(octahedron(), layers);
    if (name == "S2twS1")
        return mapping_torus(octahedron(), octahedron_antipodal(), layers);
    if (name == "RP2xS1")
        return product_with_circle(rp2_six_vertex(), layers);
    if (name == "KxS1")
        return product_with_circle(klein_bottle(), layers);
    if (name == "T3")
        return product_with_circle(torus_seven_vertex(), layers);
    if (name == "RP2")
        return rp2_six_vertex();
    if (name == "S2")
        return octahedron();
    if (name == "T2")
        return torus_seven_vertex();
    if (name == "K2")
        return klein_bottle();
    throw Error("unknown catalog manifold '" + name + "'");
}

bool catalog_orientable(const std::string& name)
{
    if (name == "S3" || name == "S2xS1" || name == "T3" || name == "S2" || name == "T2")
        return true;
    if (name == "S2twS1" || name == "RP2xS1" || name == "KxS1" || name == "RP2" || name == "K2")
        return false;
    throw Error("unknown catalog manifold '" + name + "'");
}

// ---------------------------------------------------------------------------
// text format

Triangulation parse_triangulation(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    int dim = -1;
    int vertices = -1;
    std::vector<Simplex> tops;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream tokens(line);
        std::string head;
        if (!(tokens >> head))
            continue;
        if (dim < 0) {
            if (head != "dim" || !(tokens >> dim) || (dim != 2 && dim != 3))
                throw ParseError(lineno, "expected 'dim 2' or 'dim 3'");
        } else if (vertices < 0) {
            if (head != "vertices" || !(tokens >> vertices) || vertices <= 0)
                throw ParseError(lineno, "expected 'vertices <V>' with V > 0");
        } else {
            Simplex s;
            std::istringstream all(line);
            long v;
            while (all >> v) {
                if (v < 0 || v >= vertices)
                    throw ParseError(lineno, "vertex " + std::to_string(v) + " out of range");
                s.push_back(static_cast<Vertex>(v));
            }
            if (!all.eof())
                throw ParseError(lineno, "simplex lines hold integers only");
            if (s.size() != static_cast<std::size_t>(dim + 1))
                throw ParseError(lineno, "expected " + std::to_string(dim + 1) + " vertices, got " +
                                             std::to_string(s.size()));
            tops.push_back(std::move(s));
        }
        std::string rest;
        if (vertices < 0 || tops.empty()) {
            if (tokens >> rest)
                throw ParseError(lineno, "unexpected token '" + rest + "'");
        }
    }
    if (dim < 0)
        throw ParseError(lineno, "missing 'dim' header");
    if (vertices < 0)
        throw ParseError(lineno, "missing 'vertices' header");
    return Triangulation(dim, vertices, std::move(tops));
}

Triangulation parse_triangulation(const std::string& text)
{
    std::istringstream in(text);
    return parse_triangulation(in);
}

} // namespace cobord::complex

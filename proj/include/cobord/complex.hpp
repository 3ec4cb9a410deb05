/**
 * Closed triangulated manifolds of dimension 2 and 3.
 *
 * Vertices are dense integers 0..V-1 and every simplex is stored as an
 * increasing vertex tuple, so the numeric order is the global vertex order
 * used by the cup and cap products.
 */
#ifndef COBORD_COMPLEX_HPP
#define COBORD_COMPLEX_HPP

#include "cobord/gf2.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace cobord::complex {

using Vertex = int;
using Simplex = std::vector<Vertex>;

class Triangulation
{
  public:
    Triangulation() = default;
    /// Sorts each tuple. Throws cobord::Error when dim is not 2 or 3, a tuple
    /// has the wrong length, or a vertex is out of range. The remaining
    /// manifold conditions are checked by validate().
    Triangulation(int dim, int vertex_count, std::vector<Simplex> top_simplices);

    int dim() const { return dim_; }
    int vertex_count() const { return vertex_count_; }
    const std::vector<Simplex>& top_simplices() const { return top_; }
    std::size_t size() const { return top_.size(); }

    /// Canonical text form (the file format with simplices in stored order).
    std::string to_text() const;

    bool operator==(const Triangulation&) const = default;

  private:
    int dim_ = 0;
    int vertex_count_ = 0;
    std::vector<Simplex> top_;
};

/// All faces of a triangulation, per dimension, in lexicographic order.
class Skeleton
{
  public:
    explicit Skeleton(const Triangulation& t);

    int dim() const { return static_cast<int>(faces_.size()) - 1; }
    const std::vector<Simplex>& faces(int k) const { return faces_.at(static_cast<std::size_t>(k)); }
    std::size_t count(int k) const { return faces(k).size(); }
    /// Index of a (sorted) simplex in faces(s.size()-1); throws cobord::Error if absent.
    std::size_t index(const Simplex& s) const;
    bool contains(const Simplex& s) const;

  private:
    std::vector<std::vector<Simplex>> faces_;
    std::vector<std::map<Simplex, std::size_t>> lookup_;
};

enum class IssueKind {
    empty,
    repeated_vertex,
    duplicate_simplex,
    unused_vertex,
    open_face,
    branching_face,
    disconnected,
    bad_vertex_link,
};

std::string to_string(IssueKind kind);

struct ValidationIssue
{
    IssueKind kind;
    Simplex simplex; // offending simplex (or vertex as a 1-tuple)
    std::string message;
};

struct ValidationReport
{
    std::vector<ValidationIssue> issues;
    bool valid() const { return issues.empty(); }
};

struct ValidationOptions
{
    /// The orientation cover of an orientable manifold has two components;
    /// validate it with this switched off.
    bool require_connected = true;
};

ValidationReport validate(const Triangulation& t, ValidationOptions options = {});

/// Throws cobord::Error carrying the first issue when `t` is not valid.
void require_valid(const Triangulation& t, ValidationOptions options = {});

/// Neighbour of a top simplex across the facet opposite one of its vertices.
struct FacetNeighbor
{
    std::size_t simplex;
    int opposite; // local index, in the neighbour, of the vertex off the shared facet
};

/// facet_adjacency(t)[s][i]: the top simplex glued to s across the facet
/// opposite local vertex i. Requires every facet to be shared by exactly two
/// top simplices.
std::vector<std::vector<FacetNeighbor>> facet_adjacency(const Triangulation& t);

struct DoubleCover
{
    Triangulation cover;
    bool orientable = false;
    /// sheet_map[s] = cover simplices lying over s with orientation +1 and -1
    /// relative to the sorted vertex order of s.
    std::vector<std::array<std::size_t, 2>> sheet_map;
    /// Base vertex under each cover vertex.
    std::vector<Vertex> projection;
};

DoubleCover orientation_double_cover(const Triangulation& t);

bool is_orientable(const Triangulation& t);

/**
 * Evaluates w1 on 1-cycles by transporting a local orientation around edge
 * loops.
 *
 * The cycle is split into closed edge walks. Along a walk every edge gets a
 * containing top simplex; consecutive simplices are joined by a face-adjacency
 * path through the star of the shared vertex, and the orientation sign flips
 * whenever a crossing is incompatible. A loop contributes 1 when it returns
 * with the opposite sign. Passing an engine randomises all of these choices;
 * the result does not depend on them.
 */
class W1Evaluator
{
  public:
    explicit W1Evaluator(const Triangulation& t);

    /// `cycle` is indexed by Skeleton(t).faces(1). Throws cobord::Error when
    /// it is not a cycle.
    bool evaluate(const gf2::BitVector& cycle, std::mt19937_64* choices = nullptr) const;
    /// Value on a closed vertex walk v0 v1 ... v0 (consecutive vertices adjacent).
    bool evaluate_walk(const std::vector<Vertex>& walk, std::mt19937_64* choices = nullptr) const;

    const Skeleton& skeleton() const { return skeleton_; }

  private:
    int star_transport(std::size_t from, std::size_t to, Vertex center, std::mt19937_64* choices) const;
    std::size_t pick_simplex(Vertex a, Vertex b, std::mt19937_64* choices) const;

    Triangulation t_;
    Skeleton skeleton_;
    std::vector<std::vector<FacetNeighbor>> adjacency_;
    std::vector<std::vector<std::size_t>> vertex_star_;
};

bool w1_evaluate(const Triangulation& t, const gf2::BitVector& cycle, std::mt19937_64* choices = nullptr);

struct SimplicialAutomorphism
{
    std::vector<Vertex> vertex_map;

    static SimplicialAutomorphism identity(int vertex_count);
    Vertex operator()(Vertex v) const { return vertex_map.at(static_cast<std::size_t>(v)); }
    SimplicialAutomorphism compose(const SimplicialAutomorphism& inner) const;
    SimplicialAutomorphism power(int n) const;
};

bool is_automorphism(const Triangulation& f, const SimplicialAutomorphism& phi);

/// Vertex id of base vertex v in layer `layer` of the circle builders.
inline Vertex layer_vertex(Vertex v, int layer, int base_vertex_count) { return layer * base_vertex_count + v; }

/// F x S^1 in n prism layers; each prism over [a<b<c] is split by the
/// staircase [a b c c'], [a b b' c'], [a a' b' c'].
Triangulation product_with_circle(const Triangulation& surface, int layers);

/// F x [0,1] in n layers with the top glued to the bottom through phi.
Triangulation mapping_torus(const Triangulation& surface, const SimplicialAutomorphism& phi, int layers);

/// Connected sum of two surfaces: the first triangle of each is removed and
/// the boundaries identified in sorted vertex order.
Triangulation connected_sum(const Triangulation& a, const Triangulation& b);

long euler_characteristic(const Triangulation& t);

// Built-in surfaces and their symmetries.
Triangulation octahedron();
Triangulation rp2_six_vertex();
Triangulation torus_seven_vertex();
Triangulation klein_bottle();
/// 3x3 grid torus: vertex x + 3y, triangles [(x,y),(x+1,y),(x+1,y+1)] and
/// [(x,y),(x,y+1),(x+1,y+1)]. Unlike the 7-vertex torus it has reflections.
Triangulation torus_grid3();
SimplicialAutomorphism octahedron_antipodal();
/// (x, y) -> (y, x) on torus_grid3(); orientation reversing.
SimplicialAutomorphism torus_grid3_reflection();

const std::vector<std::string>& catalog_names();
/// Throws cobord::Error for an unknown name.
Triangulation catalog(const std::string& name);
/// Orientability of each catalog entry as known from topology.
bool catalog_orientable(const std::string& name);

/// Triangulation text format: "dim <2|3>", "vertices <V>", then one top
/// simplex per line; '#' starts a comment. Throws cobord::ParseError.
Triangulation parse_triangulation(std::istream& in);
Triangulation parse_triangulation(const std::string& text);

} // namespace cobord::complex

#endif

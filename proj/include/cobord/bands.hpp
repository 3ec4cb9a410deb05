// Bands: PL framed knots in R^3 with exact rational geometry, the half-twist
// invariant, regular-homotopy classification of bands in a non-orientable
// 3-manifold, the isotropy of the kink action, and figure-X bundles.
//
// Crossing convention: the projection looks down the z axis from +z (after
// an optional rotation). At a crossing the strand with the larger z is over,
// and the crossing counts +1 when (t_over, t_under, +z) is right-handed.
// With this convention the right-handed Hopf link has linking number +1 and
// a band whose framing turns right-handedly about the direction of travel
// has a positive number of half twists.
#ifndef COBORD_BANDS_HPP
#define COBORD_BANDS_HPP

#include "cobord/complex.hpp"
#include "cobord/gf2.hpp"
#include "cobord/homology.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cobord::bands {

using Rational = boost::multiprecision::cpp_rational;

struct Vec3
{
    Rational x, y, z;

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(const Rational& s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
    friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    bool operator==(const Vec3&) const = default;
};

/// Integer or num/den; throws cobord::Error otherwise.
Rational parse_rational(const std::string& token);

Rational dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
bool is_zero(const Vec3& a);

/// Closed polygon; the last vertex connects back to the first.
using Curve = std::vector<Vec3>;

/// Rational rotation matrix.
struct Rotation
{
    std::array<std::array<Rational, 3>, 3> m;

    static Rotation identity();
    /// Rotation of the unit quaternion (a + bi + cj + dk)/|q|; entries are
    /// rational for integer input. Throws on the zero quaternion.
    static Rotation from_quaternion(long a, long b, long c, long d);
    Vec3 apply(const Vec3& v) const;
};

/// Projection directions tried in order by linking_number; the identity first.
const std::vector<Rotation>& retry_schedule();

bool segments_intersect(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1);
/// Exact squared distance between two closed segments.
Rational segment_distance2(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1);
/// Simple closed polygon: at least 3 vertices, no repeated consecutive vertex,
/// no fold-back at a vertex, no contact between non-adjacent edges.
bool curve_embedded(const Curve& c);
bool curves_disjoint(const Curve& a, const Curve& b);

/// Linking number read off the projection after `r`, or nullopt when that
/// projection is not generic. Throws cobord::Error when the curves meet.
std::optional<long> linking_number_in(const Curve& a, const Curve& b, const Rotation& r);
/// Throws cobord::Error when the curves meet or no scheduled projection is generic.
long linking_number(const Curve& a, const Curve& b);

struct FramedPLKnot
{
    std::vector<Vec3> points;
    /// One normal direction per vertex, not necessarily of unit length. Along
    /// the closing edge the framing runs from framing.back() to
    /// return_sign * framing.front().
    std::vector<Vec3> framing;
    int return_sign = 1;
};

/// Throws cobord::Error describing the first violated condition: embedded
/// core, return_sign = +-1, one framing vector per point, and the framing
/// (interpolated linearly) never parallel to the edge it runs along.
void validate(const FramedPLKnot& k);

/// Largest power of two (at most 1) that keeps the offsets of every point
/// within half the minimum distance between non-adjacent edges, then halved
/// until boundary_curves succeeds.
Rational default_epsilon(const FramedPLKnot& k);

/// Offsets core +- eps * framing, oriented along the core: two curves when
/// return_sign = +1, one doubled curve when it is -1. Throws cobord::Error
/// when the offsets are not embedded or meet the core or each other.
std::vector<Curve> boundary_curves(const FramedPLKnot& k, const Rational& eps);
std::vector<Curve> boundary_curves(const FramedPLKnot& k);

/// Linking number of the core with its whole boundary.
long half_twists(const FramedPLKnot& k);
int half_twists_mod4(const FramedPLKnot& k);
bool is_mobius(const FramedPLKnot& k);

/// Reflection in the plane z = 0.
FramedPLKnot mirror(const FramedPLKnot& k);

/// Regular polygon approximating the unit circle in the xy plane with the
/// framing turning by half_twists * pi about the direction of travel
/// (right-handed for positive values). Coordinates are rounded to
/// multiples of 1/4096.
FramedPLKnot twisted_circle(int half_twists, int vertices = 0);

/// Format: `return_sign <+1|-1>`, then `p x y z f fx fy fz` per vertex with
/// integer or num/den components; '#' starts a comment. Decimal input is
/// rejected. Throws cobord::ParseError.
FramedPLKnot parse_knot(std::istream& in);
FramedPLKnot parse_knot(const std::string& text);
std::string to_text(const FramedPLKnot& k);

// ---------------------------------------------------------------------------
// bands in a non-orientable 3-manifold

struct BandFlags
{
    bool core_orientable_in_M = true;
    /// Input data; only meaningful for an orientable core.
    bool odd_self_homotopy = false;
    /// The classification is for non-orientable M; true is rejected.
    bool ambient_orientable = false;

    bool operator==(const BandFlags&) const = default;
};

struct BandModel
{
    int twist = 0;
    BandFlags flags;
};

enum class BandRelation { equivalent, equivalent_up_to_reparametrization, inequivalent, incomparable };

std::string to_string(BandRelation r);

struct BandClassification
{
    int case_number = 1; // 1: orientable core, no odd self-homotopy; 2: with one; 3: non-orientable core
    int class_count = 0;
    /// Classes of the models, named by twist 0, 1, 2, -1.
    std::vector<std::vector<int>> classes;
    /// Distinct classes whose bands differ only by a reparametrization.
    std::vector<std::pair<int, int>> reparametrization_pairs;
};

/// Throws cobord::Error on inconsistent flags.
BandClassification classify_bands(const BandFlags& flags);

/// The model among 0, 1, 2, -1 congruent to `twist` mod 4.
int model_of(int twist);

/// Throws cobord::Error when the flags differ or are inconsistent.
BandRelation bands_equivalent(const BandModel& a, const BandModel& b);

// ---------------------------------------------------------------------------
// kink action

enum class Parity { even, odd };

struct Isotropy
{
    std::size_t h1_dim = 0;
    gf2::BitVector w1;                  // w1(F) in the H^1 basis of the surface's context
    std::vector<gf2::BitVector> subgroup; // sorted, in the same basis
    std::uint64_t class_count = 0;
};

/// w1 as coordinates in ctx.cohomology(1).
gf2::BitVector w1_cohomology_coords(const homology::HomologyContext& ctx);

/// Throws cobord::Error unless F is a valid closed surface, and for the odd
/// parity on an orientable F.
Isotropy kink_isotropy(const complex::Triangulation& surface, Parity parity);

// ---------------------------------------------------------------------------
// figure-X bundles

/// perm[i-1] is the image of i, for i = 1..4.
using Permutation = std::array<int, 4>;

/// Cycle notation such as "(1234)", "(13)(24)", "()" or "id". Throws cobord::Error.
Permutation parse_permutation(const std::string& text);
std::string cycle_notation(const Permutation& p);

/// The symmetry group of the figure X, listed in bundle-index order.
const std::vector<Permutation>& x_symmetries();

/// Whether p maps the pairs {1,4} and {2,3} to pairs of the same partition.
bool preserves_figure8_pairs(const Permutation& p);

struct XBundle
{
    int index = 0;
    bool orientable = true;
    /// (surface, neighborhood) after substituting the figure 8, even index only.
    std::optional<std::pair<std::string, std::string>> fiber8;
};

/// Throws cobord::Error when p is not a symmetry of the figure X.
XBundle classify_x_bundle(const Permutation& p);

} // namespace cobord::bands

#endif

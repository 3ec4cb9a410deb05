// Chain-level immersion data and the invariant psi: Y -> (H_Y, delta_Y, n_Y).
//
// An immersion is represented by its image 2-cycle, its double-point 1-cycle
// and the parity of the Euler characteristic of the source surface. No
// geometry is meshed; these classes are all that psi depends on.
#ifndef COBORD_IMMERSION_HPP
#define COBORD_IMMERSION_HPP

#include "cobord/cobordgroup.hpp"
#include "cobord/gf2.hpp"
#include "cobord/homology.hpp"

#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace cobord::immersion {

using gf2::BitVector;
using group::CobordismGroup;
using group::Element;

struct ImmersionData
{
    BitVector image_chain;  // over the triangles of M
    BitVector double_locus; // over the edges of M
    unsigned chi_mod2 = 0;
    std::string label;
};

/// Zero chains, chi = 0.
ImmersionData empty_immersion(const homology::HomologyContext& ctx, std::string label = "empty");

/// Throws cobord::Error when a chain is not a cycle, has the wrong length,
/// or the group has no manifold behind it.
Element psi(const CobordismGroup& g, const ImmersionData& imm);

bool cobordant(const CobordismGroup& g, const ImmersionData& a, const ImmersionData& b);

/// Class-level disjoint union. The double locus gains the basis
/// representative of H_a . H_b, which is recorded in the label.
/// Throws cobord::Error when the image chains share a triangle.
ImmersionData disjoint_union(const CobordismGroup& g, const ImmersionData& a, const ImmersionData& b);

enum class ComponentKind { embedding, kinked_tube, ball };

std::string to_string(ComponentKind kind);

struct Component
{
    ComponentKind kind;
    std::string surface; // "torus", "Klein bottle", "RP2", or "support chi=<n>"
    ImmersionData data;
};

struct Realization
{
    ImmersionData data; // sum of the components
    std::vector<Component> components;
};

/// Builds data with psi(data) == target:
///  - an embedding component: the basis representative of target.h;
///  - a kinked tube around a representative K of target.d (a boundary as a
///    2-chain, double locus K, chi = 0), a torus or Klein bottle according
///    to w1(K);
///  - a Boy-type component in a ball (chi = 1) when the parity still differs.
Realization realize(const CobordismGroup& g, const Element& target);

/// Euler characteristic of the subcomplex spanned by the support of a 2-chain.
long support_euler_characteristic(const homology::HomologyContext& ctx, const BitVector& chain);

/// A 2-cycle in class `h` sharing no triangle with `avoid`, or nullopt if
/// none exists. With `rng`, a random boundary supported away from `avoid`
/// is added.
std::optional<BitVector> representative_avoiding(const homology::HomologyContext& ctx, const BitVector& h,
                                                 const BitVector& avoid, std::mt19937_64* rng = nullptr);

/// Text format:
///   chi <0|1>
///   triangle v0 v1 v2
///   edge v0 v1
/// '#' starts a comment. Repeated simplices cancel. Throws cobord::ParseError.
ImmersionData parse_immersion(std::istream& in, const homology::HomologyContext& ctx);
ImmersionData parse_immersion(const std::string& text, const homology::HomologyContext& ctx);
std::string to_text(const ImmersionData& imm, const homology::HomologyContext& ctx);

} // namespace cobord::immersion

#endif

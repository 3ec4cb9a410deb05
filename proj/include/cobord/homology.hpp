/**
 * Mod-2 homology of a closed triangulated manifold.
 *
 * A HomologyContext holds the chain complex, deterministic homology and
 * cohomology bases, the fundamental cycle (the sum of all top simplices,
 * which is a cycle mod 2 whether or not the manifold is orientable), the
 * values of w1 on the H_1 basis and, for 3-manifolds, Poincare duality and
 * the intersection pairing H_2 x H_2 -> H_1.
 *
 * Cup and cap products use the numeric vertex order:
 *   (a u b)[v0..v(p+q)] = a[v0..vp] * b[vp..v(p+q)]
 *   a n [v0..vn]        = a[v0..vk] * [vk..vn]
 */
#ifndef COBORD_HOMOLOGY_HPP
#define COBORD_HOMOLOGY_HPP

#include "cobord/complex.hpp"
#include "cobord/gf2.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cobord::homology {

using gf2::BitMatrix;
using gf2::BitVector;

struct HomologyClass
{
    int dim = 0;
    BitVector coords;
    std::uint64_t context = 0;

    bool is_zero() const { return coords.is_zero(); }
    bool operator==(const HomologyClass&) const = default;
};

struct DualCocycle
{
    BitVector coords;  // in the H^1 basis
    BitVector cocycle; // representative 1-cocycle
};

class HomologyContext
{
  public:
    /// Throws cobord::Error when `t` is not a valid closed manifold.
    explicit HomologyContext(const complex::Triangulation& t);

    HomologyContext(const HomologyContext&) = delete;
    HomologyContext& operator=(const HomologyContext&) = delete;

    const complex::Triangulation& triangulation() const { return triangulation_; }
    const complex::Skeleton& skeleton() const { return skeleton_; }
    int dim() const { return triangulation_.dim(); }
    std::size_t simplex_count(int k) const { return skeleton_.count(k); }

    /// Process-unique identifier, used to reject classes from another context.
    std::uint64_t id() const { return id_; }
    /// FNV-1a digest of the triangulation text, stable across runs.
    const std::string& hash() const { return hash_; }

    /// boundary(k): C_k -> C_{k-1}, rows indexed by (k-1)-simplices; k >= 1.
    const BitMatrix& boundary(int k) const;
    BitVector boundary_of(int k, const BitVector& chain) const;
    BitVector coboundary_of(int k, const BitVector& cochain) const;
    bool is_cycle(int k, const BitVector& chain) const;
    bool is_cocycle(int k, const BitVector& cochain) const;

    const gf2::QuotientBasis& homology(int k) const { return homology_.at(static_cast<std::size_t>(k)); }
    const gf2::QuotientBasis& cohomology(int k) const { return cohomology_.at(static_cast<std::size_t>(k)); }
    std::size_t betti(int k) const { return homology(k).dim(); }
    std::vector<std::size_t> betti_numbers() const;

    const BitVector& fundamental_cycle() const { return fundamental_; }
    const BitVector& w1_vector() const { return w1_; }
    bool orientable() const { return w1_.is_zero(); }

    /// Chain with coefficient 1 on each listed simplex (repeats cancel).
    BitVector chain_from_simplices(int k, const std::vector<complex::Simplex>& simplices) const;

    /// Throws cobord::Error if `chain` is not a k-cycle.
    HomologyClass class_of_cycle(int k, const BitVector& chain) const;
    /// Coordinates of a k-cocycle in the H^k basis.
    BitVector cohomology_coords(int k, const BitVector& cocycle) const;
    BitVector representative(const HomologyClass& c) const;
    HomologyClass zero_class(int k) const;
    HomologyClass basis_class(int k, std::size_t i) const;
    HomologyClass make_class(int k, const BitVector& coords) const;

    BitVector cup(int p, const BitVector& a, int q, const BitVector& b) const;
    BitVector cup11(const BitVector& a, const BitVector& b) const { return cup(1, a, 1, b); }
    /// a n [M] for a k-cochain a; a (dim-k)-chain.
    BitVector cap_fundamental(int k, const BitVector& a) const;

    // 3-manifolds only; cobord::Error otherwise.
    DualCocycle pd_inverse_H2(const HomologyClass& h) const;
    /// Table lookup, bilinear extension of pairing_table().
    HomologyClass intersect_H2(const HomologyClass& a, const HomologyClass& b) const;
    /// Direct chain-level route: [ (PD^-1 a u PD^-1 b) n [M] ].
    HomologyClass intersect_H2_chain_level(const HomologyClass& a, const HomologyClass& b) const;
    /// pairing_table()[i][j] = H_1 coordinates of e_i . e_j for H_2 basis classes.
    const std::vector<std::vector<BitVector>>& pairing_table() const;

    bool evaluate_w1(const HomologyClass& delta) const;

  private:
    void require_context(const HomologyClass& c, int k) const;
    void require_three_manifold() const;

    complex::Triangulation triangulation_;
    complex::Skeleton skeleton_;
    std::uint64_t id_;
    std::string hash_;
    std::vector<BitMatrix> boundary_; // index k, entry 0 unused
    std::vector<gf2::QuotientBasis> homology_;
    std::vector<gf2::QuotientBasis> cohomology_;
    BitVector fundamental_;
    BitVector w1_;
    std::optional<gf2::Solver> pd_solver_; // H^1 coords -> H_2 coords system
    std::vector<std::vector<BitVector>> pairing_;
};

using ContextPtr = std::shared_ptr<const HomologyContext>;

ContextPtr build_context(const complex::Triangulation& t);

/// 64-bit FNV-1a of a string, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

} // namespace cobord::homology

#endif

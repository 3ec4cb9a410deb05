/**
 * The group H_2 x H_1 x Z/m with the twisted law
 *
 *   (h, d, n) * (h', d', n') = (h + h', d + d' + h.h', n + n'),
 *
 * where h.h' is the intersection pairing H_2 x H_2 -> H_1. For a
 * non-orientable 3-manifold m = 2; the orientable comparison variant uses the
 * same twist with m = 8.
 *
 * Elements are ordered lexicographically by (h, d, n), with coordinate 0 of a
 * vector the most significant; index() and element_at() follow this order.
 */
#ifndef COBORD_COBORDGROUP_HPP
#define COBORD_COBORDGROUP_HPP

#include "cobord/gf2.hpp"
#include "cobord/homology.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cobord::group {

using gf2::BitVector;

enum class Variant { nonorientable, orientable };

std::string to_string(Variant v);

struct Element
{
    BitVector h;
    BitVector d;
    unsigned n = 0;

    bool operator==(const Element&) const = default;
};

/// A bilinear map H_2 x H_2 -> H_1 given on basis pairs.
struct TwistForm
{
    std::size_t h_dim = 0;
    std::size_t d_dim = 0;
    std::vector<std::vector<BitVector>> table; // table[i][j] has length d_dim

    static TwistForm from_context(const homology::HomologyContext& ctx);
    /// Random symmetric form, deterministic in `seed`.
    static TwistForm random_symmetric(std::size_t h_dim, std::size_t d_dim, std::uint64_t seed);
    bool symmetric() const;
};

struct Counterexample
{
    std::string law;
    std::vector<Element> elements;
};

struct AxiomReport
{
    bool exhaustive = true;
    std::uint64_t group_order = 0;
    std::uint64_t identity_checks = 0;
    std::uint64_t inverse_checks = 0;
    std::uint64_t commutativity_checks = 0;
    std::uint64_t associativity_checks = 0;
    std::optional<Counterexample> failure;

    bool passed() const { return !failure; }
};

struct VerifyOptions
{
    bool exhaustive = true;
    std::uint64_t samples = 10000; // sampled mode: number of random triples
    std::uint64_t seed = 20240601;
    std::uint64_t bound = std::uint64_t{1} << 9; // exhaustive mode: largest group order
};

inline constexpr std::uint64_t kDefaultStructureBound = std::uint64_t{1} << 16;

class CobordismGroup
{
  public:
    /// Throws cobord::Error when the variant does not match the orientability
    /// of the context's manifold, or the manifold is not 3-dimensional.
    CobordismGroup(homology::ContextPtr ctx, Variant variant);
    /// Variant chosen from the manifold's orientability.
    explicit CobordismGroup(homology::ContextPtr ctx);
    /// Group over an explicit form, with no manifold behind it.
    CobordismGroup(TwistForm form, Variant variant);

    Variant variant() const { return variant_; }
    unsigned modulus() const { return variant_ == Variant::orientable ? 8u : 2u; }
    std::size_t h_dim() const { return form_.h_dim; }
    std::size_t d_dim() const { return form_.d_dim; }
    const TwistForm& form() const { return form_; }
    /// Null for groups built from an explicit form.
    const homology::ContextPtr& context() const { return ctx_; }

    /// 2^h_dim * 2^d_dim * modulus.
    std::uint64_t order() const;

    Element identity() const;
    /// Throws cobord::Error on wrong lengths or n out of range.
    Element make(const BitVector& h, const BitVector& d, unsigned n) const;
    Element make(const homology::HomologyClass& h, const homology::HomologyClass& d, unsigned n) const;
    bool contains(const Element& a) const;

    BitVector twist(const BitVector& h, const BitVector& h2) const;
    Element compose(const Element& a, const Element& b) const;
    Element inverse(const Element& a) const;
    Element power(const Element& a, std::uint64_t k) const;
    std::uint64_t order_of(const Element& a) const;

    std::uint64_t index(const Element& a) const;
    Element element_at(std::uint64_t index) const;
    std::vector<Element> elements() const;

    /// Sorted cyclic factor orders. Throws cobord::Error when order() > bound.
    std::vector<std::uint64_t> structure(std::uint64_t bound = kDefaultStructureBound) const;
    /// Element order -> number of elements of that order.
    std::map<std::uint64_t, std::uint64_t> order_census(std::uint64_t bound = kDefaultStructureBound) const;

    /// Throws cobord::Error in exhaustive mode when order() > options.bound.
    AxiomReport verify_axioms(const VerifyOptions& options = {}) const;

    /// "h|d|n", e.g. "10|01|1".
    std::string label(const Element& a) const;
    /// Cayley table as CSV (header row of labels). Throws when order() > 64.
    std::string cayley_csv() const;

  private:
    struct Packed
    {
        std::uint64_t h = 0;
        std::uint64_t d = 0;
        unsigned n = 0;
        bool operator==(const Packed&) const = default;
    };

    void require_member(const Element& a) const;
    Packed pack(const Element& a) const;
    Element unpack(const Packed& p) const;
    Packed packed_at(std::uint64_t index) const;
    std::uint64_t packed_twist(std::uint64_t h, std::uint64_t h2) const;
    Packed packed_compose(const Packed& a, const Packed& b) const;
    Packed packed_inverse(const Packed& a) const;
    Packed packed_power(Packed a, std::uint64_t k) const;

    homology::ContextPtr ctx_;
    Variant variant_;
    TwistForm form_;
    std::vector<std::vector<std::uint64_t>> rows_; // rows_[i][j]: table entry as mask
};

} // namespace cobord::group

#endif

#include "cobord/cobordgroup.hpp"

#include "cobord/error.hpp"

#include <bit>
#include <random>
#include <set>
#include <sstream>

namespace cobord::group {

namespace {

constexpr std::size_t kMaxDim = 62;

// Value of a coordinate mask read with coordinate 0 as the most significant bit.
std::uint64_t lex_value(std::uint64_t mask, std::size_t dim)
{
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < dim; ++i)
        if (mask >> i & 1u)
            v |= std::uint64_t{1} << (dim - 1 - i);
    return v;
}

std::uint64_t from_lex_value(std::uint64_t value, std::size_t dim) { return lex_value(value, dim); }

std::vector<std::vector<std::uint64_t>> table_masks(const TwistForm& form)
{
    if (form.h_dim > kMaxDim || form.d_dim > kMaxDim)
        throw Error("homology dimensions above " + std::to_string(kMaxDim) + " are not supported");
    if (form.table.size() != form.h_dim)
        throw Error("twist table has the wrong number of rows");
    std::vector<std::vector<std::uint64_t>> rows(form.h_dim, std::vector<std::uint64_t>(form.h_dim, 0));
    for (std::size_t i = 0; i < form.h_dim; ++i) {
        if (form.table[i].size() != form.h_dim)
            throw Error("twist table is not square");
        for (std::size_t j = 0; j < form.h_dim; ++j) {
            if (form.table[i][j].size() != form.d_dim)
                throw Error("twist table entry has the wrong length");
            rows[i][j] = form.table[i][j].to_mask();
        }
    }
    return rows;
}

} // namespace

std::string to_string(Variant v) { return v == Variant::orientable ? "orientable" : "nonorientable"; }

// ---------------------------------------------------------------------------
// TwistForm

TwistForm TwistForm::from_context(const homology::HomologyContext& ctx)
{
    TwistForm f;
    f.h_dim = ctx.betti(2);
    f.d_dim = ctx.betti(1);
    f.table = ctx.pairing_table();
    return f;
}

TwistForm TwistForm::random_symmetric(std::size_t h_dim, std::size_t d_dim, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    TwistForm f;
    f.h_dim = h_dim;
    f.d_dim = d_dim;
    f.table.assign(h_dim, std::vector<BitVector>(h_dim, BitVector(d_dim)));
    for (std::size_t i = 0; i < h_dim; ++i) {
        for (std::size_t j = i; j < h_dim; ++j) {
            BitVector v(d_dim);
            for (std::size_t k = 0; k < d_dim; ++k)
                v.set(k, rng() & 1u);
            f.table[i][j] = v;
            f.table[j][i] = v;
        }
    }
    return f;
}

bool TwistForm::symmetric() const
{
    for (std::size_t i = 0; i < h_dim; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (table[i][j] != table[j][i])
                return false;
    return true;
}

// ---------------------------------------------------------------------------
// construction

CobordismGroup::CobordismGroup(homology::ContextPtr ctx, Variant variant) : ctx_(std::move(ctx)), variant_(variant)
{
    if (!ctx_)
        throw Error("null homology context");
    if (ctx_->dim() != 3)
        throw Error("the cobordism group is defined for 3-manifolds");
    if (ctx_->orientable() != (variant == Variant::orientable))
        throw Error(std::string("the ") + to_string(variant) + " variant needs " +
                    (variant == Variant::orientable ? "an orientable" : "a non-orientable") + " manifold");
    form_ = TwistForm::from_context(*ctx_);
    rows_ = table_masks(form_);
}

CobordismGroup::CobordismGroup(homology::ContextPtr ctx)
    : CobordismGroup(ctx, ctx && ctx->orientable() ? Variant::orientable : Variant::nonorientable)
{
}

CobordismGroup::CobordismGroup(TwistForm form, Variant variant)
    : variant_(variant), form_(std::move(form)), rows_(table_masks(form_))
{
}

std::uint64_t CobordismGroup::order() const
{
    const std::size_t bits = form_.h_dim + form_.d_dim + (variant_ == Variant::orientable ? 3 : 1);
    if (bits > 63)
        throw Error("group order does not fit in 64 bits");
    return std::uint64_t{1} << bits;
}

// ---------------------------------------------------------------------------
// elements

Element CobordismGroup::identity() const { return {BitVector(h_dim()), BitVector(d_dim()), 0}; }

bool CobordismGroup::contains(const Element& a) const
{
    return a.h.size() == h_dim() && a.d.size() == d_dim() && a.n < modulus();
}

void CobordismGroup::require_member(const Element& a) const
{
    if (!contains(a))
        throw Error("element " + std::string(a.h.to_string()) + "|" + a.d.to_string() + "|" +
                    std::to_string(a.n) + " does not belong to this group");
}

Element CobordismGroup::make(const BitVector& h, const BitVector& d, unsigned n) const
{
    Element e{h, d, n};
    require_member(e);
    return e;
}

Element CobordismGroup::make(const homology::HomologyClass& h, const homology::HomologyClass& d, unsigned n) const
{
    if (ctx_ && (h.context != ctx_->id() || d.context != ctx_->id()))
        throw Error("homology classes belong to a different context");
    if (h.dim != 2 || d.dim != 1)
        throw Error("elements are built from an H_2 class and an H_1 class");
    return make(h.coords, d.coords, n);
}

CobordismGroup::Packed CobordismGroup::pack(const Element& a) const
{
    require_member(a);
    return {a.h.to_mask(), a.d.to_mask(), a.n};
}

Element CobordismGroup::unpack(const Packed& p) const
{
    return {BitVector::from_mask(h_dim(), p.h), BitVector::from_mask(d_dim(), p.d), p.n};
}

std::uint64_t CobordismGroup::packed_twist(std::uint64_t h, std::uint64_t h2) const
{
    std::uint64_t out = 0;
    for (auto a = h; a; a &= a - 1) {
        const auto& row = rows_[static_cast<std::size_t>(std::countr_zero(a))];
        for (auto b = h2; b; b &= b - 1)
            out ^= row[static_cast<std::size_t>(std::countr_zero(b))];
    }
    return out;
}

CobordismGroup::Packed CobordismGroup::packed_compose(const Packed& a, const Packed& b) const
{
    return {a.h ^ b.h, a.d ^ b.d ^ packed_twist(a.h, b.h), (a.n + b.n) % modulus()};
}

CobordismGroup::Packed CobordismGroup::packed_inverse(const Packed& a) const
{
    return {a.h, a.d ^ packed_twist(a.h, a.h), (modulus() - a.n) % modulus()};
}

CobordismGroup::Packed CobordismGroup::packed_power(Packed a, std::uint64_t k) const
{
    Packed result{};
    while (k) {
        if (k & 1u)
            result = packed_compose(result, a);
        a = packed_compose(a, a);
        k >>= 1;
    }
    return result;
}

BitVector CobordismGroup::twist(const BitVector& h, const BitVector& h2) const
{
    if (h.size() != h_dim() || h2.size() != h_dim())
        throw Error("twist arguments must be H_2 coordinate vectors");
    return BitVector::from_mask(d_dim(), packed_twist(h.to_mask(), h2.to_mask()));
}

Element CobordismGroup::compose(const Element& a, const Element& b) const
{
    return unpack(packed_compose(pack(a), pack(b)));
}

Element CobordismGroup::inverse(const Element& a) const { return unpack(packed_inverse(pack(a))); }

Element CobordismGroup::power(const Element& a, std::uint64_t k) const { return unpack(packed_power(pack(a), k)); }

std::uint64_t CobordismGroup::order_of(const Element& a) const
{
    const auto p = pack(a);
    Packed acc = p;
    std::uint64_t k = 1;
    while (!(acc == Packed{})) {
        acc = packed_compose(acc, p);
        ++k;
    }
    return k;
}

std::uint64_t CobordismGroup::index(const Element& a) const
{
    const auto p = pack(a);
    return ((lex_value(p.h, h_dim()) << d_dim()) | lex_value(p.d, d_dim())) * modulus() + p.n;
}

CobordismGroup::Packed CobordismGroup::packed_at(std::uint64_t index) const
{
    Packed p;
    p.n = static_cast<unsigned>(index % modulus());
    index /= modulus();
    p.d = from_lex_value(index & ((std::uint64_t{1} << d_dim()) - 1), d_dim());
    p.h = from_lex_value(index >> d_dim(), h_dim());
    return p;
}

Element CobordismGroup::element_at(std::uint64_t index) const
{
    if (index >= order())
        throw Error("element index out of range");
    return unpack(packed_at(index));
}

std::vector<Element> CobordismGroup::elements() const
{
    std::vector<Element> out;
    for (std::uint64_t i = 0; i < order(); ++i)
        out.push_back(element_at(i));
    return out;
}

// ---------------------------------------------------------------------------
// structure

std::map<std::uint64_t, std::uint64_t> CobordismGroup::order_census(std::uint64_t bound) const
{
    if (order() > bound)
        throw Error("group order " + std::to_string(order()) + " exceeds the exhaustive bound " + std::to_string(bound));
    std::map<std::uint64_t, std::uint64_t> census;
    for (std::uint64_t i = 0; i < order(); ++i)
        ++census[order_of(element_at(i))];
    return census;
}

std::vector<std::uint64_t> CobordismGroup::structure(std::uint64_t bound) const
{
    if (order() > bound)
        throw Error("group order " + std::to_string(order()) + " exceeds the exhaustive bound " + std::to_string(bound));
    // log2 of |{a^(2^k)}| for k = 0, 1, ... until the image is trivial
    std::vector<std::size_t> ranks;
    std::vector<Packed> current;
    for (std::uint64_t i = 0; i < order(); ++i)
        current.push_back(packed_at(i));
    while (true) {
        std::set<std::tuple<std::uint64_t, std::uint64_t, unsigned>> image;
        for (const auto& p : current)
            image.emplace(p.h, p.d, p.n);
        const auto size = image.size();
        if (!std::has_single_bit(size))
            throw Error("image of the squaring map is not a 2-group; the law is not abelian");
        ranks.push_back(static_cast<std::size_t>(std::countr_zero(size)));
        if (size == 1)
            break;
        for (auto& p : current)
            p = packed_compose(p, p);
    }
    ranks.push_back(0);
    std::vector<std::uint64_t> factors;
    for (std::size_t k = 0; k + 1 < ranks.size(); ++k) {
        const std::size_t at_least = ranks[k] - ranks[k + 1];                                    // order >= 2^(k+1)
        const std::size_t above = k + 2 < ranks.size() ? ranks[k + 1] - ranks[k + 2] : 0; // order >= 2^(k+2)
        for (std::size_t c = 0; c < at_least - above; ++c)
            factors.push_back(std::uint64_t{1} << (k + 1));
    }
    return factors;
}

// ---------------------------------------------------------------------------
// axioms

AxiomReport CobordismGroup::verify_axioms(const VerifyOptions& options) const
{
    AxiomReport report;
    report.exhaustive = options.exhaustive;
    report.group_order = order();
    const Packed e{};
    auto fail = [&](const char* law, std::initializer_list<Packed> elems) {
        Counterexample c{law, {}};
        for (const auto& p : elems)
            c.elements.push_back(unpack(p));
        report.failure = std::move(c);
    };

    auto check_single = [&](const Packed& a) {
        ++report.identity_checks;
        if (!(packed_compose(e, a) == a) || !(packed_compose(a, e) == a)) {
            fail("identity", {a});
            return false;
        }
        ++report.inverse_checks;
        const auto inv = packed_inverse(a);
        if (!(packed_compose(a, inv) == e) || !(packed_compose(inv, a) == e)) {
            fail("inverse", {a});
            return false;
        }
        return true;
    };
    auto check_pair = [&](const Packed& a, const Packed& b) {
        ++report.commutativity_checks;
        if (!(packed_compose(a, b) == packed_compose(b, a))) {
            fail("commutativity", {a, b});
            return false;
        }
        return true;
    };
    auto check_triple = [&](const Packed& a, const Packed& b, const Packed& c) {
        ++report.associativity_checks;
        if (!(packed_compose(packed_compose(a, b), c) == packed_compose(a, packed_compose(b, c)))) {
            fail("associativity", {a, b, c});
            return false;
        }
        return true;
    };

    const std::uint64_t n = order();
    if (options.exhaustive) {
        if (n > options.bound)
            throw Error("group order " + std::to_string(n) + " exceeds the exhaustive bound " +
                        std::to_string(options.bound));
        std::vector<Packed> all;
        for (std::uint64_t i = 0; i < n; ++i)
            all.push_back(packed_at(i));
        for (const auto& a : all)
            if (!check_single(a))
                return report;
        for (const auto& a : all)
            for (const auto& b : all)
                if (!check_pair(a, b))
                    return report;
        for (const auto& a : all)
            for (const auto& b : all)
                for (const auto& c : all)
                    if (!check_triple(a, b, c))
                        return report;
        return report;
    }

    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    for (std::uint64_t s = 0; s < options.samples; ++s) {
        const auto a = packed_at(pick(rng));
        const auto b = packed_at(pick(rng));
        const auto c = packed_at(pick(rng));
        if (!check_single(a) || !check_pair(a, b) || !check_triple(a, b, c))
            return report;
    }
    return report;
}

// ---------------------------------------------------------------------------
// output

std::string CobordismGroup::label(const Element& a) const
{
    require_member(a);
    return a.h.to_string() + "|" + a.d.to_string() + "|" + std::to_string(a.n);
}

std::string CobordismGroup::cayley_csv() const
{
    if (order() > 64)
        throw Error("Cayley tables are emitted only for groups of order at most 64");
    const auto all = elements();
    std::ostringstream out;
    out << "*";
    for (const auto& b : all)
        out << "," << label(b);
    out << "\n";
    for (const auto& a : all) {
        out << label(a);
        for (const auto& b : all)
            out << "," << label(compose(a, b));
        out << "\n";
    }
    return out.str();
}

} // namespace cobord::group

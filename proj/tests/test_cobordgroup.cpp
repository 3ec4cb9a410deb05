#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobord/cobordgroup.hpp"
#include "cobord/error.hpp"

#include <map>
#include <random>
#include <set>
#include <tuple>

using namespace cobord;
using namespace cobord::group;
using homology::build_context;

namespace {

// Naive group on plain bool vectors and an int, with the twist summed from the table.
struct Naive
{
    TwistForm form;
    unsigned m;

    using El = std::tuple<std::vector<bool>, std::vector<bool>, unsigned>;

    std::vector<El> all() const
    {
        std::vector<El> out;
        for (std::uint64_t hm = 0; hm < (1u << form.h_dim); ++hm)
            for (std::uint64_t dm = 0; dm < (1u << form.d_dim); ++dm)
                for (unsigned n = 0; n < m; ++n) {
                    std::vector<bool> h(form.h_dim), d(form.d_dim);
                    for (std::size_t i = 0; i < form.h_dim; ++i)
                        h[i] = hm >> i & 1u;
                    for (std::size_t i = 0; i < form.d_dim; ++i)
                        d[i] = dm >> i & 1u;
                    out.emplace_back(h, d, n);
                }
        return out;
    }

    El compose(const El& a, const El& b) const
    {
        auto [h, d, n] = a;
        const auto& [h2, d2, n2] = b;
        for (std::size_t i = 0; i < form.h_dim; ++i)
            for (std::size_t j = 0; j < form.h_dim; ++j)
                if (h[i] && h2[j])
                    for (std::size_t k = 0; k < form.d_dim; ++k)
                        if (form.table[i][j].get(k))
                            d[k] = !d[k];
        for (std::size_t i = 0; i < form.h_dim; ++i)
            h[i] = h[i] != h2[i];
        for (std::size_t k = 0; k < form.d_dim; ++k)
            d[k] = d[k] != d2[k];
        return {h, d, (n + n2) % m};
    }

    El identity() const { return {std::vector<bool>(form.h_dim), std::vector<bool>(form.d_dim), 0}; }

    std::uint64_t order_of(const El& a) const
    {
        std::uint64_t k = 1;
        for (El x = a; x != identity(); x = compose(x, a))
            ++k;
        return k;
    }
};

Element to_element(const Naive::El& e)
{
    const auto& [h, d, n] = e;
    BitVector hv(h.size()), dv(d.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i])
            hv.set(i);
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i])
            dv.set(i);
    return {hv, dv, n};
}

// Number of solutions of x^(2^k) = e in a product of cyclic 2-groups.
std::uint64_t predicted_kernel(const std::vector<std::uint64_t>& factors, unsigned k)
{
    std::uint64_t n = 1;
    for (auto f : factors)
        n *= std::min<std::uint64_t>(f, std::uint64_t{1} << k);
    return n;
}

} // namespace

TEST_CASE("orders and structures of the catalog groups")
{
    const std::map<std::string, std::pair<std::uint64_t, std::vector<std::uint64_t>>> known = {
        {"S3", {8, {8}}},
        {"S2xS1", {32, {2, 2, 8}}},
        {"S2twS1", {8, {2, 2, 2}}},
        {"RP2xS1", {32, {2, 2, 2, 4}}},
        {"KxS1", {128, {2, 2, 2, 2, 2, 4}}},
        {"T3", {512, {2, 2, 2, 2, 2, 2, 8}}},
    };
    for (const auto& [name, expected] : known) {
        CAPTURE(name);
        const CobordismGroup g(build_context(complex::catalog(name)));
        CHECK(g.variant() == (complex::catalog_orientable(name) ? Variant::orientable : Variant::nonorientable));
        CHECK(g.order() == expected.first);
        CHECK(g.structure() == expected.second);
    }
}

TEST_CASE("the group agrees with a naive implementation")
{
    for (const auto& name : {"S2xS1", "S2twS1", "RP2xS1", "KxS1"}) {
        CAPTURE(name);
        const CobordismGroup g(build_context(complex::catalog(name)));
        const Naive naive{g.form(), g.modulus()};
        const auto els = naive.all();
        CHECK(els.size() == g.order());

        std::map<std::uint64_t, std::uint64_t> census;
        std::mt19937_64 rng(3);
        for (const auto& a : els) {
            const auto ea = to_element(a);
            census[naive.order_of(a)]++;
            CHECK(g.order_of(ea) == naive.order_of(a));
            // brute-force inverse
            for (const auto& b : els)
                if (naive.compose(a, b) == naive.identity())
                    CHECK(g.inverse(ea) == to_element(b));
            for (int s = 0; s < 8; ++s) {
                const auto& b = els[rng() % els.size()];
                CHECK(g.compose(ea, to_element(b)) == to_element(naive.compose(a, b)));
            }
        }
        CHECK(g.order_census() == census);

        // structure predicts the size of every 2^k-torsion subgroup
        const auto factors = g.structure();
        for (unsigned k = 0; k <= 4; ++k) {
            std::uint64_t count = 0;
            for (const auto& a : els) {
                auto x = a;
                for (unsigned i = 0; i < k; ++i)
                    x = naive.compose(x, x);
                count += x == naive.identity();
            }
            CHECK(count == predicted_kernel(factors, k));
        }
    }
}

TEST_CASE("exponent, projection and element orders")
{
    for (const auto& name : {"S2xS1", "S2twS1", "RP2xS1", "KxS1"}) {
        CAPTURE(name);
        const CobordismGroup g(build_context(complex::catalog(name)));
        const std::uint64_t exponent = g.variant() == Variant::orientable ? 16 : 4;
        for (const auto& a : g.elements()) {
            CHECK(g.power(a, exponent) == g.identity());
            CHECK(g.order() % g.order_of(a) == 0);
            // (h, d, n) -> h is a homomorphism; its kernel composes without twist
            const auto b = g.element_at((g.index(a) * 7 + 3) % g.order());
            CHECK(g.compose(a, b).h == a.h + b.h);
            if (a.h.is_zero())
                CHECK(g.compose(a, b).d == a.d + b.d);
        }
    }
}

TEST_CASE("index is a bijection onto 0..order-1")
{
    const CobordismGroup g(build_context(complex::catalog("RP2xS1")));
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < g.order(); ++i) {
        const auto a = g.element_at(i);
        CHECK(g.index(a) == i);
        seen.insert(g.index(a));
    }
    CHECK(seen.size() == g.order());
    CHECK(g.index(g.identity()) == 0);
    // coordinate 0 of h is the most significant
    CHECK(g.element_at(g.order() / 2).h.get(0));
    CHECK(g.label(g.element_at(1)) == "00|00|1");
    CHECK_THROWS_AS(g.element_at(g.order()), Error);
}

TEST_CASE("Cayley table")
{
    const CobordismGroup g(build_context(complex::catalog("S2twS1")));
    const auto csv = g.cayley_csv();
    std::size_t lines = 0;
    for (char c : csv)
        lines += c == '\n';
    CHECK(lines == g.order() + 1);
    const CobordismGroup big(build_context(complex::catalog("KxS1")));
    CHECK_THROWS_AS(big.cayley_csv(), Error);
}

TEST_CASE("axioms hold for random symmetric forms and fail for asymmetric ones")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto form = TwistForm::random_symmetric(1 + seed % 3, 1 + seed % 2, seed);
        CHECK(form.symmetric());
        for (auto v : {Variant::nonorientable, Variant::orientable}) {
            const CobordismGroup g(form, v);
            const auto report = g.verify_axioms();
            CHECK(report.passed());
            CHECK(report.exhaustive);
            CHECK(report.associativity_checks == g.order() * g.order() * g.order());
        }
    }

    TwistForm skew;
    skew.h_dim = 2;
    skew.d_dim = 1;
    skew.table = {{BitVector(1), BitVector::unit(1, 0)}, {BitVector(1), BitVector(1)}};
    CHECK_FALSE(skew.symmetric());
    const CobordismGroup g(skew, Variant::nonorientable);
    const auto report = g.verify_axioms();
    REQUIRE_FALSE(report.passed());
    CHECK(report.failure->law == "commutativity");
    const auto& ce = report.failure->elements;
    REQUIRE(ce.size() == 2);
    CHECK(g.compose(ce[0], ce[1]) != g.compose(ce[1], ce[0]));
}

TEST_CASE("verification modes and errors")
{
    const CobordismGroup g(build_context(complex::catalog("KxS1")));
    VerifyOptions small;
    small.bound = 64;
    CHECK_THROWS_AS(g.verify_axioms(small), Error);

    VerifyOptions sampled;
    sampled.exhaustive = false;
    sampled.samples = 500;
    const auto r1 = g.verify_axioms(sampled);
    const auto r2 = g.verify_axioms(sampled);
    CHECK(r1.passed());
    CHECK_FALSE(r1.exhaustive);
    CHECK(r1.associativity_checks == 500);
    CHECK(r1.associativity_checks == r2.associativity_checks);

    CHECK_THROWS_AS(CobordismGroup(build_context(complex::catalog("RP2xS1")), Variant::orientable), Error);
    CHECK_THROWS_AS(CobordismGroup(build_context(complex::catalog("T3")), Variant::nonorientable), Error);
    CHECK_THROWS_AS(CobordismGroup(build_context(complex::catalog("T2"))), Error);
    CHECK_THROWS_AS(g.make(BitVector(2), BitVector(3), 0), Error);
    CHECK_THROWS_AS(g.make(BitVector(3), BitVector(3), 2), Error);
    CHECK_THROWS_AS(g.structure(64), Error);
}

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include "cobord/bands.hpp"
#include "cobord/cobordgroup.hpp"
#include "cobord/complex.hpp"
#include "cobord/error.hpp"
#include "cobord/homology.hpp"
#include "cobord/immersion.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace cobord;
using gf2::BitVector;
using group::CobordismGroup;
using group::Variant;
using homology::build_context;

namespace {

constexpr double kGroupLawSeconds = 5.0;
constexpr double kHalfTwistSeconds = 1.0;
constexpr int kUnionPairs = 1000;
constexpr int kW1Reruns = 50;

struct Outcome
{
    bool pass = true;
    std::ostringstream note;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass)
            note << what;
        pass = pass && ok;
    }
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::string> catalog3(bool orientable)
{
    std::vector<std::string> out;
    for (const auto& name : complex::catalog_names())
        if (complex::catalog(name).dim() == 3 && complex::catalog_orientable(name) == orientable)
            out.push_back(name);
    return out;
}

Outcome group_law()
{
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::uint64_t> orders;
    for (const auto& name : catalog3(false)) {
        const CobordismGroup g(build_context(complex::catalog(name)));
        group::VerifyOptions options;
        options.exhaustive = true;
        options.bound = g.order();
        const auto report = g.verify_axioms(options);
        o.require(report.passed() && report.exhaustive, name + ": axiom check failed; ");
        o.require(report.associativity_checks == g.order() * g.order() * g.order(), name + ": incomplete; ");
        orders.push_back(g.order());
    }
    const double elapsed = seconds_since(start);
    o.require(orders == std::vector<std::uint64_t>{8, 32, 128}, "unexpected orders; ");
    o.require(elapsed < kGroupLawSeconds, "too slow; ");
    o.note << "orders 8,32,128 exhaustive in " << elapsed << " s";
    return o;
}

Outcome order_formula()
{
    Outcome o;
    for (const auto& name : catalog3(false)) {
        const auto ctx = build_context(complex::catalog(name));
        const CobordismGroup g(ctx);
        const std::uint64_t expected = (std::uint64_t{1} << ctx->betti(2)) * (std::uint64_t{1} << ctx->betti(1)) * 2;
        o.require(g.order() == expected && g.modulus() == 2, name + ": order mismatch; ");
    }
    for (const auto& name : catalog3(true)) {
        const auto ctx = build_context(complex::catalog(name));
        const CobordismGroup g(ctx);
        const std::uint64_t expected = (std::uint64_t{1} << ctx->betti(2)) * (std::uint64_t{1} << ctx->betti(1)) * 8;
        o.require(g.order() == expected && g.modulus() == 8, name + ": order mismatch; ");
    }
    const auto product = build_context(complex::catalog("S2xS1"));
    const auto twisted = build_context(complex::catalog("S2twS1"));
    o.require(product->betti_numbers() == twisted->betti_numbers(), "Betti numbers differ; ");
    o.require(CobordismGroup(product).order() == 32 && CobordismGroup(twisted).order() == 8, "S2xS1 vs S2twS1; ");
    o.note << "S2xS1 32 vs S2twS1 8";
    return o;
}

Outcome psi_homomorphism()
{
    Outcome o;
    std::mt19937_64 rng(7);
    for (const auto& name : catalog3(false)) {
        const auto ctx = build_context(complex::catalog(name));
        const CobordismGroup g(ctx);
        int done = 0, failures = 0, attempts = 0;
        while (done < kUnionPairs && attempts < 20 * kUnionPairs) {
            ++attempts;
            auto a = g.element_at(rng() % g.order());
            auto b = g.element_at(rng() % g.order());
            auto da = immersion::realize(g, a).data;
            auto db = immersion::realize(g, b).data;
            // move b's image off a's image within its homology class
            const auto moved = immersion::representative_avoiding(*ctx, ctx->homology(2).coords(db.image_chain),
                                                                  da.image_chain, &rng);
            if (!moved)
                continue;
            db.image_chain = *moved;
            const auto u = immersion::disjoint_union(g, da, db);
            failures += immersion::psi(g, u) != g.compose(immersion::psi(g, da), immersion::psi(g, db));
            ++done;
        }
        o.require(done == kUnionPairs && failures == 0, name + ": " + std::to_string(failures) + " failures in " +
                                                              std::to_string(done) + " pairs; ");
    }
    o.note << kUnionPairs << " pairs per manifold";
    return o;
}

Outcome surjectivity()
{
    Outcome o;
    std::uint64_t total = 0;
    for (const auto& name : catalog3(false)) {
        const CobordismGroup g(build_context(complex::catalog(name)));
        for (const auto& e : g.elements()) {
            o.require(immersion::psi(g, immersion::realize(g, e).data) == e, name + ": " + g.label(e) + "; ");
            ++total;
        }
    }
    o.note << total << " elements";
    return o;
}

Outcome third_factor()
{
    Outcome o;
    for (const auto& orientable : {false, true})
        for (const auto& name : catalog3(orientable)) {
            const CobordismGroup g(build_context(complex::catalog(name)));
            const auto e = g.make(BitVector(g.h_dim()), BitVector(g.d_dim()), 1);
            o.require(g.order_of(e) == (orientable ? 8u : 2u), name + "; ");
        }
    o.note << "order 2 (non-orientable), 8 (orientable)";
    return o;
}

Outcome half_twists()
{
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    for (int k = -4; k <= 4; ++k) {
        const auto knot = bands::twisted_circle(k);
        const long h = bands::half_twists(knot);
        o.require(h == k, "k=" + std::to_string(k) + "; ");
        o.require(bands::half_twists_mod4(knot) == ((k % 4) + 4) % 4, "mod 4; ");
        o.require(bands::is_mobius(knot) == (k % 2 != 0), "parity; ");
        o.require(bands::half_twists(bands::mirror(knot)) == -h, "mirror; ");
    }
    const double elapsed = seconds_since(start);
    o.require(elapsed < kHalfTwistSeconds, "too slow; ");
    o.note << "k=-4..4 in " << elapsed << " s";
    return o;
}

Outcome band_classification()
{
    using bands::BandRelation;
    Outcome o;
    const bands::BandFlags cases[3] = {{true, false, false}, {true, true, false}, {false, false, false}};
    const std::uint64_t counts[3] = {4, 3, 3};
    for (int c = 0; c < 3; ++c) {
        const auto cl = bands::classify_bands(cases[c]);
        o.require(static_cast<std::uint64_t>(cl.class_count) == counts[c], "count; ");
        for (int a = -4; a <= 4; ++a)
            for (int b = -4; b <= 4; ++b) {
                const int ma = bands::model_of(a), mb = bands::model_of(b);
                BandRelation expected;
                if ((a - b) % 2 != 0)
                    expected = BandRelation::incomparable;
                else if (ma == mb || (c > 0 && ma * mb == -1))
                    expected = BandRelation::equivalent;
                else if (c == 2 && ma + mb == 2)
                    expected = BandRelation::equivalent_up_to_reparametrization;
                else
                    expected = BandRelation::inequivalent;
                o.require(bands::bands_equivalent({a, cases[c]}, {b, cases[c]}) == expected,
                          "case " + std::to_string(c + 1) + " twists " + std::to_string(a) + "," + std::to_string(b) +
                              "; ");
            }
    }
    o.note << "counts 4,3,3";
    return o;
}

Outcome isotropy()
{
    Outcome o;
    const auto torus = complex::torus_seven_vertex();
    const auto klein = complex::klein_bottle();
    const std::vector<std::pair<std::string, complex::Triangulation>> surfaces = {
        {"T2", torus},
        {"K2", klein},
        {"RP2", complex::rp2_six_vertex()},
        {"T2#T2", complex::connected_sum(torus, torus)},
        {"K2#T2#T2", complex::connected_sum(complex::connected_sum(klein, torus), torus)},
    };
    for (const auto& [name, f] : surfaces) {
        const auto even = bands::kink_isotropy(f, bands::Parity::even);
        o.require(even.class_count == (std::uint64_t{1} << even.h1_dim), name + " even; ");
        if (complex::is_orientable(f))
            continue;
        const auto odd = bands::kink_isotropy(f, bands::Parity::odd);
        o.require(!odd.w1.is_zero(), name + " w1 = 0; ");
        o.require(odd.class_count == (std::uint64_t{1} << (odd.h1_dim - 1)), name + " odd count; ");
        o.require(odd.subgroup == std::vector<BitVector>{BitVector(odd.h1_dim), odd.w1}, name + " subgroup; ");
        o.note << (o.note.tellp() > 0 ? ", " : "") << name << " odd " << odd.class_count;
    }
    return o;
}

Outcome x_bundles()
{
    Outcome o;
    std::set<int> indices;
    int orientable = 0;
    for (const auto& p : bands::x_symmetries()) {
        const auto b = bands::classify_x_bundle(p);
        indices.insert(b.index);
        orientable += b.orientable;
        o.require(b.orientable == (b.index <= 3), "orientability; ");
        o.require(bands::preserves_figure8_pairs(p) == (b.index % 2 == 0), "figure 8 pairs; ");
        o.require(b.fiber8.has_value() == (b.index % 2 == 0), "fiber8 presence; ");
    }
    o.require(indices.size() == 8 && orientable == 4, "indices; ");
    using P = std::pair<std::string, std::string>;
    const std::pair<const char*, P> table[] = {{"()", {"torus", "solid torus"}},
                                               {"(13)(24)", {"Klein bottle", "solid torus"}},
                                               {"(12)(34)", {"torus", "solid Klein bottle"}},
                                               {"(14)(23)", {"Klein bottle", "solid Klein bottle"}}};
    for (const auto& [perm, expected] : table) {
        const auto b = bands::classify_x_bundle(bands::parse_permutation(perm));
        o.require(b.fiber8 && *b.fiber8 == expected, std::string(perm) + "; ");
    }
    o.note << "8 indices, 4 orientable";
    return o;
}

Outcome homology_engine()
{
    Outcome o;
    std::mt19937_64 rng(11);
    for (const auto& name : complex::catalog_names()) {
        const auto t = complex::catalog(name);
        const auto ctx = build_context(t);
        const int n = ctx->dim();
        for (int k = 2; k <= n; ++k)
            o.require((ctx->boundary(k - 1) * ctx->boundary(k)).is_zero(), name + " dd; ");
        for (int k = 0; k <= n; ++k)
            o.require(ctx->betti(k) == ctx->betti(n - k), name + " PD symmetry; ");

        if (n == 3) {
            const std::size_t b1 = ctx->betti(1), b2 = ctx->betti(2);
            gf2::BitMatrix m(b2, b1);
            for (std::size_t i = 0; i < b2; ++i)
                for (std::size_t j = 0; j < b1; ++j)
                    m.set(i, j, ctx->pd_inverse_H2(ctx->basis_class(2, i)).cocycle.dot(ctx->homology(1).basis()[j]));
            o.require(gf2::rank(m) == b2, name + " degenerate pairing; ");
            for (std::size_t i = 0; i < b2; ++i)
                for (std::size_t j = 0; j < b2; ++j) {
                    const auto x = ctx->basis_class(2, i), y = ctx->basis_class(2, j);
                    o.require(ctx->intersect_H2(x, y) == ctx->intersect_H2(y, x), name + " asymmetric; ");
                    for (std::size_t l = 0; l < b2; ++l) {
                        const auto z = ctx->basis_class(2, l);
                        const auto yz = ctx->make_class(2, y.coords + z.coords);
                        o.require(ctx->intersect_H2(x, yz).coords ==
                                      ctx->intersect_H2(x, y).coords + ctx->intersect_H2(x, z).coords,
                                  name + " not bilinear; ");
                    }
                }
        }

        const complex::W1Evaluator w(t);
        for (int rerun = 0; rerun < kW1Reruns; ++rerun)
            for (std::size_t i = 0; i < ctx->betti(1); ++i)
                o.require(w.evaluate(ctx->homology(1).basis()[i], &rng) == ctx->w1_vector().get(i),
                          name + " w1 unstable; ");
    }
    o.note << "all catalog entries, " << kW1Reruns << " w1 reruns";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"group law", group_law},
        {"group order formula", order_formula},
        {"psi homomorphism", psi_homomorphism},
        {"surjectivity", surjectivity},
        {"third factor", third_factor},
        {"half-twist invariant", half_twists},
        {"band classification", band_classification},
        {"kink isotropy", isotropy},
        {"X-bundle taxonomy", x_bundles},
        {"homology engine", homology_engine},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note << "exception: " << e.what();
        }
        failed += !o.pass;
        std::printf("%s %2zu %-22s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.note.str().c_str());
    }
    return failed == 0 ? 0 : 1;
}

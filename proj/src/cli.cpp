#include "cobord/cli.hpp"

#include "cobord/bands.hpp"
#include "cobord/cobordgroup.hpp"
#include "cobord/error.hpp"
#include "cobord/homology.hpp"
#include "cobord/immersion.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace cobord::cli {

using Json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::string simplex_text(const complex::Simplex& s)
{
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i]);
    return out + ")";
}

std::string chain_text(const homology::HomologyContext& ctx, int k, const gf2::BitVector& chain)
{
    std::string out;
    for (auto i : chain.support())
        out += (out.empty() ? "" : " ") + simplex_text(ctx.skeleton().faces(k)[i]);
    return out.empty() ? "0" : out;
}

Json basis_json(const homology::HomologyContext& ctx, int k)
{
    Json list = Json::array();
    for (const auto& z : ctx.homology(k).basis())
        list.push_back(chain_text(ctx, k, z));
    return list;
}

// ---------------------------------------------------------------------------
// text rendering of a report

std::string scalar_text(const Json& j)
{
    if (j.is_string())
        return j.get<std::string>();
    return j.dump();
}

bool is_flat(const Json& j)
{
    return std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
}

void render(const Json& j, std::ostream& out, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [key, value] : j.items()) {
        if (value.is_string() && value.get<std::string>().find('\n') != std::string::npos) {
            out << pad << key << ":\n" << value.get<std::string>();
        } else if (value.is_primitive()) {
            out << pad << key << ": " << scalar_text(value) << "\n";
        } else if (value.is_array() && is_flat(value) && std::none_of(value.begin(), value.end(), [](const Json& e) {
                       return e.is_string() && e.get<std::string>().find(' ') != std::string::npos;
                   })) {
            out << pad << key << ":";
            for (const auto& e : value)
                out << " " << scalar_text(e);
            out << "\n";
        } else if (value.is_array()) {
            out << pad << key << ":\n";
            for (std::size_t i = 0; i < value.size(); ++i) {
                if (value[i].is_primitive())
                    out << pad << "  [" << i << "] " << scalar_text(value[i]) << "\n";
                else {
                    out << pad << "  [" << i << "]\n";
                    render(value[i], out, indent + 4);
                }
            }
        } else {
            out << pad << key << ":\n";
            render(value, out, indent + 2);
        }
    }
}

void emit(const Json& report, const std::string& format, std::ostream& out)
{
    if (format == "json")
        out << report.dump(2) << "\n";
    else
        render(report, out, 0);
}

// ---------------------------------------------------------------------------
// reports

Json manifold_header(const std::string& ref, const homology::HomologyContext& ctx)
{
    Json j;
    j["manifold"] = ref;
    j["hash"] = ctx.hash();
    return j;
}

std::string bits(const gf2::BitVector& v) { return v.empty() ? "-" : v.to_string(); }

Json axioms_json(const group::CobordismGroup& g, std::uint64_t bound, std::uint64_t samples, std::uint64_t seed)
{
    group::VerifyOptions options;
    options.exhaustive = g.order() <= bound;
    options.bound = bound;
    options.samples = samples;
    options.seed = seed;
    const auto r = g.verify_axioms(options);
    Json j;
    j["mode"] = r.exhaustive ? "exhaustive" : "sampled";
    if (!r.exhaustive)
        j["seed"] = seed;
    j["identity_checks"] = r.identity_checks;
    j["inverse_checks"] = r.inverse_checks;
    j["commutativity_checks"] = r.commutativity_checks;
    j["associativity_checks"] = r.associativity_checks;
    j["passed"] = r.passed();
    if (r.failure) {
        Json f;
        f["law"] = r.failure->law;
        Json elems = Json::array();
        for (const auto& e : r.failure->elements)
            elems.push_back(g.label(e));
        f["elements"] = elems;
        j["failure"] = f;
    }
    return j;
}

Json structure_json(const group::CobordismGroup& g)
{
    Json j = Json::array();
    for (auto f : g.structure())
        j.push_back(f);
    return j;
}

group::Variant parse_variant(const std::string& s, const homology::HomologyContext& ctx)
{
    if (s == "auto")
        return ctx.orientable() ? group::Variant::orientable : group::Variant::nonorientable;
    return s == "orientable" ? group::Variant::orientable : group::Variant::nonorientable;
}

Json psi_json(const group::CobordismGroup& g, const group::Element& e)
{
    Json j;
    j["element"] = g.label(e);
    j["h"] = bits(e.h);
    j["d"] = bits(e.d);
    j["n"] = e.n;
    return j;
}

bool parse_bool(const std::string& s)
{
    if (s == "true" || s == "yes" || s == "1")
        return true;
    if (s == "false" || s == "no" || s == "0")
        return false;
    throw Error("expected true or false, got '" + s + "'");
}

group::Element parse_element(const group::CobordismGroup& g, const std::string& text)
{
    const auto a = text.find('|');
    const auto b = text.find('|', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos)
        throw Error("element must be written h|d|n, e.g. 10|01|1");
    auto vec = [](std::string s, std::size_t len) {
        if (s == "-")
            s.clear();
        if (s.size() != len || s.find_first_not_of("01") != std::string::npos)
            throw Error("expected " + std::to_string(len) + " binary digits, got '" + s + "'");
        return gf2::BitVector::from_string(s);
    };
    const std::string n_text = text.substr(b + 1);
    if (n_text.empty() || n_text.find_first_not_of("0123456789") != std::string::npos)
        throw Error("third coordinate must be a non-negative integer");
    return g.make(vec(text.substr(0, a), g.h_dim()), vec(text.substr(a + 1, b - a - 1), g.d_dim()),
                  static_cast<unsigned>(std::stoul(n_text)));
}

} // namespace

std::uint64_t exhaustive_bound()
{
    if (const char* env = std::getenv("COBORD_EXHAUSTIVE_BOUND")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            return v;
    }
    return group::VerifyOptions{}.bound;
}

complex::Triangulation load_manifold(const std::string& ref)
{
    const std::string prefix = "catalog:";
    if (ref.rfind(prefix, 0) == 0) {
        std::string rest = ref.substr(prefix.size());
        std::vector<std::string> parts;
        for (std::size_t pos; (pos = rest.find('#')) != std::string::npos; rest.erase(0, pos + 1))
            parts.push_back(rest.substr(0, pos));
        parts.push_back(rest);
        auto t = complex::catalog(parts.front());
        for (std::size_t i = 1; i < parts.size(); ++i)
            t = complex::connected_sum(t, complex::catalog(parts[i]));
        return t;
    }
    return complex::parse_triangulation(read_file(ref));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Cobordism groups of immersed surfaces in triangulated 3-manifolds", "cobord"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    std::function<void()> action;
    std::string manifold, variant = "auto", immersion_file, knot_file, target, parity, monodromy, surface;
    std::vector<std::string> immersion_files;
    std::string core_orientable = "true", odd_self = "false", epsilon;
    std::vector<int> twists;
    bool cayley = false, all = false, mirror_knot = false;
    std::uint64_t samples = 10000, seed = group::VerifyOptions{}.seed;

    auto context = [&]() { return homology::build_context(load_manifold(manifold)); };

    auto* validate = app.add_subcommand("validate", "Check a triangulation");
    validate->add_option("--manifold", manifold, "catalog:<name> or file")->required();
    validate->callback([&] {
        action = [&] {
            const auto t = load_manifold(manifold);
            const auto report = complex::validate(t);
            Json j;
            j["manifold"] = manifold;
            j["hash"] = homology::fnv1a_hex(t.to_text());
            j["dim"] = t.dim();
            j["vertices"] = t.vertex_count();
            j["top_simplices"] = t.size();
            j["valid"] = report.valid();
            if (report.valid()) {
                j["euler_characteristic"] = complex::euler_characteristic(t);
                j["orientable"] = complex::is_orientable(t);
            }
            Json issues = Json::array();
            for (const auto& issue : report.issues)
                issues.push_back(complex::to_string(issue.kind) + ": " + issue.message);
            j["issues"] = issues;
            emit(j, format, out);
            if (!report.valid())
                throw Error("triangulation is not a closed connected manifold");
        };
    });

    auto* homology_cmd = app.add_subcommand("homology", "Mod-2 homology, w1 and the intersection pairing");
    homology_cmd->add_option("--manifold", manifold, "catalog:<name> or file")->required();
    homology_cmd->callback([&] {
        action = [&] {
            const auto ctx = context();
            Json j = manifold_header(manifold, *ctx);
            j["dim"] = ctx->dim();
            j["orientable"] = ctx->orientable();
            j["betti"] = ctx->betti_numbers();
            j["w1"] = bits(ctx->w1_vector());
            Json bases;
            for (int k = 1; k < ctx->dim(); ++k)
                bases["H" + std::to_string(k)] = basis_json(*ctx, k);
            j["bases"] = bases;
            if (ctx->dim() == 3) {
                Json rows = Json::array();
                for (const auto& row : ctx->pairing_table()) {
                    Json r = Json::array();
                    for (const auto& entry : row)
                        r.push_back(bits(entry));
                    rows.push_back(r);
                }
                j["pairing"] = rows;
            }
            emit(j, format, out);
        };
    });

    auto* group_cmd = app.add_subcommand("group", "Order, structure and axiom check of N2(M)");
    group_cmd->add_option("--manifold", manifold, "catalog:<name> or file")->required();
    group_cmd->add_option("--variant", variant, "Group variant")
        ->check(CLI::IsMember({"auto", "orientable", "nonorientable"}));
    group_cmd->add_flag("--cayley", cayley, "Print the Cayley table as CSV (order <= 64)");
    group_cmd->callback([&] {
        action = [&] {
            const auto ctx = context();
            const group::CobordismGroup g(ctx, parse_variant(variant, *ctx));
            Json j = manifold_header(manifold, *ctx);
            j["variant"] = group::to_string(g.variant());
            j["modulus"] = g.modulus();
            j["h_dim"] = g.h_dim();
            j["d_dim"] = g.d_dim();
            j["order"] = g.order();
            j["structure"] = structure_json(g);
            Json census;
            for (const auto& [order, count] : g.order_census())
                census[std::to_string(order)] = count;
            j["order_census"] = census;
            j["axioms"] = axioms_json(g, exhaustive_bound(), samples, seed);
            if (cayley)
                j["cayley_csv"] = g.cayley_csv();
            emit(j, format, out);
        };
    });

    auto* psi_cmd = app.add_subcommand("psi", "Invariant (H, delta, n) of an immersion");
    psi_cmd->add_option("--manifold", manifold, "catalog:<name> or file")->required();
    psi_cmd->add_option("--immersion", immersion_file, "Immersion file")->required();
    psi_cmd->callback([&] {
        action = [&] {
            const auto ctx = context();
            const group::CobordismGroup g(ctx, group::Variant::nonorientable);
            const auto imm = immersion::parse_immersion(read_file(immersion_file), *ctx);
            Json j = manifold_header(manifold, *ctx);
            j["immersion"] = immersion_file;
            j["psi"] = psi_json(g, immersion::psi(g, imm));
            Json bases;
            bases["H2"] = basis_json(*ctx, 2);
            bases["H1"] = basis_json(*ctx, 1);
            j["bases"] = bases;
            emit(j, format, out);
        };
    });

    auto* cobordant_cmd = app.add_subcommand("cobordant", "Decide whether two immersions are cobordant");
    cobordant_cmd->add_option("--manifold", manifold, "catalog:<name> or file")->required();
    cobordant_cmd->add_option("--immersion", immersion_files, "Two immersion files")->required()->expected(2);
    cobordant_cmd->callback([&] {
        action = [&] {
            const auto ctx = context();
            const group::CobordismGroup g(ctx, group::Variant::nonorientable);
            const auto a = immersion::parse_immersion(read_file(immersion_files[0]), *ctx);
            const auto b = immersion::parse_immersion(read_file(immersion_files[1]), *ctx);
            Json j = manifold_header(manifold, *ctx);
            j["first"] = psi_json(g, immersion::psi(g, a));
            j["second"] = psi_json(g, immersion::psi(g, b));
            j["cobordant"] = immersion::cobordant(g, a, b);
            emit(j, format, out);
        };
    });

    auto* realize_cmd = app.add_subcommand("realize", "Build immersion data for a group element");
    realize_cmd->add_option("--manifold", manifold, "catalog:<name> or file")->required();
    realize_cmd->add_option("--target", target, "Element h|d|n")->required();
    realize_cmd->callback([&] {
        action = [&] {
            const auto ctx = context();
            const group::CobordismGroup g(ctx, group::Variant::nonorientable);
            const auto e = parse_element(g, target);
            const auto r = immersion::realize(g, e);
            Json j = manifold_header(manifold, *ctx);
            j["target"] = g.label(e);
            Json comps = Json::array();
            for (const auto& c : r.components) {
                Json cj;
                cj["kind"] = immersion::to_string(c.kind);
                cj["surface"] = c.surface;
                cj["triangles"] = c.data.image_chain.popcount();
                cj["double_edges"] = c.data.double_locus.popcount();
                cj["chi_mod2"] = c.data.chi_mod2;
                comps.push_back(cj);
            }
            j["components"] = comps;
            j["psi"] = g.label(immersion::psi(g, r.data));
            j["immersion"] = immersion::to_text(r.data, *ctx);
            emit(j, format, out);
        };
    });

    auto* band_cmd = app.add_subcommand("band", "Half twists of a framed PL knot");
    band_cmd->add_option("--knot", knot_file, "Knot file")->required();
    band_cmd->add_option("--epsilon", epsilon, "Boundary offset as num/den (default: automatic)");
    band_cmd->add_flag("--mirror", mirror_knot, "Reflect in the plane z = 0 first");
    band_cmd->callback([&] {
        action = [&] {
            auto k = bands::parse_knot(read_file(knot_file));
            if (mirror_knot)
                k = bands::mirror(k);
            const bands::Rational eps = epsilon.empty() ? bands::default_epsilon(k) : bands::parse_rational(epsilon);
            long total = 0;
            for (const auto& c : bands::boundary_curves(k, eps))
                total += bands::linking_number(k.points, c);
            std::ostringstream eps_text;
            eps_text << eps;
            Json j;
            j["knot"] = knot_file;
            j["vertices"] = k.points.size();
            j["mobius"] = bands::is_mobius(k);
            j["epsilon"] = eps_text.str();
            j["half_twists"] = total;
            j["half_twists_mod4"] = ((total % 4) + 4) % 4;
            emit(j, format, out);
        };
    });

    auto* classify_cmd = app.add_subcommand("classify-bands", "Regular homotopy classes of bands in non-orientable M");
    classify_cmd->add_option("--core-orientable", core_orientable, "Core orientable in M (true/false)");
    classify_cmd->add_option("--odd-self-homotopy", odd_self, "Core admits an odd self-homotopy (true/false)");
    classify_cmd->add_option("--twist", twists, "Compare two models by their twists")->expected(2);
    classify_cmd->callback([&] {
        action = [&] {
            bands::BandFlags flags;
            flags.core_orientable_in_M = parse_bool(core_orientable);
            flags.odd_self_homotopy = parse_bool(odd_self);
            const auto c = bands::classify_bands(flags);
            Json j;
            j["case"] = c.case_number;
            j["class_count"] = c.class_count;
            Json classes = Json::array();
            for (const auto& cls : c.classes) {
                std::string name;
                for (int t : cls)
                    name += (name.empty() ? "" : "~") + ("S" + std::to_string(t));
                classes.push_back(name);
            }
            j["classes"] = classes;
            Json reparam = Json::array();
            for (const auto& [a, b] : c.reparametrization_pairs)
                reparam.push_back("S" + std::to_string(a) + "~S" + std::to_string(b));
            j["reparametrization"] = reparam;
            if (twists.size() == 2)
                j["relation"] = bands::to_string(bands::bands_equivalent({twists[0], flags}, {twists[1], flags}));
            emit(j, format, out);
        };
    });

    auto* x_cmd = app.add_subcommand("x-bundle", "Classify a figure-X bundle by its monodromy");
    x_cmd->add_option("--monodromy", monodromy, "Permutation in cycle notation, e.g. (1234)");
    x_cmd->add_flag("--all", all, "List all eight bundles");
    x_cmd->callback([&] {
        action = [&] {
            if (monodromy.empty() && !all)
                throw CLI::ValidationError("x-bundle", "give --monodromy or --all");
            std::vector<bands::Permutation> perms;
            if (all)
                perms = bands::x_symmetries();
            else
                perms.push_back(bands::parse_permutation(monodromy));
            Json list = Json::array();
            for (const auto& p : perms) {
                const auto b = bands::classify_x_bundle(p);
                Json j;
                j["monodromy"] = bands::cycle_notation(p);
                j["index"] = b.index;
                j["orientable"] = b.orientable;
                j["preserves_figure8_pairs"] = bands::preserves_figure8_pairs(p);
                if (b.fiber8)
                    j["fiber8"] = b.fiber8->first + " in " + b.fiber8->second;
                list.push_back(j);
            }
            Json report;
            report["bundles"] = list;
            emit(report, format, out);
        };
    });

    auto* iso_cmd = app.add_subcommand("isotropy", "Isotropy of the kink action on a surface");
    iso_cmd->add_option("--surface", surface, "catalog:<name> or file")->required();
    iso_cmd->add_option("--parity", parity, "Homotopy class parity")->required()->check(CLI::IsMember({"even", "odd"}));
    iso_cmd->callback([&] {
        action = [&] {
            const auto t = load_manifold(surface);
            const auto iso = bands::kink_isotropy(t, parity == "odd" ? bands::Parity::odd : bands::Parity::even);
            Json j;
            j["surface"] = surface;
            j["h1_dim"] = iso.h1_dim;
            j["w1"] = bits(iso.w1);
            Json sub = Json::array();
            for (const auto& v : iso.subgroup)
                sub.push_back(bits(v));
            j["subgroup"] = sub;
            j["class_count"] = iso.class_count;
            emit(j, format, out);
        };
    });

    auto* catalog_cmd = app.add_subcommand("catalog", "Built-in manifolds with their groups");
    catalog_cmd->callback([&] {
        action = [&] {
            Json rows = Json::array();
            for (const auto& name : complex::catalog_names()) {
                const auto ctx = homology::build_context(complex::catalog(name));
                Json j;
                j["name"] = name;
                j["dim"] = ctx->dim();
                j["orientable"] = ctx->orientable();
                j["betti"] = ctx->betti_numbers();
                if (ctx->dim() == 3) {
                    const group::CobordismGroup g(ctx);
                    j["variant"] = group::to_string(g.variant());
                    j["order"] = g.order();
                    j["structure"] = structure_json(g);
                }
                rows.push_back(j);
            }
            if (format == "json") {
                Json report;
                report["catalog"] = rows;
                emit(report, format, out);
                return;
            }
            out << "name     dim  orientable  betti     variant        order  structure\n";
            for (const auto& r : rows) {
                std::string betti, structure;
                for (const auto& b : r["betti"])
                    betti += (betti.empty() ? "" : ",") + b.dump();
                if (r.contains("structure"))
                    for (const auto& f : r["structure"])
                        structure += (structure.empty() ? "Z/" : " x Z/") + f.dump();
                char line[160];
                std::snprintf(line, sizeof line, "%-8s %-4d %-11s %-9s %-14s %-6s %s\n",
                              r["name"].get<std::string>().c_str(), r["dim"].get<int>(),
                              r["orientable"].get<bool>() ? "yes" : "no", betti.c_str(),
                              r.contains("variant") ? r["variant"].get<std::string>().c_str() : "-",
                              r.contains("order") ? r["order"].dump().c_str() : "-", structure.c_str());
                out << line;
            }
        };
    });

    auto* verify_cmd = app.add_subcommand("verify", "Axiom suite and realization round trip");
    verify_cmd->add_option("--manifold", manifold, "catalog:<name> or file")->required();
    verify_cmd->add_option("--samples", samples, "Sampled-mode triples");
    verify_cmd->add_option("--seed", seed, "Sampled-mode seed");
    verify_cmd->callback([&] {
        action = [&] {
            const auto ctx = context();
            const group::CobordismGroup g(ctx);
            const auto bound = exhaustive_bound();
            Json j = manifold_header(manifold, *ctx);
            j["variant"] = group::to_string(g.variant());
            j["order"] = g.order();
            j["exhaustive_bound"] = bound;
            j["axioms"] = axioms_json(g, bound, samples, seed);
            bool ok = j["axioms"]["passed"].get<bool>();
            if (g.variant() == group::Variant::nonorientable && g.order() <= bound) {
                std::uint64_t failures = 0;
                for (std::uint64_t i = 0; i < g.order(); ++i) {
                    const auto e = g.element_at(i);
                    if (!(immersion::psi(g, immersion::realize(g, e).data) == e))
                        ++failures;
                }
                Json rt;
                rt["elements"] = g.order();
                rt["failures"] = failures;
                j["realize_round_trip"] = rt;
                ok = ok && failures == 0;
            }
            j["passed"] = ok;
            emit(j, format, out);
            if (!ok)
                throw Error("verification failed");
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    try {
        action();
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace cobord::cli

#include "cobord/homology.hpp"

#include "cobord/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>

namespace cobord::homology {

namespace {

std::atomic<std::uint64_t> next_context_id{1};

std::vector<BitVector> columns_of(const BitMatrix& m)
{
    std::vector<BitVector> cols;
    cols.reserve(m.cols());
    const auto t = m.transpose();
    for (std::size_t c = 0; c < m.cols(); ++c)
        cols.push_back(t.row(c));
    return cols;
}

std::vector<BitVector> rows_of(const BitMatrix& m)
{
    std::vector<BitVector> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        rows.push_back(m.row(r));
    return rows;
}

std::vector<BitVector> all_units(std::size_t n)
{
    std::vector<BitVector> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(BitVector::unit(n, i));
    return out;
}

} // namespace

std::string fnv1a_hex(const std::string& text)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

HomologyContext::HomologyContext(const complex::Triangulation& t)
    : triangulation_((complex::require_valid(t), t)), skeleton_(t), id_(next_context_id++),
      hash_(fnv1a_hex(t.to_text()))
{
    const int n = t.dim();

    boundary_.resize(static_cast<std::size_t>(n + 1));
    for (int k = 1; k <= n; ++k) {
        BitMatrix d(skeleton_.count(k - 1), skeleton_.count(k));
        const auto& faces = skeleton_.faces(k);
        for (std::size_t j = 0; j < faces.size(); ++j) {
            for (std::size_t drop = 0; drop < faces[j].size(); ++drop) {
                complex::Simplex f;
                for (std::size_t i = 0; i < faces[j].size(); ++i)
                    if (i != drop)
                        f.push_back(faces[j][i]);
                d.set(skeleton_.index(f), j);
            }
        }
        boundary_[static_cast<std::size_t>(k)] = std::move(d);
    }

    for (int k = 0; k <= n; ++k) {
        const std::size_t size = skeleton_.count(k);
        const auto cycles = k == 0 ? all_units(size) : gf2::kernel_basis(boundary(k));
        const auto bounds = k == n ? std::vector<BitVector>{} : columns_of(boundary(k + 1));
        homology_.emplace_back(cycles, bounds, size);

        const auto cocycles = k == n ? all_units(size) : gf2::kernel_basis(boundary(k + 1).transpose());
        const auto cobounds = k == 0 ? std::vector<BitVector>{} : rows_of(boundary(k));
        cohomology_.emplace_back(cocycles, cobounds, size);
    }

    fundamental_ = BitVector(skeleton_.count(n));
    for (const auto& s : t.top_simplices())
        fundamental_.set(skeleton_.index(s));

    const complex::W1Evaluator w1(t);
    w1_ = BitVector(betti(1));
    for (std::size_t i = 0; i < betti(1); ++i)
        w1_.set(i, w1.evaluate(homology(1).basis()[i]));

    if (n == 3) {
        const std::size_t b1 = cohomology(1).dim();
        const std::size_t b2 = betti(2);
        if (b1 != b2)
            throw Error("dim H^1 = " + std::to_string(b1) + " differs from dim H_2 = " + std::to_string(b2) +
                        "; not a closed 3-manifold");
        std::vector<BitVector> images;
        for (const auto& alpha : cohomology(1).basis())
            images.push_back(class_of_cycle(2, cap_fundamental(1, alpha)).coords);
        pd_solver_.emplace(BitMatrix::from_columns(images, b2));
        if (pd_solver_->rank() != b2)
            throw Error("Poincare duality map H^1 -> H_2 is singular; not a closed 3-manifold");

        std::vector<BitVector> duals;
        for (std::size_t i = 0; i < b2; ++i)
            duals.push_back(pd_inverse_H2(basis_class(2, i)).cocycle);
        pairing_.assign(b2, std::vector<BitVector>(b2));
        for (std::size_t i = 0; i < b2; ++i)
            for (std::size_t j = 0; j < b2; ++j)
                pairing_[i][j] = class_of_cycle(1, cap_fundamental(2, cup11(duals[i], duals[j]))).coords;
    }
}

const BitMatrix& HomologyContext::boundary(int k) const
{
    if (k < 1 || k > dim())
        throw Error("boundary operator index out of range");
    return boundary_[static_cast<std::size_t>(k)];
}

BitVector HomologyContext::boundary_of(int k, const BitVector& chain) const
{
    if (k == 0)
        return BitVector(0);
    return boundary(k) * chain;
}

BitVector HomologyContext::coboundary_of(int k, const BitVector& cochain) const
{
    if (k == dim())
        return BitVector(0);
    return boundary(k + 1).transpose() * cochain;
}

bool HomologyContext::is_cycle(int k, const BitVector& chain) const
{
    if (chain.size() != simplex_count(k))
        throw Error(std::to_string(k) + "-chain has length " + std::to_string(chain.size()) + ", expected " +
                    std::to_string(simplex_count(k)));
    return boundary_of(k, chain).is_zero();
}

bool HomologyContext::is_cocycle(int k, const BitVector& cochain) const
{
    if (cochain.size() != simplex_count(k))
        throw Error(std::to_string(k) + "-cochain has length " + std::to_string(cochain.size()) + ", expected " +
                    std::to_string(simplex_count(k)));
    return coboundary_of(k, cochain).is_zero();
}

std::vector<std::size_t> HomologyContext::betti_numbers() const
{
    std::vector<std::size_t> b;
    for (int k = 0; k <= dim(); ++k)
        b.push_back(betti(k));
    return b;
}

BitVector HomologyContext::chain_from_simplices(int k, const std::vector<complex::Simplex>& simplices) const
{
    BitVector chain(simplex_count(k));
    for (auto s : simplices) {
        if (s.size() != static_cast<std::size_t>(k + 1))
            throw Error("expected a " + std::to_string(k) + "-simplex");
        std::sort(s.begin(), s.end());
        chain.flip(skeleton_.index(s));
    }
    return chain;
}

HomologyClass HomologyContext::class_of_cycle(int k, const BitVector& chain) const
{
    if (!is_cycle(k, chain))
        throw Error(std::to_string(k) + "-chain is not a cycle");
    return {k, homology(k).coords(chain), id_};
}

BitVector HomologyContext::cohomology_coords(int k, const BitVector& cocycle) const
{
    if (!is_cocycle(k, cocycle))
        throw Error(std::to_string(k) + "-cochain is not a cocycle");
    return cohomology(k).coords(cocycle);
}

BitVector HomologyContext::representative(const HomologyClass& c) const
{
    require_context(c, c.dim);
    return homology(c.dim).representative(c.coords);
}

HomologyClass HomologyContext::zero_class(int k) const { return {k, BitVector(betti(k)), id_}; }

HomologyClass HomologyContext::basis_class(int k, std::size_t i) const
{
    return {k, BitVector::unit(betti(k), i), id_};
}

HomologyClass HomologyContext::make_class(int k, const BitVector& coords) const
{
    if (coords.size() != betti(k))
        throw Error("H_" + std::to_string(k) + " coordinates need length " + std::to_string(betti(k)));
    return {k, coords, id_};
}

BitVector HomologyContext::cup(int p, const BitVector& a, int q, const BitVector& b) const
{
    if (p < 0 || q < 0 || p + q > dim())
        throw Error("cup product degree out of range");
    if (a.size() != simplex_count(p) || b.size() != simplex_count(q))
        throw Error("cochain length does not match simplex count");
    const auto& targets = skeleton_.faces(p + q);
    BitVector out(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto& s = targets[i];
        const complex::Simplex front(s.begin(), s.begin() + p + 1);
        if (!a.get(skeleton_.index(front)))
            continue;
        const complex::Simplex back(s.begin() + p, s.end());
        if (b.get(skeleton_.index(back)))
            out.set(i);
    }
    return out;
}

BitVector HomologyContext::cap_fundamental(int k, const BitVector& a) const
{
    if (k < 0 || k > dim())
        throw Error("cap product degree out of range");
    if (a.size() != simplex_count(k))
        throw Error("cochain length does not match simplex count");
    BitVector out(simplex_count(dim() - k));
    for (const auto& s : triangulation_.top_simplices()) {
        const complex::Simplex front(s.begin(), s.begin() + k + 1);
        if (a.get(skeleton_.index(front)))
            out.flip(skeleton_.index(complex::Simplex(s.begin() + k, s.end())));
    }
    return out;
}

void HomologyContext::require_context(const HomologyClass& c, int k) const
{
    if (c.context != id_)
        throw Error("homology class belongs to a different context");
    if (c.dim != k)
        throw Error("expected a class of dimension " + std::to_string(k) + ", got " + std::to_string(c.dim));
    if (c.coords.size() != betti(k))
        throw Error("class coordinates have the wrong length");
}

void HomologyContext::require_three_manifold() const
{
    if (dim() != 3)
        throw Error("Poincare duality and the intersection pairing need a 3-manifold");
}

DualCocycle HomologyContext::pd_inverse_H2(const HomologyClass& h) const
{
    require_three_manifold();
    require_context(h, 2);
    auto x = pd_solver_->solve(h.coords);
    if (!x)
        throw Error("class has no Poincare dual; inconsistent context");
    return {*x, cohomology(1).representative(*x)};
}

const std::vector<std::vector<BitVector>>& HomologyContext::pairing_table() const
{
    require_three_manifold();
    return pairing_;
}

HomologyClass HomologyContext::intersect_H2(const HomologyClass& a, const HomologyClass& b) const
{
    require_three_manifold();
    require_context(a, 2);
    require_context(b, 2);
    BitVector out(betti(1));
    for (auto i : a.coords.support())
        for (auto j : b.coords.support())
            out += pairing_[i][j];
    return {1, out, id_};
}

HomologyClass HomologyContext::intersect_H2_chain_level(const HomologyClass& a, const HomologyClass& b) const
{
    const auto da = pd_inverse_H2(a).cocycle;
    const auto db = pd_inverse_H2(b).cocycle;
    return class_of_cycle(1, cap_fundamental(2, cup11(da, db)));
}

bool HomologyContext::evaluate_w1(const HomologyClass& delta) const
{
    require_context(delta, 1);
    return delta.coords.dot(w1_);
}

ContextPtr build_context(const complex::Triangulation& t) { return std::make_shared<const HomologyContext>(t); }

} // namespace cobord::homology

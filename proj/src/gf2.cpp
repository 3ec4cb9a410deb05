#include "cobord/gf2.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

namespace cobord::gf2 {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

// Reduce `m` in place; `companion` (if any) receives the same row operations.
std::vector<std::size_t> eliminate(BitMatrix& m, BitMatrix* companion)
{
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < m.cols() && next_row < m.rows(); ++col) {
        std::size_t found = m.rows();
        for (std::size_t r = next_row; r < m.rows(); ++r) {
            if (m.get(r, col)) {
                found = r;
                break;
            }
        }
        if (found == m.rows())
            continue;
        if (found != next_row) {
            std::swap(m.row(found), m.row(next_row));
            if (companion)
                std::swap(companion->row(found), companion->row(next_row));
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != next_row && m.get(r, col)) {
                m.row(r) += m.row(next_row);
                if (companion)
                    companion->row(r) += companion->row(next_row);
            }
        }
        pivots.push_back(col);
        ++next_row;
    }
    return pivots;
}

} // namespace

// ---------------------------------------------------------------------------
// BitVector

BitVector::BitVector(std::size_t length) : length_(length), words_(word_count(length), 0) {}

BitVector BitVector::from_string(const std::string& bits)
{
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(i);
        else if (bits[i] != '0')
            throw std::invalid_argument("bit string may only contain '0' and '1': " + bits);
    }
    return v;
}

BitVector BitVector::unit(std::size_t length, std::size_t index)
{
    BitVector v(length);
    v.set(index);
    return v;
}

BitVector BitVector::from_mask(std::size_t length, std::uint64_t mask)
{
    if (length > 64)
        throw std::invalid_argument("from_mask supports at most 64 coordinates");
    BitVector v(length);
    if (length > 0)
        v.words_[0] = length == 64 ? mask : (mask & ((std::uint64_t{1} << length) - 1));
    return v;
}

void BitVector::set(std::size_t i, bool value)
{
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value)
        words_[i >> 6] |= bit;
    else
        words_[i >> 6] &= ~bit;
}

bool BitVector::is_zero() const
{
    for (auto w : words_)
        if (w)
            return false;
    return true;
}

std::size_t BitVector::popcount() const
{
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::vector<std::size_t> BitVector::support() const
{
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

std::uint64_t BitVector::to_mask() const
{
    if (length_ > 64)
        throw std::invalid_argument("to_mask supports at most 64 coordinates");
    return words_.empty() ? 0 : words_[0];
}

BitVector& BitVector::operator+=(const BitVector& other)
{
    if (other.length_ != length_)
        throw std::invalid_argument("BitVector length mismatch in addition");
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] ^= other.words_[w];
    return *this;
}

bool BitVector::dot(const BitVector& other) const
{
    if (other.length_ != length_)
        throw std::invalid_argument("BitVector length mismatch in dot product");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w)
        acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
}

std::string BitVector::to_string() const
{
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i)
        if (get(i))
            s[i] = '1';
    return s;
}

// ---------------------------------------------------------------------------
// BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows, BitVector(cols))
{
}

BitMatrix BitMatrix::identity(std::size_t n)
{
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i);
    return m;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVector> rows, std::size_t cols)
{
    BitMatrix m;
    m.rows_ = rows.size();
    m.cols_ = cols;
    for (const auto& r : rows)
        if (r.size() != cols)
            throw std::invalid_argument("row length does not match column count");
    m.data_ = std::move(rows);
    return m;
}

BitMatrix BitMatrix::from_columns(std::span<const BitVector> columns, std::size_t rows)
{
    BitMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows)
            throw std::invalid_argument("column length does not match row count");
        for (auto r : columns[c].support())
            m.set(r, c);
    }
    return m;
}

BitMatrix BitMatrix::parse(const std::vector<std::string>& rows)
{
    std::vector<BitVector> data;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows)
        data.push_back(BitVector::from_string(r));
    return from_rows(std::move(data), cols);
}

BitVector BitMatrix::column(std::size_t c) const
{
    BitVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        if (get(r, c))
            v.set(r);
    return v;
}

BitMatrix BitMatrix::transpose() const
{
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (auto c : data_[r].support())
            t.set(c, r);
    return t;
}

BitVector BitMatrix::operator*(const BitVector& x) const
{
    if (x.size() != cols_)
        throw std::invalid_argument("matrix-vector dimension mismatch");
    BitVector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        if (data_[r].dot(x))
            y.set(r);
    return y;
}

BitMatrix BitMatrix::operator*(const BitMatrix& other) const
{
    if (other.rows_ != cols_)
        throw std::invalid_argument("matrix-matrix dimension mismatch");
    BitMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (auto k : data_[r].support())
            out.data_[r] += other.data_[k];
    return out;
}

bool BitMatrix::is_zero() const
{
    for (const auto& r : data_)
        if (!r.is_zero())
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// elimination

RowEchelon rref(const BitMatrix& a)
{
    RowEchelon out{a, {}, 0};
    out.pivots = eliminate(out.reduced, nullptr);
    out.rank = out.pivots.size();
    return out;
}

std::size_t rank(const BitMatrix& a) { return rref(a).rank; }

std::optional<BitVector> solve(const BitMatrix& a, const BitVector& b)
{
    if (b.size() != a.rows())
        throw std::invalid_argument("solve: right-hand side length does not match row count");
    BitMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (auto c : a.row(r).support())
            aug.set(r, c);
        if (b.get(r))
            aug.set(r, a.cols());
    }
    const auto pivots = eliminate(aug, nullptr);
    if (!pivots.empty() && pivots.back() == a.cols())
        return std::nullopt;
    BitVector x(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (aug.get(i, a.cols()))
            x.set(pivots[i]);
    return x;
}

std::vector<BitVector> kernel_basis(const BitMatrix& a)
{
    const auto e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<BitVector> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f])
            continue;
        BitVector v(a.cols());
        v.set(f);
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            if (e.reduced.get(i, f))
                v.set(e.pivots[i]);
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Solver

Solver::Solver(const BitMatrix& a) : rows_(a.rows()), cols_(a.cols()), transform_(BitMatrix::identity(a.rows()))
{
    BitMatrix work = a;
    pivots_ = eliminate(work, &transform_);
}

bool Solver::in_image(const BitVector& b) const
{
    if (b.size() != rows_)
        throw std::invalid_argument("solve: right-hand side length does not match row count");
    for (std::size_t r = pivots_.size(); r < rows_; ++r)
        if (transform_.row(r).dot(b))
            return false;
    return true;
}

std::optional<BitVector> Solver::solve(const BitVector& b) const
{
    if (!in_image(b))
        return std::nullopt;
    BitVector x(cols_);
    for (std::size_t i = 0; i < pivots_.size(); ++i)
        if (transform_.row(i).dot(b))
            x.set(pivots_[i]);
    return x;
}

// ---------------------------------------------------------------------------
// QuotientBasis

namespace detail {

struct QuotientParts
{
    std::size_t boundary_rank = 0;
    std::vector<BitVector> basis;
    BitMatrix frame; // columns: independent boundaries, then basis
};

QuotientParts split_quotient(std::span<const BitVector> cycles, std::span<const BitVector> boundaries,
                             std::size_t ambient_dim)
{
    for (const auto& v : cycles)
        if (v.size() != ambient_dim)
            throw std::invalid_argument("quotient_basis: cycle length mismatch");
    for (const auto& v : boundaries)
        if (v.size() != ambient_dim)
            throw std::invalid_argument("quotient_basis: boundary length mismatch");

    std::vector<BitVector> all(boundaries.begin(), boundaries.end());
    all.insert(all.end(), cycles.begin(), cycles.end());
    const auto joint = rref(BitMatrix::from_columns(all, ambient_dim));
    const auto cycle_rank = rank(BitMatrix::from_columns(cycles, ambient_dim));
    if (joint.rank != cycle_rank)
        throw std::invalid_argument("quotient_basis: boundaries are not contained in the span of the cycles");

    QuotientParts parts;
    std::vector<BitVector> kept;
    for (auto p : joint.pivots) {
        if (p < boundaries.size()) {
            kept.push_back(boundaries[p]);
            ++parts.boundary_rank;
        } else {
            parts.basis.push_back(cycles[p - boundaries.size()]);
        }
    }
    kept.insert(kept.end(), parts.basis.begin(), parts.basis.end());
    parts.frame = BitMatrix::from_columns(kept, ambient_dim);
    return parts;
}

} // namespace detail

QuotientBasis::QuotientBasis(std::span<const BitVector> cycles, std::span<const BitVector> boundaries,
                             std::size_t ambient_dim)
    : QuotientBasis(detail::split_quotient(cycles, boundaries, ambient_dim), ambient_dim)
{
}

QuotientBasis::QuotientBasis(detail::QuotientParts&& parts, std::size_t ambient_dim)
    : ambient_dim_(ambient_dim), boundary_rank_(parts.boundary_rank), basis_(std::move(parts.basis)),
      solver_(parts.frame)
{
}

BitVector QuotientBasis::coords(const BitVector& z) const
{
    if (z.size() != ambient_dim_)
        throw std::invalid_argument("coords: vector length mismatch");
    auto x = solver_.solve(z);
    if (!x)
        throw std::invalid_argument("coords: vector is not in the span of the cycles");
    BitVector c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (x->get(boundary_rank_ + i))
            c.set(i);
    return c;
}

BitVector QuotientBasis::representative(const BitVector& coords) const
{
    if (coords.size() != basis_.size())
        throw std::invalid_argument("representative: coordinate length mismatch");
    BitVector z(ambient_dim_);
    for (auto i : coords.support())
        z += basis_[i];
    return z;
}

QuotientBasis quotient_basis(std::span<const BitVector> cycles, std::span<const BitVector> boundaries,
                             std::size_t ambient_dim)
{
    return QuotientBasis(cycles, boundaries, ambient_dim);
}

} // namespace cobord::gf2

/**
 * Dense bit-packed linear algebra over the two-element field.
 *
 * Every homology computation in the library reduces to row reduction of
 * BitMatrix instances. Rows are packed into 64-bit words; elimination always
 * picks the lowest-index row carrying a 1 in the current pivot column, so
 * bases and coordinate vectors are reproducible across runs.
 */
#ifndef COBORD_GF2_HPP
#define COBORD_GF2_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cobord::gf2 {

namespace detail {
struct QuotientParts;
}

class BitVector
{
  public:
    BitVector() = default;
    explicit BitVector(std::size_t length);

    /// Parse a string of '0'/'1' characters; index 0 is the first character.
    static BitVector from_string(const std::string& bits);
    static BitVector unit(std::size_t length, std::size_t index);
    /// Low `length` bits of `mask`, bit i of the mask becoming coordinate i.
    static BitVector from_mask(std::size_t length, std::uint64_t mask);

    std::size_t size() const { return length_; }
    bool empty() const { return length_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool value = true);
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    bool is_zero() const;
    std::size_t popcount() const;
    /// Indices of the nonzero coordinates, increasing.
    std::vector<std::size_t> support() const;
    /// Bits 0..63 packed into an integer; requires size() <= 64.
    std::uint64_t to_mask() const;

    BitVector& operator+=(const BitVector& other);
    friend BitVector operator+(BitVector a, const BitVector& b) { return a += b; }
    bool dot(const BitVector& other) const;

    std::string to_string() const;

    bool operator==(const BitVector& other) const = default;
    auto operator<=>(const BitVector& other) const = default;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

  private:
    std::size_t length_ = 0;
    std::vector<std::uint64_t> words_;
};

class BitMatrix
{
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(std::vector<BitVector> rows, std::size_t cols);
    /// Matrix whose j-th column is columns[j]; every column has length `rows`.
    static BitMatrix from_columns(std::span<const BitVector> columns, std::size_t rows);
    /// Rows given as strings of '0'/'1'.
    static BitMatrix parse(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool value = true) { data_[r].set(c, value); }
    void flip(std::size_t r, std::size_t c) { data_[r].flip(c); }

    const BitVector& row(std::size_t r) const { return data_[r]; }
    BitVector& row(std::size_t r) { return data_[r]; }
    BitVector column(std::size_t c) const;

    BitMatrix transpose() const;
    BitVector operator*(const BitVector& x) const;
    BitMatrix operator*(const BitMatrix& other) const;

    bool is_zero() const;
    bool operator==(const BitMatrix& other) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BitVector> data_;
};

struct RowEchelon
{
    BitMatrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

/// Reduced row-echelon form over GF(2).
RowEchelon rref(const BitMatrix& a);

std::size_t rank(const BitMatrix& a);

/// The solution of a*x = b with every free coordinate set to zero, or
/// nullopt when b is outside the column space. Throws std::invalid_argument
/// on a dimension mismatch.
std::optional<BitVector> solve(const BitMatrix& a, const BitVector& b);

/// One vector per free column of rref(a): that coordinate set to 1, the
/// other free coordinates 0.
std::vector<BitVector> kernel_basis(const BitMatrix& a);

/**
 * Factorised solver for repeated right-hand sides of one matrix.
 *
 * Elimination is done once on [A | I]; each solve is then one
 * matrix-vector product with the recorded row transform. Produces exactly
 * the same answers as the free function `solve`.
 */
class Solver
{
  public:
    explicit Solver(const BitMatrix& a);

    std::size_t rank() const { return pivots_.size(); }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool in_image(const BitVector& b) const;
    std::optional<BitVector> solve(const BitVector& b) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> pivots_;
    BitMatrix transform_; // rows x rows, transform_ * a == rref(a)
};

/**
 * Basis of span(cycles) / span(boundaries) together with the coordinate map.
 *
 * The basis is chosen greedily: boundaries first (discarding dependent
 * ones), then each cycle in input order that is independent of everything
 * kept so far. coords(z) reads off the basis part of the unique expansion of
 * z in [independent boundaries | basis].
 */
class QuotientBasis
{
  public:
    /// Throws std::invalid_argument when some boundary is not in the span of
    /// the cycles, or vector lengths disagree.
    QuotientBasis(std::span<const BitVector> cycles, std::span<const BitVector> boundaries,
                  std::size_t ambient_dim);

    std::size_t dim() const { return basis_.size(); }
    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<BitVector>& basis() const { return basis_; }

    /// Coordinates of z modulo boundaries. Throws std::invalid_argument when z
    /// lies outside span(cycles).
    BitVector coords(const BitVector& z) const;
    bool in_span(const BitVector& z) const { return solver_.in_image(z); }
    /// The representative sum of basis vectors with the given coordinates.
    BitVector representative(const BitVector& coords) const;

  private:
    QuotientBasis(detail::QuotientParts&& parts, std::size_t ambient_dim);

    std::size_t ambient_dim_ = 0;
    std::size_t boundary_rank_ = 0;
    std::vector<BitVector> basis_;
    Solver solver_;
};

QuotientBasis quotient_basis(std::span<const BitVector> cycles,
                             std::span<const BitVector> boundaries, std::size_t ambient_dim);

} // namespace cobord::gf2

#endif

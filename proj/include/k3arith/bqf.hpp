#ifndef K3ARITH_BQF_HPP
#define K3ARITH_BQF_HPP

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

// Positive definite binary quadratic forms a x^2 + b xy + c y^2, i.e. the
// even lattice with Gram matrix (2a b; b 2c), discriminant b^2 - 4ac < 0.
namespace k3::bqf {

struct BinaryQuadraticForm {
    std::int64_t a = 1;
    std::int64_t b = 0;
    std::int64_t c = 1;

    std::int64_t discriminant() const;
    bool is_positive_definite() const;
    bool is_primitive() const;
    bool is_reduced() const;
    /// (a, -b, c): the inverse class, and the opposite orientation.
    BinaryQuadraticForm conjugate() const { return {a, -b, c}; }

    auto operator<=>(BinaryQuadraticForm const &) const = default;
};

std::ostream & operator<<(std::ostream & os, BinaryQuadraticForm const & f);
std::string to_string(BinaryQuadraticForm const & f);
/// "a,b,c"
BinaryQuadraticForm parse_form(std::string_view text);

/// The reduced representative of the SL(2,Z)-orbit of f:
/// -a < b <= a <= c, and b >= 0 when a == c. DomainError unless f is
/// positive definite.
BinaryQuadraticForm reduce(BinaryQuadraticForm f);

/// Singular K3 surfaces X, X' with Q(X) = f, Q(X') = g are isomorphic iff
/// f and g are SL(2,Z)-conjugate. Orientation matters.
bool is_isomorphic_singular_k3(BinaryQuadraticForm const & f, BinaryQuadraticForm const & g);

/// GL(2,Z)-equivalence: forgets orientation. Diagnostics only.
bool is_gl2_equivalent(BinaryQuadraticForm const & f, BinaryQuadraticForm const & g);

/// Reduced Gauss composition. DomainError for imprimitive forms or
/// mismatched discriminants.
BinaryQuadraticForm compose(BinaryQuadraticForm const & f, BinaryQuadraticForm const & g);

BinaryQuadraticForm principal_form(std::int64_t d);

/// (na, nb, nc): the lattice T[n] with the form multiplied by n.
BinaryQuadraticForm scale(BinaryQuadraticForm const & f, std::int64_t n);

/// Form class group Cl(d) for a negative discriminant d == 0, 1 mod 4.
/// Non-fundamental d are handled as given (no passage to the fundamental
/// discriminant).
class ClassGroup {
  public:
    explicit ClassGroup(std::int64_t d);

    std::int64_t discriminant() const { return d_; }
    std::size_t order() const { return forms_.size(); }
    std::vector<BinaryQuadraticForm> const & forms() const { return forms_; }
    std::size_t identity() const { return 0; }
    /// table()[i][j] = index of forms()[i] * forms()[j]
    std::vector<std::vector<std::size_t>> const & table() const { return table_; }

    std::size_t index_of(BinaryQuadraticForm const & f) const;
    std::size_t element_order(std::size_t i) const;
    std::size_t exponent() const;
    bool is_abelian() const;

  private:
    std::int64_t d_;
    std::vector<BinaryQuadraticForm> forms_;
    std::vector<std::vector<std::size_t>> table_;
};

/// Reduced primitive forms of discriminant d, principal form first then
/// ascending (a, |b|, sign).
std::vector<BinaryQuadraticForm> reduced_forms(std::int64_t d);

std::size_t class_number(std::int64_t d);

/// All d in [-bound, -1] with d == 0, 1 mod 4 and h(d) = 1, ordered
/// -3, -4, -7, ...
std::vector<std::int64_t> class_number_one_discriminants(std::int64_t bound);

bool is_discriminant(std::int64_t d);

} // namespace k3::bqf

#endif // K3ARITH_BQF_HPP

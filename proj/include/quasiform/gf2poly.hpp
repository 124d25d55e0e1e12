#ifndef QUASIFORM_GF2POLY_HPP
#define QUASIFORM_GF2POLY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qf
{

/// Sparse multivariate polynomial over the two-element field.
///
/// Variables are positional: exponent slot i refers to variable i of whatever
/// ring the polynomial lives in (see PolyRing). Trailing all-zero slots are
/// trimmed, so a polynomial in variables 0..k also embeds unchanged into any
/// ring that extends the variable list. Terms are kept strictly descending in
/// lexicographic order with variable 0 most significant; the zero polynomial
/// has no terms.
class Poly
{
public:
    using Exponent = std::uint32_t;

    Poly() = default;

    static Poly one();
    static Poly variable(std::size_t index, Exponent power = 1);
    static Poly monomial(std::span<const Exponent> exponents);

    bool is_zero() const noexcept
    {
        return terms_ == 0;
    }
    bool is_one() const noexcept
    {
        return terms_ == 1 && width_ == 0;
    }
    bool is_monomial() const noexcept
    {
        return terms_ == 1;
    }
    /// True for 0 and 1.
    bool is_constant() const noexcept
    {
        return width_ == 0;
    }

    std::size_t term_count() const noexcept
    {
        return terms_;
    }
    /// Number of stored exponent slots (index of the last variable used, plus one).
    std::size_t width() const noexcept
    {
        return width_;
    }
    std::span<const Exponent> term(std::size_t i) const
    {
        return {exps_.data() + i * width_, width_};
    }
    Exponent exponent(std::size_t term, std::size_t var) const
    {
        return var < width_ ? exps_[term * width_ + var] : 0;
    }

    Exponent degree_in(std::size_t var) const;
    std::uint64_t total_degree() const;
    /// Indices of variables occurring with a nonzero exponent.
    std::vector<std::size_t> support() const;

    Poly &operator+=(const Poly &other);
    Poly &operator*=(const Poly &other);
    friend Poly operator+(const Poly &a, const Poly &b);
    friend Poly operator*(const Poly &a, const Poly &b);

    /// Frobenius: doubles every exponent. Cross terms vanish in characteristic 2.
    Poly squared() const;
    Poly pow(std::uint64_t n) const;
    /// The unique square root when every exponent of every term is even.
    std::optional<Poly> sqrt() const;

    /// Formal partial derivative; t^e -> (e mod 2) t^(e-1).
    Poly derivative(std::size_t var) const;

    /// Multiply by the monomial with the given exponents (order preserving).
    Poly shifted(std::span<const Exponent> exponents) const;
    /// Exact division by a monomial; absent when some term is not divisible.
    std::optional<Poly> divided_by_monomial(std::span<const Exponent> exponents) const;
    /// Build from `count` terms already in strictly descending order, `width` entries each.
    static Poly from_sorted_terms(std::size_t width, std::size_t count, std::vector<Exponent> flat);
    /// Componentwise minimum of the exponents of all terms (empty for zero).
    std::vector<Exponent> monomial_content() const;

    /// Coefficients with respect to `var`: result[k] is the coefficient of var^k.
    std::vector<Poly> coefficients_in(std::size_t var) const;
    static Poly from_coefficients(std::span<const Poly> coefficients, std::size_t var);

    /// Split p = sum_e v^e * S_e(v)^2 with e ranging over 0/1 exponent patterns.
    /// Keys are the parity patterns packed as bit masks (variable i -> bit i).
    std::map<std::vector<std::uint64_t>, Poly> parity_split() const;

    bool operator==(const Poly &other) const = default;

    /// Total order used for canonical sorting (not an algebraic order).
    friend bool operator<(const Poly &a, const Poly &b);

    std::size_t hash() const noexcept;

private:
    friend Poly merge_xor(const Poly &a, const Poly &b);

    void trim();

    std::size_t width_ = 0;
    std::size_t terms_ = 0;
    std::vector<Exponent> exps_;
};

/// Exact quotient a / b when b divides a; absent otherwise. Throws DivisionByZero for b = 0.
std::optional<Poly> divide_exact(const Poly &a, const Poly &b);

/// Greatest common divisor. Units over the two-element field are {1}, so the
/// result is unique. gcd(0, 0) = 0.
Poly gcd(const Poly &a, const Poly &b);

/// Element of the rational function field over the two-element field, kept
/// with coprime numerator and denominator. Zero is 0/1.
class RatFn
{
public:
    RatFn() : den_(Poly::one()) {}
    RatFn(Poly p) : num_(std::move(p)), den_(Poly::one()) {} // NOLINT: implicit embedding
    RatFn(const Poly &num, const Poly &den);

    static RatFn one()
    {
        return RatFn(Poly::one());
    }

    const Poly &num() const noexcept
    {
        return num_;
    }
    const Poly &den() const noexcept
    {
        return den_;
    }

    bool is_zero() const noexcept
    {
        return num_.is_zero();
    }
    bool is_one() const noexcept
    {
        return num_.is_one() && den_.is_one();
    }
    bool is_polynomial() const noexcept
    {
        return den_.is_one();
    }

    RatFn &operator+=(const RatFn &other);
    RatFn &operator*=(const RatFn &other);
    RatFn &operator/=(const RatFn &other);
    friend RatFn operator+(const RatFn &a, const RatFn &b);
    friend RatFn operator*(const RatFn &a, const RatFn &b);
    friend RatFn operator/(const RatFn &a, const RatFn &b);

    RatFn inverse() const;
    RatFn squared() const;
    RatFn pow(std::int64_t n) const;
    std::optional<RatFn> sqrt() const;
    /// (N/D)' = (N'D + ND') / D^2 in characteristic 2.
    RatFn derivative(std::size_t var) const;

    bool operator==(const RatFn &other) const = default;
    friend bool operator<(const RatFn &a, const RatFn &b);

private:
    struct Reduced {};
    RatFn(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

    Poly num_;
    Poly den_;
};

/// Named, ordered variable list giving meaning to the positional slots of Poly.
class PolyRing
{
public:
    PolyRing() = default;
    explicit PolyRing(std::vector<std::string> names);

    const std::vector<std::string> &names() const noexcept
    {
        return names_;
    }
    std::size_t size() const noexcept
    {
        return names_.size();
    }
    bool contains(std::string_view name) const;
    /// Throws UnknownVariable.
    std::size_t index_of(std::string_view name) const;

    Poly variable(std::string_view name) const;
    Poly derivative(const Poly &p, std::string_view var) const;
    RatFn derivative(const RatFn &p, std::string_view var) const;

    std::string to_string(const Poly &p) const;
    std::string to_string(const RatFn &p) const;

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

} // namespace qf

#endif

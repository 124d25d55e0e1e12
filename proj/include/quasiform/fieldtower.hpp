#ifndef QUASIFORM_FIELDTOWER_HPP
#define QUASIFORM_FIELDTOWER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quasiform/gf2poly.hpp"

namespace qf
{

class FieldTower;
class TowerElement;

using TowerPtr = std::shared_ptr<const FieldTower>;

/// Expansion of a tower element over the square-free monomials in the
/// inseparable generators: pairs (mask, coefficient) sorted by mask, where bit
/// i of the mask selects generator y_i and coefficients live in the rational
/// base. Zero coefficients are never stored.
using Expansion = std::vector<std::pair<std::uint32_t, RatFn>>;

inline constexpr std::size_t default_max_tower_depth = 8;

/// K = F2(v_1..v_N)(y_1..y_s) with y_i^2 = theta_i, theta_i a non-square in
/// F2(v)(y_1..y_{i-1}). Immutable; extensions produce new towers that keep a
/// pointer to the tower they extend.
class FieldTower
{
public:
    struct Generator {
        std::string name;
        Expansion theta;
        /// The subtower theta was given over.
        TowerPtr over;
    };

    /// The purely transcendental field F2(vars).
    static TowerPtr rational(std::vector<std::string> vars, std::size_t max_depth = default_max_tower_depth);

    const PolyRing &base() const noexcept
    {
        return base_;
    }
    const std::vector<Generator> &generators() const noexcept
    {
        return generators_;
    }
    /// Number of inseparable generators.
    std::size_t depth() const noexcept
    {
        return generators_.size();
    }
    std::size_t max_depth() const noexcept
    {
        return max_depth_;
    }
    const TowerPtr &parent() const noexcept
    {
        return parent_;
    }

    bool has_name(std::string_view name) const;
    /// `stem` if unused, otherwise the first of stem_1, stem_2, ... that is free.
    std::string fresh_name(const std::string &stem) const;

    /// True when every element of this tower is, unchanged, an element of `other`:
    /// same base variables as a prefix and same generators as a prefix.
    bool embeds_into(const FieldTower &other) const;

    /// Human-readable description, e.g. "F2(a,b,u2)(y: y^2 = (1 + a*u2^2)/b)".
    std::string describe() const;

    std::string generator_monomial(std::uint32_t mask) const;

private:
    friend TowerPtr extend_transcendental(const TowerPtr &, const std::vector<std::string> &);
    friend TowerPtr extend_inseparable(const TowerPtr &, const TowerElement &, const std::string &);

    FieldTower() = default;

    PolyRing base_;
    std::vector<Generator> generators_;
    TowerPtr parent_;
    std::size_t max_depth_ = default_max_tower_depth;
};

/// Adjoin fresh transcendentals to the rational base. Throws NameCollision.
TowerPtr extend_transcendental(const TowerPtr &tower, const std::vector<std::string> &names);

/// Adjoin y with y^2 = theta. Throws ZeroElement, IsSquare, NameCollision,
/// TowerDepthExceeded.
TowerPtr extend_inseparable(const TowerPtr &tower, const TowerElement &theta, const std::string &name);

/// An element of a FieldTower in reduced square-free normal form.
class TowerElement
{
public:
    explicit TowerElement(TowerPtr tower);
    TowerElement(TowerPtr tower, RatFn value);
    TowerElement(TowerPtr tower, Expansion expansion);

    static TowerElement zero(const TowerPtr &tower)
    {
        return TowerElement(tower);
    }
    static TowerElement one(const TowerPtr &tower)
    {
        return TowerElement(tower, RatFn::one());
    }
    /// A base variable or an inseparable generator, by name.
    static TowerElement variable(const TowerPtr &tower, std::string_view name);

    const TowerPtr &tower() const noexcept
    {
        return tower_;
    }
    const Expansion &expansion() const noexcept
    {
        return expansion_;
    }

    bool is_zero() const noexcept
    {
        return expansion_.empty();
    }
    bool is_one() const noexcept;
    /// True when only the trivial generator monomial occurs.
    bool in_rational_base() const noexcept;
    /// Coefficient of the trivial generator monomial.
    RatFn rational_part() const;

    TowerElement &operator+=(const TowerElement &other);
    TowerElement &operator*=(const TowerElement &other);
    TowerElement &operator/=(const TowerElement &other);
    friend TowerElement operator+(const TowerElement &a, const TowerElement &b);
    friend TowerElement operator*(const TowerElement &a, const TowerElement &b);
    friend TowerElement operator/(const TowerElement &a, const TowerElement &b);

    TowerElement squared() const;
    /// Throws ZeroElement.
    TowerElement inverse() const;
    TowerElement pow(std::int64_t n) const;

    /// Same element viewed in a tower this one embeds into. Throws EmbeddingFailure.
    TowerElement embed(const TowerPtr &bigger) const;

    /// Structural equality after embedding into a common tower.
    friend bool operator==(const TowerElement &a, const TowerElement &b);

    std::string to_string() const;

private:
    TowerPtr tower_;
    Expansion expansion_;
};

/// The larger of two towers when one embeds into the other; throws TowerMismatch otherwise.
TowerPtr common_tower(const TowerPtr &a, const TowerPtr &b);

/// The unique square root of x when x lies in K^2, absent otherwise.
std::optional<TowerElement> sqrt_in_tower(const TowerElement &x);

/// Field homomorphism between towers given by the images of the base
/// variables and of the inseparable generators of the source. Construction
/// verifies image(y_i)^2 = image(theta_i) for every generator.
class TowerMap
{
public:
    TowerMap(TowerPtr source, TowerPtr target, std::vector<TowerElement> base_images,
             std::vector<TowerElement> generator_images);

    const TowerPtr &source() const noexcept
    {
        return source_;
    }
    const TowerPtr &target() const noexcept
    {
        return target_;
    }

    TowerElement operator()(const TowerElement &x) const;
    TowerElement operator()(const RatFn &x) const;
    TowerElement operator()(const Poly &x) const;

private:
    TowerElement apply_expansion(const Expansion &x) const;

    TowerPtr source_;
    TowerPtr target_;
    std::vector<TowerElement> base_images_;
    std::vector<bool> identity_;
    std::vector<TowerElement> generator_images_;
};

namespace detail
{

Expansion expansion_add(const Expansion &a, const Expansion &b);
Expansion expansion_mul(const Expansion &a, const Expansion &b, const FieldTower &tower);
Expansion expansion_square(const Expansion &a, const FieldTower &tower);

} // namespace detail

} // namespace qf

#endif

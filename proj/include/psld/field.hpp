#pragma once

// Arithmetic in GF(p^k) for odd p, polynomial basis over a fixed modulus.
//
// An element is addressed by its canonical index: the base-p integer whose
// digits are the polynomial coefficients, constant term least significant.
// Multiplication goes through exp/log tables, so every field here is small
// (the default order bound is 10^4).

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace psld {

class FieldError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

inline constexpr std::uint32_t default_field_bound = 10000;

/// A value of GF(q). Holds a non-owning pointer to its field; the FieldPtr
/// must outlive every element created from it.
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(const Field *field, std::uint32_t index) : field_(field), index_(index) {}

    const Field &field() const;
    const Field *field_ptr() const { return field_; }
    std::uint32_t index() const { return index_; }
    std::vector<std::uint32_t> coeffs() const;

    bool is_zero() const { return index_ == 0; }
    bool is_one() const { return index_ == 1; }

    FieldElement operator+(const FieldElement &o) const;
    FieldElement operator-(const FieldElement &o) const;
    FieldElement operator*(const FieldElement &o) const;
    FieldElement operator/(const FieldElement &o) const;
    FieldElement operator-() const;
    FieldElement &operator+=(const FieldElement &o) { return *this = *this + o; }
    FieldElement &operator-=(const FieldElement &o) { return *this = *this - o; }
    FieldElement &operator*=(const FieldElement &o) { return *this = *this * o; }

    FieldElement inv() const;
    FieldElement pow(std::int64_t e) const;

    bool operator==(const FieldElement &o) const { return field_ == o.field_ && index_ == o.index_; }
    std::strong_ordering operator<=>(const FieldElement &o) const { return index_ <=> o.index_; }

  private:
    void same_field(const FieldElement &o) const;

    const Field *field_ = nullptr;
    std::uint32_t index_ = 0;
};

class Field {
  public:
    /// Builds GF(p^k) with the lexicographically smallest monic irreducible
    /// modulus. Throws FieldError for non-prime or even p, k == 0, or
    /// p^k > max_order.
    static FieldPtr make(std::uint32_t p, std::uint32_t k, std::uint32_t max_order = default_field_bound);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t q() const { return q_; }
    /// Coefficients of the modulus, constant term first, leading 1 last.
    const std::vector<std::uint32_t> &modulus() const { return modulus_; }

    FieldElement zero() const { return {this, 0}; }
    FieldElement one() const { return {this, 1}; }
    FieldElement element(std::uint32_t index) const;
    /// Image of an integer in the prime subfield.
    FieldElement from_int(std::int64_t v) const;
    FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const;
    std::vector<std::uint32_t> coeffs_of(std::uint32_t index) const;

    // Raw index arithmetic; no validation.
    std::uint32_t add(std::uint32_t x, std::uint32_t y) const;
    std::uint32_t sub(std::uint32_t x, std::uint32_t y) const { return add(x, neg_[y]); }
    std::uint32_t neg(std::uint32_t x) const { return neg_[x]; }
    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
        if (x == 0 || y == 0)
            return 0;
        return exp_[log_[x] + log_[y]];
    }
    std::uint32_t inv(std::uint32_t x) const;
    std::uint32_t pow(std::uint32_t x, std::int64_t e) const;
    std::uint32_t log(std::uint32_t x) const { return log_[x]; }
    bool square(std::uint32_t x) const { return x == 0 || (log_[x] & 1u) == 0; }
    /// Root with smaller index, or -1 when x is a nonsquare.
    std::int64_t sqrt_index(std::uint32_t x) const { return sqrt_[x]; }
    bool in_prime_subfield(std::uint32_t x) const { return x < p_; }

    /// Multiplicative order of a nonzero element.
    std::uint64_t order(std::uint32_t x) const;

    /// Smallest-index element of order q-1.
    FieldElement primitive_element() const { return {this, primitive_}; }
    /// Smallest-index nonsquare in F_p when k is odd, outside F_p when k is even.
    FieldElement nonsquare_delta() const;
    /// primitive_element()^((q-1)/n); throws unless n divides q-1.
    FieldElement element_of_order(std::uint64_t n) const;

    std::string name() const;

    Field(const Field &) = delete;
    Field &operator=(const Field &) = delete;

  private:
    Field() = default;
    void build_tables();

    std::uint32_t p_ = 0, k_ = 0, q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> exp_; // length 2(q-1)
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint16_t> add_table_; // q*q entries when q is small
    std::vector<std::int32_t> sqrt_;
    std::uint32_t primitive_ = 1;
};

/// Convenience wrapper for Field::make.
FieldPtr make_field(std::uint32_t p, std::uint32_t k, std::uint32_t max_order = default_field_bound);

/// Zero counts as a square.
bool is_square(const FieldElement &x);
/// Root of smaller canonical index, or nullopt for a nonsquare.
std::optional<FieldElement> sqrt(const FieldElement &x);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
/// Decomposes q = p^k with p prime; nullopt if q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

} // namespace psld

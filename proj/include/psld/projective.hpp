#pragma once

// PGL(2,q) elements as canonically scaled 2x2 matrices.

#include "psld/field.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace psld {

/// An unnormalized 2x2 matrix over GF(q).
struct Mat2 {
    FieldElement a, b, c, d;
};

/// A PGL(2,q) element. The stored representative has its first nonzero entry
/// (in the order a, b, c, d) equal to 1, so equality is entry-wise.
class ProjMatrix {
  public:
    ProjMatrix() = default;

    /// Scales by the inverse of the first nonzero entry. Throws FieldError if
    /// the determinant vanishes.
    static ProjMatrix normalize(const Mat2 &raw);
    static ProjMatrix normalize(const Field &f, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d);
    static ProjMatrix identity(const Field &f);

    const Field &field() const { return *field_; }
    const Field *field_ptr() const { return field_; }

    FieldElement a() const { return {field_, e_[0]}; }
    FieldElement b() const { return {field_, e_[1]}; }
    FieldElement c() const { return {field_, e_[2]}; }
    FieldElement d() const { return {field_, e_[3]}; }
    const std::array<std::uint32_t, 4> &entries() const { return e_; }
    Mat2 raw() const { return {a(), b(), c(), d()}; }

    FieldElement det() const;
    FieldElement trace() const;
    bool is_identity() const { return e_[0] == 1 && e_[1] == 0 && e_[2] == 0 && e_[3] == 1; }

    /// Lexicographic on entry indices; unique per element for q <= 2^16.
    std::uint64_t key() const;

    bool operator==(const ProjMatrix &o) const { return field_ == o.field_ && e_ == o.e_; }
    std::strong_ordering operator<=>(const ProjMatrix &o) const { return e_ <=> o.e_; }

  private:
    const Field *field_ = nullptr;
    std::array<std::uint32_t, 4> e_{};
};

struct ProjMatrixHash {
    std::size_t operator()(const ProjMatrix &m) const { return std::hash<std::uint64_t>{}(m.key()); }
};

/// The PSL trace up to sign, stored as the member of {t, -t} with the smaller
/// index.
struct TracePair {
    FieldElement t;
    bool operator==(const TracePair &o) const { return t == o.t; }
    static TracePair of(const FieldElement &t);
};

/// A determinant-one representative, defined up to sign, in raw indices.
struct SlMatrix {
    std::uint32_t a = 0, b = 0, c = 0, d = 0;
};

ProjMatrix multiply(const ProjMatrix &g, const ProjMatrix &h);
ProjMatrix inverse(const ProjMatrix &g);
/// g * m * g^-1
ProjMatrix conjugate(const ProjMatrix &g, const ProjMatrix &m);
ProjMatrix power(const ProjMatrix &g, std::int64_t n);

bool in_psl(const ProjMatrix &g);
/// Throws FieldError when g is not in PSL(2,q).
TracePair trace_pair(const ProjMatrix &g);
/// tr^2/det: a class function of PGL(2,q) that determines the trace pair on
/// PSL(2,q).
FieldElement trace_invariant(const ProjMatrix &g);
/// Least n >= 1 with g^n = 1, by iterated multiplication (capped at q+1).
std::uint64_t order(const ProjMatrix &g);
/// Nontrivial with trace pair {2,-2}. Throws FieldError outside PSL(2,q).
bool has_order_p(const ProjMatrix &g);

/// For a nontrivial unipotent g: true iff g is PSL-conjugate to [[1,1],[0,1]]
/// (as opposed to [[1,D],[0,1]] with D a nonsquare).
bool unipotent_in_square_class(const ProjMatrix &g);

/// Throws FieldError outside PSL(2,q).
SlMatrix sl_representative(const ProjMatrix &g);
ProjMatrix from_sl(const Field &f, const SlMatrix &m);

/// [[1,1],[0,1]] and [[0,1],[-1,0]]; for k > 1 also diag(w, w^-1) with w
/// primitive, since the first two only generate PSL(2,p) then.
std::vector<ProjMatrix> standard_generators(const Field &f);

/// [[1,x],[0,1]]
ProjMatrix unipotent(const Field &f, const FieldElement &x);
ProjMatrix diagonal(const Field &f, const FieldElement &x, const FieldElement &y);

std::string to_string(const ProjMatrix &g);
std::ostream &operator<<(std::ostream &os, const ProjMatrix &g);

} // namespace psld

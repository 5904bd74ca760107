#include "psld/projective.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace psld {

ProjMatrix ProjMatrix::normalize(const Field &f, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
    if (f.sub(f.mul(a, d), f.mul(b, c)) == 0)
        throw FieldError("singular matrix");
    const std::uint32_t lead = a != 0 ? a : b;
    const std::uint32_t s = f.inv(lead);
    ProjMatrix m;
    m.field_ = &f;
    m.e_ = {f.mul(a, s), f.mul(b, s), f.mul(c, s), f.mul(d, s)};
    return m;
}

ProjMatrix ProjMatrix::normalize(const Mat2 &raw) {
    const Field *f = raw.a.field_ptr();
    if (f == nullptr || raw.b.field_ptr() != f || raw.c.field_ptr() != f || raw.d.field_ptr() != f)
        throw FieldError("matrix entries belong to different fields");
    return normalize(*f, raw.a.index(), raw.b.index(), raw.c.index(), raw.d.index());
}

ProjMatrix ProjMatrix::identity(const Field &f) { return normalize(f, 1, 0, 0, 1); }

FieldElement ProjMatrix::det() const { return a() * d() - b() * c(); }

FieldElement ProjMatrix::trace() const { return a() + d(); }

std::uint64_t ProjMatrix::key() const {
    return (static_cast<std::uint64_t>(e_[0]) << 48) | (static_cast<std::uint64_t>(e_[1]) << 32) |
           (static_cast<std::uint64_t>(e_[2]) << 16) | static_cast<std::uint64_t>(e_[3]);
}

TracePair TracePair::of(const FieldElement &t) {
    const FieldElement n = -t;
    return {n.index() < t.index() ? n : t};
}

namespace {

void check_same(const ProjMatrix &g, const ProjMatrix &h) {
    if (g.field_ptr() == nullptr || g.field_ptr() != h.field_ptr())
        throw FieldError("matrices belong to different fields");
}

} // namespace

ProjMatrix multiply(const ProjMatrix &g, const ProjMatrix &h) {
    check_same(g, h);
    const Field &f = g.field();
    const auto &x = g.entries();
    const auto &y = h.entries();
    return ProjMatrix::normalize(f, f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])), f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
                                 f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])), f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3])));
}

ProjMatrix inverse(const ProjMatrix &g) {
    const Field &f = g.field();
    const auto &x = g.entries();
    // The adjugate is a scalar multiple of the inverse.
    return ProjMatrix::normalize(f, x[3], f.neg(x[1]), f.neg(x[2]), x[0]);
}

ProjMatrix conjugate(const ProjMatrix &g, const ProjMatrix &m) { return multiply(multiply(g, m), inverse(g)); }

ProjMatrix power(const ProjMatrix &g, std::int64_t n) {
    ProjMatrix base = n < 0 ? inverse(g) : g;
    std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
    ProjMatrix acc = ProjMatrix::identity(g.field());
    while (e > 0) {
        if (e & 1u)
            acc = multiply(acc, base);
        base = multiply(base, base);
        e >>= 1;
    }
    return acc;
}

bool in_psl(const ProjMatrix &g) { return is_square(g.det()); }

FieldElement trace_invariant(const ProjMatrix &g) {
    const FieldElement t = g.trace();
    return t * t / g.det();
}

SlMatrix sl_representative(const ProjMatrix &g) {
    const Field &f = g.field();
    const auto s = sqrt(g.det().inv());
    if (!s)
        throw FieldError("element is not in PSL(2,q): " + to_string(g));
    const auto &e = g.entries();
    const std::uint32_t k = s->index();
    return {f.mul(e[0], k), f.mul(e[1], k), f.mul(e[2], k), f.mul(e[3], k)};
}

ProjMatrix from_sl(const Field &f, const SlMatrix &m) { return ProjMatrix::normalize(f, m.a, m.b, m.c, m.d); }

TracePair trace_pair(const ProjMatrix &g) {
    const SlMatrix m = sl_representative(g);
    const Field &f = g.field();
    return TracePair::of(FieldElement(&f, f.add(m.a, m.d)));
}

std::uint64_t order(const ProjMatrix &g) {
    const std::uint64_t cap = static_cast<std::uint64_t>(g.field().q()) + 1;
    ProjMatrix x = g;
    for (std::uint64_t n = 1; n <= cap; ++n) {
        if (x.is_identity())
            return n;
        x = multiply(x, g);
    }
    throw std::logic_error("element order exceeds q+1: " + to_string(g));
}

bool has_order_p(const ProjMatrix &g) {
    const Field &f = g.field();
    return !g.is_identity() && trace_pair(g) == TracePair::of(f.from_int(2));
}

bool unipotent_in_square_class(const ProjMatrix &g) {
    // With the sign fixed so that the trace is 2, g - 1 is lambda*[[-xz, x^2],
    // [-z^2, xz]]; the square class of lambda is read off b or -c.
    const Field &f = g.field();
    const FieldElement t = g.trace();
    if (t.is_zero())
        throw FieldError("not a unipotent element");
    const FieldElement scale = f.from_int(2) / t;
    const FieldElement probe = !g.b().is_zero() ? g.b() * scale : -(g.c() * scale);
    return is_square(probe);
}

std::vector<ProjMatrix> standard_generators(const Field &f) {
    std::vector<ProjMatrix> gens{ProjMatrix::normalize(f, 1, 1, 0, 1), ProjMatrix::normalize(f, 0, 1, f.neg(1), 0)};
    if (f.k() > 1) {
        const FieldElement w = f.primitive_element();
        gens.push_back(diagonal(f, w, w.inv()));
    }
    return gens;
}

ProjMatrix unipotent(const Field &f, const FieldElement &x) { return ProjMatrix::normalize(f, 1, x.index(), 0, 1); }

ProjMatrix diagonal(const Field &f, const FieldElement &x, const FieldElement &y) {
    return ProjMatrix::normalize(f, x.index(), 0, 0, y.index());
}

std::string to_string(const ProjMatrix &g) {
    std::ostringstream os;
    os << g;
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const ProjMatrix &g) {
    const auto &e = g.entries();
    return os << "[[" << e[0] << "," << e[1] << "],[" << e[2] << "," << e[3] << "]]";
}

} // namespace psld

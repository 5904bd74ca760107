#include "psld/classes.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <unordered_set>

namespace psld {

namespace {

std::uint64_t expected_class_size(const Field &f, const StabilizerSpec &stab) {
    const std::uint64_t q = f.q();
    if (stab.is_order_p())
        return (q * q - 1) / 2;
    return stab.eps == Epsilon::Minus ? q * (q + 1) : q * (q - 1);
}

} // namespace

StabilizerSpec StabilizerSpec::parse(const std::string &text) {
    if (text == "p")
        return order_p_full();
    if (text == "p-plus")
        return order_p_plus();
    if (text == "p-minus")
        return order_p_minus();
    // r=<r>,eps=<+|->
    const auto comma = text.find(',');
    if (text.rfind("r=", 0) == 0 && comma != std::string::npos) {
        const std::string rs = text.substr(2, comma - 2);
        const std::string es = text.substr(comma + 1);
        if (!rs.empty() && std::all_of(rs.begin(), rs.end(), [](unsigned char c) { return std::isdigit(c); }) &&
            rs.size() < 9 && (es == "eps=+" || es == "eps=-")) {
            return order_r(static_cast<std::uint32_t>(std::stoul(rs)), es == "eps=+" ? Epsilon::Plus : Epsilon::Minus);
        }
    }
    throw InvalidStabilizer("cannot parse stabilizer '" + text + "'");
}

void StabilizerSpec::validate(const Field &f) const {
    const bool k_odd = f.k() % 2 == 1;
    switch (kind) {
    case StabilizerKind::OrderPFull:
        if (!k_odd)
            throw InvalidStabilizer("stabilizer 'p' needs odd k; use p-plus or p-minus for " + f.name());
        return;
    case StabilizerKind::OrderPPlus:
    case StabilizerKind::OrderPMinus:
        if (k_odd)
            throw InvalidStabilizer("stabilizers p-plus/p-minus need even k; use p for " + f.name());
        return;
    case StabilizerKind::OrderR: {
        if (r < 3 || !is_prime(r))
            throw InvalidStabilizer("r must be an odd prime");
        if (r == f.p())
            throw InvalidStabilizer("r equals the characteristic; use an order-p stabilizer");
        const std::uint64_t half = eps == Epsilon::Minus ? (f.q() - 1) / 2 : (f.q() + 1) / 2;
        if (half % r != 0)
            throw InvalidStabilizer(std::to_string(r) + " does not divide (q" + (eps == Epsilon::Minus ? "-" : "+") +
                                    "1)/2 for q = " + std::to_string(f.q()));
        return;
    }
    }
}

std::string StabilizerSpec::label() const {
    switch (kind) {
    case StabilizerKind::OrderPFull:
        return "p";
    case StabilizerKind::OrderPPlus:
        return "p-plus";
    case StabilizerKind::OrderPMinus:
        return "p-minus";
    case StabilizerKind::OrderR:
        break;
    }
    return "r=" + std::to_string(r) + ",eps=" + to_string(eps);
}

std::string to_string(Epsilon e) { return e == Epsilon::Plus ? "+" : "-"; }

FieldElement delta_zero(const Field &f) { return f.from_int(2); }

std::size_t ClassSet::class_size(std::uint32_t label) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

std::optional<std::size_t> ClassSet::index_of(const ProjMatrix &g) const {
    const auto it = std::lower_bound(elements.begin(), elements.end(), g);
    if (it == elements.end() || !(*it == g))
        return std::nullopt;
    return static_cast<std::size_t>(it - elements.begin());
}

FixMembership::FixMembership(const Field &f, const StabilizerSpec &stab, std::span<const ClassRepresentative> reps)
    : field_(&f), trace_ok_(f.q(), 0), two_(f.from_int(2).index()) {
    if (stab.is_order_p()) {
        trace_ok_[two_] = 1;
        trace_ok_[f.neg(two_)] = 1;
        if (stab.kind == StabilizerKind::OrderPPlus)
            split_ = 1;
        else if (stab.kind == StabilizerKind::OrderPMinus)
            split_ = -1;
        return;
    }
    for (const auto &rep : reps) {
        trace_ok_[rep.delta.index()] = 1;
        trace_ok_[f.neg(rep.delta.index())] = 1;
    }
}

bool FixMembership::contains(const ProjMatrix &g) const {
    if (g.is_identity() || !in_psl(g))
        return false;
    // g = g * 1^-1
    return ratio_in(sl_representative(g), SlMatrix{1, 0, 0, 1});
}

std::vector<ProjMatrix> conjugation_orbit(const ProjMatrix &seed, std::span<const ProjMatrix> gens) {
    std::vector<ProjMatrix> inv;
    inv.reserve(gens.size());
    for (const auto &s : gens)
        inv.push_back(inverse(s));
    std::unordered_set<ProjMatrix, ProjMatrixHash> seen{seed};
    std::deque<ProjMatrix> frontier{seed};
    std::vector<ProjMatrix> out{seed};
    while (!frontier.empty()) {
        const ProjMatrix x = frontier.front();
        frontier.pop_front();
        for (std::size_t i = 0; i < gens.size(); ++i) {
            ProjMatrix y = multiply(multiply(gens[i], x), inv[i]);
            if (seen.insert(y).second) {
                out.push_back(y);
                frontier.push_back(y);
            }
        }
    }
    return out;
}

ProjMatrix order_p_rep(const Field &f) { return ProjMatrix::normalize(f, 1, 1, 0, 1); }

ProjMatrix order_p_rep_delta(const Field &f) { return unipotent(f, f.nonsquare_delta()); }

namespace {

ClassSet assemble(const FieldPtr &f, const StabilizerSpec &stab, std::uint32_t element_order,
                  std::vector<ClassRepresentative> reps) {
    const auto gens = standard_generators(*f);
    const std::uint64_t expected = expected_class_size(*f, stab);
    std::vector<std::pair<ProjMatrix, std::uint32_t>> all;
    for (std::uint32_t label = 0; label < reps.size(); ++label) {
        const auto orbit = conjugation_orbit(reps[label].element, gens);
        if (orbit.size() != expected)
            throw std::logic_error("class of " + to_string(reps[label].element) + " has " + std::to_string(orbit.size()) +
                                   " elements, expected " + std::to_string(expected));
        for (const auto &g : orbit)
            all.emplace_back(g, label);
    }
    std::sort(all.begin(), all.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    ClassSet out;
    out.field = f;
    out.stab = stab;
    out.element_order = element_order;
    out.reps = std::move(reps);
    out.elements.reserve(all.size());
    out.labels.reserve(all.size());
    for (auto &[g, label] : all) {
        if (!out.elements.empty() && out.elements.back() == g)
            throw std::logic_error("conjugacy classes overlap at " + to_string(g));
        out.elements.push_back(g);
        out.labels.push_back(label);
    }
    return out;
}

std::vector<ClassRepresentative> order_p_reps(const Field &f) {
    const FieldElement two = delta_zero(f);
    return {{order_p_rep(f), TracePair::of(two), two, 1}, {order_p_rep_delta(f), TracePair::of(two), two, 1}};
}

} // namespace

ClassSet order_p_classes(const FieldPtr &f) { return assemble(f, StabilizerSpec::order_p_full(), f->p(), order_p_reps(*f)); }

QuadraticExtension::QuadraticExtension(const FieldPtr &base) : base_(base) {
    const Field &f = *base;
    const std::uint64_t big_order = static_cast<std::uint64_t>(f.q()) * f.q();
    big_ = make_field(f.p(), 2 * f.k(), static_cast<std::uint32_t>(std::max<std::uint64_t>(big_order, default_field_bound)));
    const Field &g = *big_;
    // A root of the base modulus in the big field fixes the embedding.
    const auto &mod = f.modulus();
    std::optional<std::uint32_t> beta;
    for (std::uint32_t y = 0; y < g.q() && !beta; ++y) {
        std::uint32_t acc = 0;
        for (std::size_t i = mod.size(); i-- > 0;)
            acc = g.add(g.mul(acc, y), g.from_int(mod[i]).index());
        if (acc == 0)
            beta = y;
    }
    if (!beta)
        throw std::logic_error("base modulus has no root in the quadratic extension");
    up_.resize(f.q());
    down_.assign(g.q(), -1);
    for (std::uint32_t x = 0; x < f.q(); ++x) {
        const auto c = f.coeffs_of(x);
        std::uint32_t acc = 0;
        for (std::size_t i = c.size(); i-- > 0;)
            acc = g.add(g.mul(acc, *beta), g.from_int(c[i]).index());
        up_[x] = acc;
        // Frobenius y -> y^q fixes exactly the subfield.
        if (g.pow(acc, f.q()) != acc || down_[acc] >= 0)
            throw std::logic_error("subfield embedding is not injective into the Frobenius-fixed set");
        down_[acc] = static_cast<std::int32_t>(x);
    }
}

FieldElement QuadraticExtension::embed(const FieldElement &x) const {
    if (x.field_ptr() != base_.get())
        throw FieldError("element is not in the base field");
    return {big_.get(), up_[x.index()]};
}

std::optional<FieldElement> QuadraticExtension::restrict(const FieldElement &y) const {
    if (y.field_ptr() != big_.get())
        throw FieldError("element is not in the extension field");
    const auto d = down_[y.index()];
    if (d < 0)
        return std::nullopt;
    return FieldElement(base_.get(), static_cast<std::uint32_t>(d));
}

std::vector<ClassRepresentative> order_r_representatives(const FieldPtr &fp, std::uint32_t r, Epsilon eps) {
    const Field &f = *fp;
    StabilizerSpec::order_r(r, eps).validate(f);
    std::vector<ClassRepresentative> reps;
    if (eps == Epsilon::Minus) {
        const FieldElement a = f.element_of_order(2 * static_cast<std::uint64_t>(r));
        for (std::uint32_t i = 1; i <= (r - 1) / 2; ++i) {
            const FieldElement ai = a.pow(i), ainv = a.pow(-static_cast<std::int64_t>(i));
            const FieldElement delta = ai + ainv;
            reps.push_back({diagonal(f, ai, ainv), TracePair::of(delta), delta, i});
        }
        return reps;
    }
    const QuadraticExtension ext(fp);
    const FieldElement b = ext.big().element_of_order(2 * static_cast<std::uint64_t>(r));
    for (std::uint32_t i = 1; i <= (r - 1) / 2; ++i) {
        const auto delta = ext.restrict(b.pow(i) + b.pow(-static_cast<std::int64_t>(i)));
        if (!delta)
            throw std::logic_error("b^i + b^-i is not in the base field");
        const ProjMatrix m = ProjMatrix::normalize(f, 0, f.neg(1), 1, delta->index());
        reps.push_back({m, TracePair::of(*delta), *delta, i});
    }
    return reps;
}

ClassSet fix_set(const FieldPtr &f, const StabilizerSpec &stab) {
    stab.validate(*f);
    switch (stab.kind) {
    case StabilizerKind::OrderPFull:
        return assemble(f, stab, f->p(), order_p_reps(*f));
    case StabilizerKind::OrderPPlus:
        return assemble(f, stab, f->p(), {order_p_reps(*f)[0]});
    case StabilizerKind::OrderPMinus:
        return assemble(f, stab, f->p(), {order_p_reps(*f)[1]});
    case StabilizerKind::OrderR:
        break;
    }
    return assemble(f, stab, stab.r, order_r_representatives(f, stab.r, stab.eps));
}

std::optional<std::size_t> class_id_by_trace(const ProjMatrix &g, std::span<const ClassRepresentative> reps) {
    if (g.is_identity() || !in_psl(g))
        return std::nullopt;
    const TracePair t = trace_pair(g);
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (reps[i].trace == t)
            return i;
    return std::nullopt;
}

std::vector<ProjMatrix> enumerate_psl(const Field &f) {
    const std::uint32_t q = f.q();
    std::unordered_set<ProjMatrix, ProjMatrixHash> seen;
    std::vector<ProjMatrix> out;
    out.reserve(static_cast<std::size_t>(q) * (static_cast<std::size_t>(q) * q - 1) / 2);
    auto push = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
        ProjMatrix m = ProjMatrix::normalize(f, a, b, c, d);
        if (seen.insert(m).second)
            out.push_back(m);
    };
    for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b)
            for (std::uint32_t c = 0; c < q; ++c) {
                const std::uint32_t bc1 = f.add(1, f.mul(b, c));
                if (a != 0) {
                    push(a, b, c, f.mul(bc1, f.inv(a)));
                } else if (bc1 == 0) {
                    for (std::uint32_t d = 0; d < q; ++d)
                        push(a, b, c, d);
                }
            }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<ProjMatrix> find_subgroup_conjugator(const Field &f) {
    const ProjMatrix R = order_p_rep(f);
    std::unordered_set<ProjMatrix, ProjMatrixHash> target;
    const ProjMatrix RD = order_p_rep_delta(f);
    for (std::uint32_t i = 1; i < f.p(); ++i)
        target.insert(power(RD, i));
    for (const auto &g : enumerate_psl(f))
        if (target.contains(conjugate(g, R)))
            return g;
    return std::nullopt;
}

} // namespace psld

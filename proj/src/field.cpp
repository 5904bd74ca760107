#include "psld/field.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace psld {

namespace {

using Poly = std::vector<std::uint32_t>; // constant term first

void trim(Poly &f) {
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

// Remainder of f modulo a monic g over Z_p.
Poly poly_rem(Poly f, const Poly &g, std::uint32_t p) {
    trim(f);
    const std::size_t dg = g.size() - 1;
    while (f.size() > dg) {
        const std::uint32_t lead = f.back();
        const std::size_t shift = f.size() - 1 - dg;
        for (std::size_t i = 0; i <= dg; ++i)
            f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + static_cast<std::uint64_t>(p - lead) * g[i]) % p);
        trim(f);
    }
    return f;
}

Poly digits(std::uint64_t value, std::uint32_t p, std::uint32_t len) {
    Poly out(len, 0);
    for (std::uint32_t i = 0; i < len; ++i) {
        out[i] = static_cast<std::uint32_t>(value % p);
        value /= p;
    }
    return out;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

// Irreducible iff no monic factor of degree 1..deg/2.
bool irreducible(const Poly &f, std::uint32_t p) {
    const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; d <= deg / 2; ++d) {
        const std::uint64_t count = ipow(p, d);
        for (std::uint64_t m = 0; m < count; ++m) {
            Poly g = digits(m, p, d);
            g.push_back(1);
            if (poly_rem(f, g, p).empty())
                return false;
        }
    }
    return true;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t k) {
    if (k == 1)
        return {0, 1};
    const std::uint64_t count = ipow(p, k);
    for (std::uint64_t m = 0; m < count; ++m) {
        Poly f = digits(m, p, k);
        f.push_back(1);
        if (irreducible(f, p))
            return f;
    }
    throw FieldError("no irreducible polynomial found");
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
    const auto f = prime_factors(q);
    if (f.size() != 1)
        return std::nullopt;
    std::uint32_t k = 0;
    while (q > 1) {
        q /= f[0];
        ++k;
    }
    return std::make_pair(static_cast<std::uint32_t>(f[0]), k);
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t k, std::uint32_t max_order) {
    if (!is_prime(p))
        throw FieldError("characteristic " + std::to_string(p) + " is not prime");
    if (p == 2)
        throw FieldError("characteristic 2 is not supported");
    if (k == 0)
        throw FieldError("extension degree must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > max_order)
            throw FieldError("field order " + std::to_string(p) + "^" + std::to_string(k) + " exceeds bound " +
                             std::to_string(max_order));
    }
    std::shared_ptr<Field> f(new Field());
    f->p_ = p;
    f->k_ = k;
    f->q_ = static_cast<std::uint32_t>(q);
    f->modulus_ = smallest_irreducible(p, k);
    f->build_tables();
    return f;
}

FieldPtr make_field(std::uint32_t p, std::uint32_t k, std::uint32_t max_order) { return Field::make(p, k, max_order); }

void Field::build_tables() {
    const std::uint32_t q = q_;

    neg_.resize(q);
    for (std::uint32_t x = 0; x < q; ++x) {
        Poly c = coeffs_of(x);
        for (auto &v : c)
            v = (p_ - v) % p_;
        neg_[x] = from_coeffs(c).index();
    }
    if (k_ > 1 && q <= 1024) {
        add_table_.resize(static_cast<std::size_t>(q) * q);
        for (std::uint32_t x = 0; x < q; ++x)
            for (std::uint32_t y = 0; y < q; ++y) {
                std::uint32_t r = 0, place = 1, a = x, b = y;
                for (std::uint32_t i = 0; i < k_; ++i) {
                    r += ((a % p_ + b % p_) % p_) * place;
                    a /= p_;
                    b /= p_;
                    place *= p_;
                }
                add_table_[static_cast<std::size_t>(x) * q + y] = static_cast<std::uint16_t>(r);
            }
    }

    // Schoolbook multiplication mod the modulus, used only to find a generator.
    auto slow_mul = [this](std::uint32_t x, std::uint32_t y) {
        const Poly a = coeffs_of(x), b = coeffs_of(y);
        Poly prod(2 * k_, 0);
        for (std::uint32_t i = 0; i < k_; ++i)
            for (std::uint32_t j = 0; j < k_; ++j)
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p_);
        Poly r = poly_rem(prod, modulus_, p_);
        r.resize(k_, 0);
        return from_coeffs(r).index();
    };

    exp_.assign(2 * static_cast<std::size_t>(q - 1), 0);
    log_.assign(q, 0);
    for (std::uint32_t g = 2; g < q; ++g) {
        std::uint32_t x = 1, n = 0;
        do {
            exp_[n++] = x;
            x = slow_mul(x, g);
        } while (x != 1 && n < q);
        if (n == q - 1) {
            primitive_ = g;
            break;
        }
    }
    for (std::uint32_t i = 0; i < q - 1; ++i) {
        exp_[i + q - 1] = exp_[i];
        log_[exp_[i]] = i;
    }

    sqrt_.assign(q, -1);
    for (std::uint32_t y = 0; y < q; ++y) {
        const std::uint32_t s = mul(y, y);
        if (sqrt_[s] < 0)
            sqrt_[s] = static_cast<std::int32_t>(y);
    }
}

FieldElement Field::element(std::uint32_t index) const {
    if (index >= q_)
        throw FieldError("element index out of range");
    return {this, index};
}

FieldElement Field::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0)
        r += p_;
    return {this, static_cast<std::uint32_t>(r)};
}

FieldElement Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() > k_)
        throw FieldError("too many coefficients");
    std::uint32_t idx = 0, place = 1;
    for (const auto c : coeffs) {
        if (c >= p_)
            throw FieldError("coefficient out of range");
        idx += c * place;
        place *= p_;
    }
    return {this, idx};
}

std::vector<std::uint32_t> Field::coeffs_of(std::uint32_t index) const { return digits(index, p_, k_); }

std::uint32_t Field::add(std::uint32_t x, std::uint32_t y) const {
    if (k_ == 1) {
        const std::uint32_t s = x + y;
        return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty())
        return add_table_[static_cast<std::size_t>(x) * q_ + y];
    std::uint32_t r = 0, place = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        std::uint32_t d = x % p_ + y % p_;
        if (d >= p_)
            d -= p_;
        r += d * place;
        x /= p_;
        y /= p_;
        place *= p_;
    }
    return r;
}

std::uint32_t Field::inv(std::uint32_t x) const {
    if (x == 0)
        throw FieldError("inverse of zero");
    const std::uint32_t l = log_[x];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

std::uint32_t Field::pow(std::uint32_t x, std::int64_t e) const {
    if (x == 0) {
        if (e < 0)
            throw FieldError("negative power of zero");
        return e == 0 ? 1 : 0;
    }
    const std::int64_t m = q_ - 1;
    std::int64_t r = (static_cast<std::int64_t>(log_[x]) * (e % m)) % m;
    if (r < 0)
        r += m;
    return exp_[static_cast<std::size_t>(r)];
}

std::uint64_t Field::order(std::uint32_t x) const {
    if (x == 0)
        throw FieldError("zero has no multiplicative order");
    std::uint64_t ord = q_ - 1;
    for (const auto l : prime_factors(q_ - 1))
        while (ord % l == 0 && pow(x, static_cast<std::int64_t>(ord / l)) == 1)
            ord /= l;
    return ord;
}

FieldElement Field::nonsquare_delta() const {
    const bool want_prime = (k_ % 2) == 1;
    for (std::uint32_t x = 1; x < q_; ++x)
        if (!square(x) && in_prime_subfield(x) == want_prime)
            return {this, x};
    throw FieldError("no admissible nonsquare");
}

FieldElement Field::element_of_order(std::uint64_t n) const {
    if (n == 0 || (q_ - 1) % n != 0)
        throw FieldError(std::to_string(n) + " does not divide q-1 = " + std::to_string(q_ - 1));
    return {this, pow(primitive_, static_cast<std::int64_t>((q_ - 1) / n))};
}

std::string Field::name() const {
    std::ostringstream os;
    os << "GF(" << q_ << ")";
    return os.str();
}

const Field &FieldElement::field() const {
    if (field_ == nullptr)
        throw FieldError("element has no field");
    return *field_;
}

std::vector<std::uint32_t> FieldElement::coeffs() const { return field().coeffs_of(index_); }

void FieldElement::same_field(const FieldElement &o) const {
    if (field_ != o.field_ || field_ == nullptr)
        throw FieldError("operands belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement &o) const {
    same_field(o);
    return {field_, field_->add(index_, o.index_)};
}
FieldElement FieldElement::operator-(const FieldElement &o) const {
    same_field(o);
    return {field_, field_->sub(index_, o.index_)};
}
FieldElement FieldElement::operator*(const FieldElement &o) const {
    same_field(o);
    return {field_, field_->mul(index_, o.index_)};
}
FieldElement FieldElement::operator/(const FieldElement &o) const {
    same_field(o);
    return {field_, field_->mul(index_, field_->inv(o.index_))};
}
FieldElement FieldElement::operator-() const { return {field_, field().neg(index_)}; }
FieldElement FieldElement::inv() const { return {field_, field().inv(index_)}; }
FieldElement FieldElement::pow(std::int64_t e) const { return {field_, field().pow(index_, e)}; }

bool is_square(const FieldElement &x) { return x.field().square(x.index()); }

std::optional<FieldElement> sqrt(const FieldElement &x) {
    const auto r = x.field().sqrt_index(x.index());
    if (r < 0)
        return std::nullopt;
    return FieldElement(x.field_ptr(), static_cast<std::uint32_t>(r));
}

} // namespace psld

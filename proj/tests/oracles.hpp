#pragma once

// Brute-force reference implementations used as test oracles. Nothing here
// touches the library's tables: fields are schoolbook polynomial arithmetic,
// cliques are subset enumeration.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Poly = std::vector<std::uint32_t>; // constant term first

inline std::uint32_t ipow(std::uint32_t b, std::uint32_t e) {
    std::uint32_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

inline Poly digits(std::uint32_t index, std::uint32_t p, std::uint32_t k) {
    Poly out(k);
    for (auto &d : out) {
        d = index % p;
        index /= p;
    }
    return out;
}

inline std::uint32_t undigits(const Poly &c, std::uint32_t p) {
    std::uint32_t v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        v = v * p + *it;
    return v;
}

// Remainder of a modulo the monic m, coefficients mod p.
inline Poly poly_mod(Poly a, const Poly &m, std::uint32_t p) {
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const std::uint32_t lead = a.back() % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = (a[shift + i] + (p - lead) * m[i]) % p;
        a.pop_back();
    }
    a.resize(dm, 0);
    return a;
}

// Monic irreducible of degree k: no monic factor of degree 1..k/2.
inline bool irreducible(const Poly &m, std::uint32_t p) {
    const std::uint32_t k = static_cast<std::uint32_t>(m.size() - 1);
    for (std::uint32_t d = 1; d <= k / 2; ++d) {
        for (std::uint32_t low = 0; low < ipow(p, d); ++low) {
            Poly f = digits(low, p, d);
            f.push_back(1);
            bool zero = true;
            for (auto c : poly_mod(m, f, p))
                zero = zero && c == 0;
            if (zero)
                return false;
        }
    }
    return true;
}

// Smallest monic irreducible of degree k, as a base-p integer of its low coefficients.
inline Poly smallest_irreducible(std::uint32_t p, std::uint32_t k) {
    for (std::uint32_t low = 0; low < ipow(p, k); ++low) {
        Poly m = digits(low, p, k);
        m.push_back(1);
        if (k == 1 || irreducible(m, p))
            return m;
    }
    return {};
}

class NaiveField {
  public:
    NaiveField(std::uint32_t p, std::uint32_t k) : p_(p), k_(k), q_(ipow(p, k)), m_(smallest_irreducible(p, k)) {}

    std::uint32_t q() const { return q_; }
    std::uint32_t p() const { return p_; }
    const Poly &modulus() const { return m_; }

    std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
        Poly a = digits(x, p_, k_), b = digits(y, p_, k_);
        for (std::uint32_t i = 0; i < k_; ++i)
            a[i] = (a[i] + b[i]) % p_;
        return undigits(a, p_);
    }
    std::uint32_t neg(std::uint32_t x) const {
        Poly a = digits(x, p_, k_);
        for (auto &c : a)
            c = (p_ - c) % p_;
        return undigits(a, p_);
    }
    std::uint32_t sub(std::uint32_t x, std::uint32_t y) const { return add(x, neg(y)); }
    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
        const Poly a = digits(x, p_, k_), b = digits(y, p_, k_);
        Poly c(2 * k_ - 1, 0);
        for (std::uint32_t i = 0; i < k_; ++i)
            for (std::uint32_t j = 0; j < k_; ++j)
                c[i + j] = (c[i + j] + a[i] * b[j]) % p_;
        if (k_ == 1)
            return c[0];
        return undigits(poly_mod(c, m_, p_), p_);
    }
    std::uint32_t pow(std::uint32_t x, std::uint64_t e) const {
        std::uint32_t r = 1;
        while (e-- > 0)
            r = mul(r, x);
        return r;
    }
    std::uint32_t inv(std::uint32_t x) const {
        for (std::uint32_t y = 1; y < q_; ++y)
            if (mul(x, y) == 1)
                return y;
        return 0;
    }
    std::uint64_t order(std::uint32_t x) const {
        std::uint64_t n = 1;
        for (std::uint32_t y = x; y != 1; y = mul(y, x))
            ++n;
        return n;
    }
    std::vector<bool> squares() const {
        std::vector<bool> sq(q_, false);
        for (std::uint32_t y = 0; y < q_; ++y)
            sq[mul(y, y)] = true;
        return sq;
    }

  private:
    std::uint32_t p_, k_, q_;
    Poly m_;
};

// A 2x2 matrix of raw indices over a NaiveField.
using Mat = std::array<std::uint32_t, 4>;

inline Mat mat_mul(const NaiveField &f, const Mat &x, const Mat &y) {
    return {f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])), f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
            f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])), f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3]))};
}

inline bool is_scalar(const Mat &m) { return m[1] == 0 && m[2] == 0 && m[0] == m[3]; }

// Projective order: least n with m^n scalar.
inline std::uint64_t projective_order(const NaiveField &f, const Mat &m) {
    Mat x = m;
    std::uint64_t n = 1;
    while (!is_scalar(x)) {
        x = mat_mul(f, x, m);
        ++n;
    }
    return n;
}

// Graph as adjacency bitmasks, n <= 32.
struct SmallGraph {
    std::size_t n = 0;
    std::vector<std::uint32_t> adj;
    bool edge(std::size_t u, std::size_t v) const { return (adj[u] >> v) & 1u; }
};

inline SmallGraph random_graph(std::mt19937_64 &rng, std::size_t n, double p) {
    SmallGraph g{n, std::vector<std::uint32_t>(n, 0)};
    std::bernoulli_distribution coin(p);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (coin(rng)) {
                g.adj[u] |= 1u << v;
                g.adj[v] |= 1u << u;
            }
    return g;
}

// Clique number by enumerating every vertex subset.
inline std::size_t clique_number(const SmallGraph &g) {
    std::size_t best = 0;
    for (std::uint32_t s = 0; s < (1u << g.n); ++s) {
        const auto size = static_cast<std::size_t>(__builtin_popcount(s));
        if (size <= best)
            continue;
        bool ok = true;
        for (std::size_t u = 0; u < g.n && ok; ++u)
            if ((s >> u) & 1u)
                ok = (g.adj[u] | (1u << u) | ~s) == ~0u;
        if (ok)
            best = size;
    }
    return best;
}

} // namespace oracle

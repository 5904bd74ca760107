#include "psld/bitgraph.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace psld {

BitGraph::BitGraph(std::size_t n, std::string name)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0), name_(std::move(name)) {}

void BitGraph::add_edge(std::size_t u, std::size_t v) {
    if (u >= n_ || v >= n_)
        throw std::out_of_range("vertex index out of range");
    if (u == v)
        return;
    bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
    bits_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
}

std::size_t BitGraph::degree(std::size_t u) const {
    std::size_t d = 0;
    for (const auto w : row(u))
        d += static_cast<std::size_t>(std::popcount(w));
    return d;
}

std::vector<std::size_t> BitGraph::neighbors(std::size_t u) const {
    std::vector<std::size_t> out;
    const auto r = row(u);
    for (std::size_t w = 0; w < words_; ++w)
        for (std::uint64_t x = r[w]; x != 0; x &= x - 1)
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
    return out;
}

std::size_t BitGraph::edge_count() const {
    std::size_t total = 0;
    for (std::size_t u = 0; u < n_; ++u)
        total += degree(u);
    return total / 2;
}

bool BitGraph::is_regular() const {
    if (n_ == 0)
        return true;
    const std::size_t d0 = degree(0);
    for (std::size_t u = 1; u < n_; ++u)
        if (degree(u) != d0)
            return false;
    return true;
}

std::size_t BitGraph::components(std::vector<std::size_t> *labels) const {
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp(n_, unset);
    std::size_t count = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n_; ++s) {
        if (comp[s] != unset)
            continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            const auto r = row(u);
            for (std::size_t w = 0; w < words_; ++w)
                for (std::uint64_t x = r[w]; x != 0; x &= x - 1) {
                    const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(x));
                    if (comp[v] == unset) {
                        comp[v] = count;
                        stack.push_back(v);
                    }
                }
        }
        ++count;
    }
    if (labels)
        *labels = std::move(comp);
    return count;
}

bool BitGraph::is_simple() const {
    for (std::size_t u = 0; u < n_; ++u) {
        if (adjacent(u, u))
            return false;
        for (const auto v : neighbors(u))
            if (!adjacent(v, u))
                return false;
    }
    return true;
}

BitGraph BitGraph::induced(std::span<const std::size_t> subset) const {
    for (const auto v : subset)
        if (v >= n_)
            throw std::out_of_range("induced: vertex index out of range");
    BitGraph g(subset.size(), name_);
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = i + 1; j < subset.size(); ++j)
            if (adjacent(subset[i], subset[j]))
                g.add_edge(i, j);
    if (!vertices_.empty()) {
        g.vertices_.reserve(subset.size());
        for (const auto v : subset)
            g.vertices_.push_back(vertices_[v]);
    }
    g.origin_.assign(subset.begin(), subset.end());
    return g;
}

BitGraph BitGraph::complement() const {
    BitGraph g(n_, name_.empty() ? std::string{} : name_ + "_complement");
    for (std::size_t u = 0; u < n_; ++u) {
        auto dst = g.row_mut(u);
        const auto src = row(u);
        for (std::size_t w = 0; w < words_; ++w)
            dst[w] = ~src[w];
        if (n_ % 64 != 0)
            dst[words_ - 1] &= (std::uint64_t{1} << (n_ % 64)) - 1;
        dst[u / 64] &= ~(std::uint64_t{1} << (u % 64));
    }
    g.vertices_ = vertices_;
    return g;
}

void BitGraph::write_edge_list(std::ostream &os) const {
    os << n_ << ' ' << edge_count() << '\n';
    for (std::size_t u = 0; u < n_; ++u)
        for (const auto v : neighbors(u))
            if (u < v)
                os << u << ' ' << v << '\n';
}

namespace {

std::vector<SlMatrix> sl_all(std::span<const ProjMatrix> elements) {
    std::vector<SlMatrix> out;
    out.reserve(elements.size());
    for (const auto &g : elements)
        out.push_back(sl_representative(g));
    return out;
}

} // namespace

BitGraph build_fix_graph(const ClassSet &D, const GraphBuildOptions &opts) {
    const std::size_t n = D.size();
    BitGraph g(n, "fix_graph");
    const FixMembership member(D);
    const auto sl = sl_all(D.elements);

    // Upper triangle by row blocks, mirrored afterwards.
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto r = g.row_mut(i);
            for (std::size_t j = i + 1; j < n; ++j)
                if (member.ratio_in(sl[i], sl[j]))
                    r[j / 64] |= std::uint64_t{1} << (j % 64);
        }
    };
    const unsigned threads = std::max(1u, opts.threads);
    if (threads == 1 || n < 256) {
        work(0, n);
    } else {
        // Rows shrink with i; interleave small blocks across workers.
        constexpr std::size_t block = 64;
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t b = t * block; b < n; b += threads * block)
                    work(b, std::min(n, b + block));
            });
        for (auto &th : pool)
            th.join();
    }
    for (std::size_t i = 0; i < n; ++i)
        for (const auto j : g.neighbors(i))
            if (j > i)
                g.row_mut(j)[i / 64] |= std::uint64_t{1} << (i % 64);

    if (opts.cross_check) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j)
                    continue;
                const bool by_lookup = D.index_of(multiply(D.elements[i], inverse(D.elements[j]))).has_value();
                if (by_lookup != g.adjacent(i, j))
                    throw std::logic_error("trace membership disagrees with lookup for " + to_string(D.elements[i]) +
                                           " and " + to_string(D.elements[j]));
            }
    }
    g.set_vertices(D.elements);
    return g;
}

std::vector<std::size_t> fix_neighbors(const ClassSet &D, const ProjMatrix &g) {
    const FixMembership member(D);
    const SlMatrix s = sl_representative(g);
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < D.size(); ++j)
        if (!(D.elements[j] == g) && member.ratio_in(s, sl_representative(D.elements[j])))
            out.push_back(j);
    return out;
}

BitGraph build_element_graph(const ClassSet &D, std::span<const ProjMatrix> elements, std::string name) {
    const FixMembership member(D);
    const auto sl = sl_all(elements);
    BitGraph g(elements.size(), std::move(name));
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = i + 1; j < elements.size(); ++j)
            if (!(elements[i] == elements[j]) && member.ratio_in(sl[i], sl[j]))
                g.add_edge(i, j);
    g.set_vertices({elements.begin(), elements.end()});
    return g;
}

BitGraph build_induced_fix_graph(const ClassSet &D, std::span<const std::size_t> subset, std::string name) {
    std::vector<ProjMatrix> elements;
    elements.reserve(subset.size());
    for (const auto i : subset) {
        if (i >= D.size())
            throw std::out_of_range("vertex index out of range");
        elements.push_back(D.elements[i]);
    }
    BitGraph g = build_element_graph(D, elements, std::move(name));
    g.set_origin({subset.begin(), subset.end()});
    return g;
}

TildeDecomposition structure_decompose_tilde(const BitGraph &tilde, const Field &f, bool full) {
    TildeDecomposition rep;
    const auto &verts = tilde.vertices();
    if (verts.size() != tilde.size())
        throw std::invalid_argument("structure_decompose_tilde needs a vertex-labelled graph");
    std::vector<std::size_t> upper, lower;
    for (std::size_t i = 0; i < verts.size(); ++i)
        (verts[i].c().is_zero() ? upper : lower).push_back(i);
    rep.upper_size = upper.size();
    rep.lower_size = lower.size();
    for (const auto u : upper)
        for (const auto v : lower)
            rep.cross_edges += tilde.adjacent(u, v) ? 1 : 0;

    const BitGraph up = tilde.induced(upper);
    rep.upper_is_clique = up.edge_count() * 2 == up.size() * (up.size() > 0 ? up.size() - 1 : 0);
    const BitGraph low = tilde.induced(lower);
    rep.lower_edges = low.edge_count();
    std::vector<std::size_t> labels;
    rep.lower_components = low.components(&labels);

    const std::uint64_t q = f.q(), p = f.p();
    if (q % 4 == 1) {
        std::vector<std::size_t> comp_size(rep.lower_components, 0);
        for (const auto l : labels)
            ++comp_size[l];
        bool ok = rep.lower_components == q / p;
        for (std::size_t v = 0; v < low.size() && ok; ++v)
            ok = low.degree(v) == 2 && comp_size[labels[v]] == p;
        rep.lower_is_cycle_union = ok;
    }

    const std::size_t want_upper = full ? q - 2 : (q - 5) / 4;
    const bool lower_ok = q % 4 == 1 ? rep.lower_is_cycle_union : rep.lower_edges == 0;
    rep.matches = rep.cross_edges == 0 && rep.upper_size == want_upper && rep.lower_size == q && lower_ok &&
                  (!full || rep.upper_is_clique);
    std::ostringstream os;
    os << "upper=" << rep.upper_size << (rep.upper_is_clique ? " (clique)" : "") << " lower=" << rep.lower_size
       << " cross_edges=" << rep.cross_edges << " lower_edges=" << rep.lower_edges
       << " lower_components=" << rep.lower_components;
    rep.detail = os.str();
    return rep;
}

} // namespace psld

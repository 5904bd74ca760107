#include "psld/clique.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <deque>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace psld {

namespace {

struct SharedState {
    std::atomic<std::size_t> best{0};
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> aborted{false};
    std::uint64_t budget = 0;
    std::mutex mutex;
    std::vector<std::size_t> witness;

    void offer(const std::vector<std::size_t> &clique) {
        std::lock_guard lock(mutex);
        if (clique.size() > best.load()) {
            witness = clique;
            best.store(clique.size());
        }
    }
};

// Search restricted to one vertex and its later neighbours.
class LocalSearch {
  public:
    LocalSearch(SharedState &st) : st_(st) {}

    void run(const BitGraph &g, std::size_t root, std::span<const std::size_t> cand) {
        m_ = cand.size();
        w_ = (m_ + 63) / 64;
        // Local order: degree within the candidate set, descending.
        std::vector<std::size_t> deg(m_, 0);
        for (std::size_t a = 0; a < m_; ++a) {
            const auto row = g.row(cand[a]);
            for (std::size_t b = a + 1; b < m_; ++b)
                if ((row[cand[b] / 64] >> (cand[b] % 64)) & 1u) {
                    ++deg[a];
                    ++deg[b];
                }
        }
        std::vector<std::size_t> perm(m_);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return deg[x] > deg[y]; });
        global_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i)
            global_[i] = cand[perm[i]];
        adj_.assign(m_ * w_, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            const auto row = g.row(global_[i]);
            for (std::size_t j = i + 1; j < m_; ++j)
                if ((row[global_[j] / 64] >> (global_[j] % 64)) & 1u) {
                    adj_[i * w_ + j / 64] |= std::uint64_t{1} << (j % 64);
                    adj_[j * w_ + i / 64] |= std::uint64_t{1} << (i % 64);
                }
        }
        current_.assign(1, root);
        if (m_ == 0) {
            if (1 > st_.best.load())
                st_.offer(current_);
            return;
        }
        levels_.clear();
        auto &P = level(0).P;
        std::fill(P.begin(), P.end(), 0);
        for (std::size_t i = 0; i < m_; ++i)
            P[i / 64] |= std::uint64_t{1} << (i % 64);
        expand(0);
        flush();
    }

    void flush() {
        st_.nodes.fetch_add(pending_);
        pending_ = 0;
    }

  private:
    bool count_node() {
        if (++pending_ >= 1024) {
            const auto total = st_.nodes.fetch_add(pending_) + pending_;
            pending_ = 0;
            if (total > st_.budget)
                st_.aborted.store(true);
        }
        return !st_.aborted.load(std::memory_order_relaxed);
    }

    struct Level {
        std::vector<std::uint64_t> P, U, Q;
        std::vector<std::size_t> verts, colours;
    };

    Level &level(std::size_t depth) {
        while (levels_.size() <= depth) {
            levels_.emplace_back();
            auto &l = levels_.back();
            l.P.resize(w_);
            l.U.resize(w_);
            l.Q.resize(w_);
        }
        return levels_[depth];
    }

    // Greedy sequential colouring; keeps vertices whose colour is at least kmin.
    void colour(Level &l, std::size_t kmin) {
        auto &U = l.U, &Q = l.Q;
        std::copy(l.P.begin(), l.P.end(), U.begin());
        l.verts.clear();
        l.colours.clear();
        std::size_t k = 0, remaining = 0;
        for (const auto x : U)
            remaining += static_cast<std::size_t>(std::popcount(x));
        while (remaining > 0) {
            ++k;
            std::copy(U.begin(), U.end(), Q.begin());
            for (std::size_t wi = 0; wi < w_; ++wi) {
                while (Q[wi] != 0) {
                    const std::size_t v = wi * 64 + static_cast<std::size_t>(std::countr_zero(Q[wi]));
                    const std::uint64_t bit = std::uint64_t{1} << (v % 64);
                    U[wi] &= ~bit;
                    Q[wi] &= ~bit;
                    --remaining;
                    const std::uint64_t *row = adj_.data() + v * w_;
                    for (std::size_t x = wi; x < w_; ++x)
                        Q[x] &= ~row[x];
                    if (k >= kmin) {
                        l.verts.push_back(v);
                        l.colours.push_back(k);
                    }
                }
            }
        }
    }

    // Expands the candidate set stored in level(depth).P.
    void expand(std::size_t depth) {
        if (!count_node())
            return;
        const std::size_t best = st_.best.load(std::memory_order_relaxed);
        const std::size_t kmin = best >= current_.size() ? best - current_.size() + 1 : 1;
        colour(level(depth), kmin);
        level(depth + 1);
        Level &l = levels_[depth];
        Level &next = levels_[depth + 1];
        for (std::size_t idx = l.verts.size(); idx-- > 0;) {
            if (current_.size() + l.colours[idx] <= st_.best.load(std::memory_order_relaxed))
                return;
            if (st_.aborted.load(std::memory_order_relaxed))
                return;
            const std::size_t v = l.verts[idx];
            const std::uint64_t *row = adj_.data() + v * w_;
            bool any = false;
            for (std::size_t x = 0; x < w_; ++x) {
                next.P[x] = l.P[x] & row[x];
                any = any || next.P[x] != 0;
            }
            current_.push_back(global_[v]);
            if (!any) {
                if (current_.size() > st_.best.load())
                    st_.offer(current_);
            } else {
                expand(depth + 1);
            }
            current_.pop_back();
            l.P[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        }
    }

    SharedState &st_;
    std::size_t m_ = 0, w_ = 0;
    std::vector<std::size_t> global_;
    std::vector<std::uint64_t> adj_;
    std::vector<std::size_t> current_;
    std::deque<Level> levels_; // stable references while recursing
    std::uint64_t pending_ = 0;
};

CliqueResult search(const BitGraph &g, const CliqueOptions &opts, std::size_t threshold) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = g.size();
    CliqueResult res;

    SharedState st;
    st.budget = opts.node_budget;
    st.witness = opts.seed;
    st.best.store(std::max(threshold, opts.seed.size()));

    std::vector<std::size_t> degree(n), order(n), rank(n);
    for (std::size_t v = 0; v < n; ++v)
        degree[v] = g.degree(v);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return degree[x] > degree[y]; });
    for (std::size_t i = 0; i < n; ++i)
        rank[order[i]] = i;

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        LocalSearch local(st);
        std::vector<std::size_t> cand;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || st.aborted.load())
                break;
            const std::size_t v = order[i];
            if (degree[v] + 1 <= st.best.load())
                continue;
            cand.clear();
            for (const auto u : g.neighbors(v))
                if (rank[u] > i)
                    cand.push_back(u);
            if (cand.size() + 1 <= st.best.load())
                continue;
            std::sort(cand.begin(), cand.end(), [&](std::size_t x, std::size_t y) { return rank[x] < rank[y]; });
            local.run(g, v, cand);
        }
        local.flush();
    };
    const unsigned threads = std::max(1u, opts.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }

    res.witness = st.witness;
    std::sort(res.witness.begin(), res.witness.end());
    res.size = res.witness.size();
    res.nodes_explored = st.nodes.load();
    res.status = st.aborted.load() ? SearchStatus::Inconclusive : SearchStatus::Exact;
    res.elapsed = std::chrono::steady_clock::now() - start;
    return res;
}

} // namespace

bool is_clique(const BitGraph &g, std::span<const std::size_t> vertices) {
    for (const auto v : vertices)
        if (v >= g.size())
            throw std::out_of_range("is_clique: vertex index out of range");
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (!g.adjacent(vertices[i], vertices[j]))
                return false;
    return true;
}

CliqueResult max_clique(const BitGraph &g, const CliqueOptions &opts) {
    if (!is_clique(g, opts.seed))
        throw std::invalid_argument("seed is not a clique");
    const std::size_t threshold = opts.lower_bound > 0 ? opts.lower_bound - 1 : 0;
    CliqueResult res = search(g, opts, threshold);
    if (res.exact() && res.size < opts.lower_bound) {
        // Nothing reached the requested bound; the bound was too optimistic.
        const std::uint64_t used = res.nodes_explored;
        const auto elapsed = res.elapsed;
        CliqueOptions again = opts;
        again.node_budget = opts.node_budget > used ? opts.node_budget - used : 0;
        res = search(g, again, 0);
        res.nodes_explored += used;
        res.elapsed += elapsed;
    }
    return res;
}

CliqueResult max_coclique(const BitGraph &g, const CliqueOptions &opts, std::size_t max_vertices) {
    if (g.size() > max_vertices)
        throw std::length_error("graph too large to complement");
    return max_clique(g.complement(), opts);
}

} // namespace psld

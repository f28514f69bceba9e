#include "fep/lattice.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace fep {

const char* to_string(ClassLabel c)
{
    switch (c) {
    case ClassLabel::Ergodic: return "ergodic";
    case ClassLabel::TransientGood: return "transient-good";
    case ClassLabel::TransientBad: return "transient-bad";
    case ClassLabel::Blocked: return "blocked";
    }
    return "?";
}

ExclusionConfig::ExclusionConfig(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64, 0)
{
    if (n < 1)
        throw std::invalid_argument("torus size must be positive");
}

ExclusionConfig::ExclusionConfig(const LocalConfig& bits) : ExclusionConfig(static_cast<int>(bits.size()))
{
    for (int x = 0; x < n_; ++x) {
        if (bits[x] > 1)
            throw std::invalid_argument("occupation must be 0 or 1");
        set(x, bits[x]);
    }
}

ExclusionConfig ExclusionConfig::from_string(std::string_view s)
{
    if (s.empty())
        throw std::invalid_argument("empty configuration string");
    ExclusionConfig c(static_cast<int>(s.size()));
    for (int x = 0; x < c.n_; ++x) {
        if (s[x] == '1')
            c.set(x, true);
        else if (s[x] != '0')
            throw std::invalid_argument("configuration string must contain only '0' and '1'");
    }
    return c;
}

std::string ExclusionConfig::to_string() const
{
    std::string s(n_, '0');
    for (int x = 0; x < n_; ++x)
        if ((*this)[x])
            s[x] = '1';
    return s;
}

void ExclusionConfig::set(int x, bool v)
{
    auto& w = words_[static_cast<std::size_t>(x) >> 6];
    std::uint64_t bit = std::uint64_t{1} << (x & 63);
    bool old = w & bit;
    if (old == v)
        return;
    w ^= bit;
    k_ += v ? 1 : -1;
}

void ExclusionConfig::swap_with_right(int x)
{
    int y = wrap(x + 1L);
    bool a = (*this)[x], b = (*this)[y];
    set(x, b);
    set(y, a);
}

namespace {

// Word-parallel count of x with eta(x)==v and eta(x+1)==v.
int count_equal_pairs(const std::vector<std::uint64_t>& words, int n, bool v)
{
    int total = 0;
    std::size_t nw = words.size();
    for (std::size_t i = 0; i < nw; ++i) {
        std::uint64_t w = v ? words[i] : ~words[i];
        int width = (i + 1 == nw) ? n - static_cast<int>(i) * 64 : 64;
        std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
        w &= mask;
        // neighbour to the right of every bit, wrapping at the torus end
        std::uint64_t next_word_first;
        if (i + 1 < nw)
            next_word_first = words[i + 1] & 1u;
        else
            next_word_first = words[0] & 1u;
        if (!v)
            next_word_first ^= 1u;
        std::uint64_t shifted = w >> 1;
        if (width == 64)
            shifted |= next_word_first << 63;
        else
            shifted |= next_word_first << (width - 1);
        total += std::popcount(w & shifted);
    }
    return total;
}

}  // namespace

int ExclusionConfig::adjacent_hole_pairs() const { return count_equal_pairs(words_, n_, false); }

int ExclusionConfig::adjacent_particle_pairs() const { return count_equal_pairs(words_, n_, true); }

LocalConfig ExclusionConfig::bits() const
{
    LocalConfig b(n_);
    for (int x = 0; x < n_; ++x)
        b[x] = (*this)[x];
    return b;
}

std::uint64_t ExclusionConfig::key() const
{
    if (n_ > 64)
        throw std::length_error("packed key needs N <= 64");
    return words_[0];
}

ClassLabel classify(const ExclusionConfig& eta)
{
    int n = eta.size(), k = eta.particles();
    if (k == 0)
        return ClassLabel::Blocked;
    if (k == n)
        return ClassLabel::Ergodic;
    if (2 * k > n)
        return eta.adjacent_hole_pairs() == 0 ? ClassLabel::Ergodic : ClassLabel::TransientGood;
    return eta.adjacent_particle_pairs() == 0 ? ClassLabel::Blocked : ClassLabel::TransientBad;
}

BigInt binomial(long n, long r)
{
    if (n < 0 || r < 0 || r > n)
        return 0;
    r = std::min(r, n - r);
    BigInt c = 1;
    for (long i = 1; i <= r; ++i) {
        c *= n - r + i;
        c /= i;
    }
    return c;
}

BigInt count_hole_isolated(int n, int k)
{
    if (n < 1 || k < 0 || k > n)
        throw std::invalid_argument("need 0 <= k <= N");
    int m = n - k;
    return binomial(k, m) + binomial(k - 1, m - 1);
}

BigInt count_with_window(int n, int k, const LocalConfig& sigma)
{
    int l = static_cast<int>(sigma.size());
    if (l < 1 || l > n)
        throw std::invalid_argument("window length must be in 1..N");
    if (k < 0 || k > n)
        throw std::invalid_argument("need 0 <= k <= N");
    int p = 0;
    for (int i = 0; i < l; ++i) {
        if (sigma[i] > 1)
            throw std::invalid_argument("occupation must be 0 or 1");
        p += sigma[i];
        if (i + 1 < l && sigma[i] == 0 && sigma[i + 1] == 0)
            throw std::invalid_argument("window has adjacent empty sites");
    }
    int z = l - p, m = n - k;
    if (p > k || z > m)
        return 0;
    return binomial(k - p + sigma.front() + sigma.back() - 1, m - z);
}

HoleIsolatedEnumerator::HoleIsolatedEnumerator(int n, int k, int cap) : n_(n), m_(n - k)
{
    if (n < 1 || k < 0 || k > n)
        throw std::invalid_argument("need 0 <= k <= N");
    if (n > cap)
        throw std::length_error("N exceeds enumeration cap");
}

bool HoleIsolatedEnumerator::valid() const
{
    for (int i = 0; i + 1 < m_; ++i)
        if (holes_[i + 1] == holes_[i] + 1)
            return false;
    if (m_ >= 1 && n_ > 1 && holes_.front() == 0 && holes_.back() == n_ - 1)
        return false;
    // a single hole on the 1-torus neighbours itself
    if (n_ == 1 && m_ == 1)
        return false;
    return true;
}

bool HoleIsolatedEnumerator::advance()
{
    // next m-combination of {0..n-1}, with holes kept two apart
    int i = m_ - 1;
    while (i >= 0 && holes_[i] >= n_ - 1 - 2 * (m_ - 1 - i))
        --i;
    if (i < 0)
        return false;
    ++holes_[i];
    for (int j = i + 1; j < m_; ++j)
        holes_[j] = holes_[j - 1] + 2;
    return true;
}

std::optional<ExclusionConfig> HoleIsolatedEnumerator::next()
{
    if (done_)
        return std::nullopt;
    if (!started_) {
        started_ = true;
        holes_.resize(m_);
        for (int i = 0; i < m_; ++i)
            holes_[i] = 2 * i;
        if (m_ > 0 && holes_.back() > n_ - 1) {
            done_ = true;
            return std::nullopt;
        }
    } else if (m_ == 0 || !advance()) {
        done_ = true;
        return std::nullopt;
    }
    while (!valid()) {
        if (!advance()) {
            done_ = true;
            return std::nullopt;
        }
    }
    ExclusionConfig c(n_);
    for (int x = 0; x < n_; ++x)
        c.set(x, true);
    for (int h : holes_)
        c.set(h, false);
    return c;
}

std::vector<ExclusionConfig> enumerate_ergodic(int n, int k, int cap)
{
    std::vector<ExclusionConfig> out;
    HoleIsolatedEnumerator e(n, k, cap);
    if (2 * k <= n)
        return out;
    while (auto c = e.next())
        out.push_back(std::move(*c));
    return out;
}

bool AdjacencyGraph::connected() const
{
    if (nodes.empty())
        return true;
    std::vector<std::vector<int>> adj(nodes.size());
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(nodes.size(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
    }
    return reached == nodes.size();
}

AdjacencyGraph adjacency_graph(int n, int k, int cap)
{
    AdjacencyGraph g;
    g.nodes = enumerate_ergodic(n, k, cap);
    std::unordered_map<std::uint64_t, int> index;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        index.emplace(g.nodes[i].key(), static_cast<int>(i));
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto& eta = g.nodes[i];
        for (int x = 0; x < n; ++x) {
            bool a = eta(x - 1L), b = eta(x), c = eta(x + 1L), d = eta(x + 2L);
            bool rate = (a && b && !c) || (d && c && !b);
            if (!rate)
                continue;
            ExclusionConfig next = eta;
            next.swap_with_right(x);
            auto it = index.find(next.key());
            if (it == index.end())
                throw std::logic_error("jump left the ergodic component");
            if (static_cast<int>(i) < it->second)
                g.edges.emplace_back(static_cast<int>(i), it->second);
        }
    }
    return g;
}

}  // namespace fep

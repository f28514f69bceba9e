#include "fep/zero_range.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fep {

long ZrConfig::particles() const { return std::accumulate(piles.begin(), piles.end(), 0L); }

long ZrConfig::interior_particles() const
{
    if (geometry == ZrGeometry::Torus)
        return particles();
    return std::accumulate(piles.begin() + 1, piles.end() - 1, 0L);
}

std::string ZrConfig::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < piles.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(piles[i]);
    }
    return s;
}

ZrConfig ZrConfig::from_string(std::string_view s, ZrGeometry g)
{
    ZrConfig c;
    c.geometry = g;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t end = s.find(',', pos);
        if (end == std::string_view::npos)
            end = s.size();
        auto tok = s.substr(pos, end - pos);
        int v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size() || v < 0)
            throw std::invalid_argument("bad pile height '" + std::string(tok) + "'");
        c.piles.push_back(v);
        pos = end + 1;
    }
    if (g == ZrGeometry::Segment && c.piles.size() < 3)
        throw std::invalid_argument("segment needs at least one interior cell");
    return c;
}

namespace {

int first_hole(const ExclusionConfig& eta)
{
    int n = eta.size();
    if (!eta[0])
        return 0;
    for (int x = n - 1; x > 0; --x)
        if (!eta[x])
            return x;
    throw std::invalid_argument("zero-range map needs at least one empty site");
}

}  // namespace

ZrConfig ex_to_zr(const ExclusionConfig& eta)
{
    int n = eta.size();
    int start = first_hole(eta);
    ZrConfig z;
    z.piles.reserve(n - eta.particles());
    int run = 0;
    for (int i = 1; i <= n; ++i) {
        int x = (start + i) % n;
        if (eta[x]) {
            ++run;
        } else {
            z.piles.push_back(run);
            run = 0;
        }
    }
    return z;
}

ClassLabel classify_zr(const ZrConfig& omega)
{
    if (omega.geometry != ZrGeometry::Torus)
        throw std::invalid_argument("classification is defined on the torus");
    long k = omega.particles();
    long sites = omega.sites();
    if (k > sites) {
        bool full = std::all_of(omega.piles.begin(), omega.piles.end(), [](int v) { return v >= 1; });
        return full ? ClassLabel::Ergodic : ClassLabel::TransientGood;
    }
    bool low = std::all_of(omega.piles.begin(), omega.piles.end(), [](int v) { return v <= 1; });
    return low ? ClassLabel::Blocked : ClassLabel::TransientBad;
}

std::optional<double> zr_step(ZrConfig& omega, Rng& rng)
{
    if (omega.geometry != ZrGeometry::Torus)
        throw std::invalid_argument("zr_step acts on the torus");
    std::vector<int> active;
    for (int x = 0; x < omega.sites(); ++x)
        if (omega.piles[x] >= 2)
            active.push_back(x);
    if (active.empty())
        return std::nullopt;
    double dt = rng.exponential(2.0 * static_cast<double>(active.size()));
    int x = active[rng.index(active.size())];
    int k = omega.sites();
    int y = ((x + rng.sign()) % k + k) % k;
    --omega.piles[x];
    ++omega.piles[y];
    return dt;
}

ExZrTracker::ExZrTracker(const ExclusionConfig& eta) : n_(eta.size()), occ_(eta.bits()), hole_label_(eta.size(), -1)
{
    zr_ = ex_to_zr(eta);
    int start = first_hole(eta);
    for (int i = 0; i < n_; ++i) {
        int x = (start + i) % n_;
        if (!occ_[x]) {
            hole_label_[x] = static_cast<int>(hole_pos_.size());
            hole_pos_.push_back(x);
        }
    }
}

bool ExZrTracker::apply(const Event& e)
{
    int a = e.site;
    int b = ((a + e.dir) % n_ + n_) % n_;
    if (!occ_[a] || occ_[b])
        return false;
    int label = hole_label_[b];
    int holes = static_cast<int>(hole_pos_.size());
    // right jump: pile label-1 -> label; left jump: pile label -> label-1
    int from = e.dir == 1 ? (label - 1 + holes) % holes : label;
    int to = e.dir == 1 ? label : (label - 1 + holes) % holes;
    bool ok = zr_.piles[from] >= 2;
    --zr_.piles[from];
    ++zr_.piles[to];
    std::swap(occ_[a], occ_[b]);
    hole_label_[a] = label;
    hole_label_[b] = -1;
    hole_pos_[label] = a;
    return ok;
}

ZrConfig ExZrTracker::mapped() const
{
    int holes = static_cast<int>(hole_pos_.size());
    ZrConfig z;
    z.piles.resize(holes);
    for (int i = 0; i < holes; ++i) {
        int x = hole_pos_[i];
        int count = 0;
        for (int y = (x + 1) % n_; occ_[y]; y = (y + 1) % n_)
            ++count;
        z.piles[i] = count;
    }
    return z;
}

int window_cap(int ell, double delta) { return static_cast<int>(std::floor((1.0 + delta) * ell)); }

double window_z_bound(int ell, double delta)
{
    return (1.0 + delta / 2.0) * (1.0 + delta) * ell * (ell + 1.0) / 2.0;
}

ZrConfig right_window(const ZrConfig& omega, int x, int ell)
{
    int k = omega.sites();
    if (ell < 1 || ell >= k)
        throw std::invalid_argument("window length must satisfy 1 <= l < number of sites");
    ZrConfig w;
    w.geometry = ZrGeometry::Segment;
    w.piles.assign(ell + 2, 0);
    for (int y = 1; y <= ell; ++y)
        w.piles[y] = omega.piles[((x + y) % k + k) % k];
    return w;
}

ZrConfig truncate_window(const ZrConfig& window, int cap)
{
    ZrConfig w = window;
    int left = cap;
    for (int y = 1; y <= w.ell(); ++y) {
        int keep = std::min(w.piles[y], left);
        w.piles[y] = keep;
        left -= keep;
    }
    return w;
}

long window_z(const ZrConfig& window)
{
    long z = 0;
    for (int y = 1; y <= window.ell(); ++y)
        z += static_cast<long>(y) * window.piles[y];
    return z;
}

bool in_A(const ZrConfig& window, double delta)
{
    if (window.geometry != ZrGeometry::Segment)
        throw std::invalid_argument("A_l membership is defined for segments");
    int ell = window.ell();
    if (window.piles.front() != 0 || window.piles.back() != 0)
        return false;
    return window.interior_particles() == window_cap(ell, delta) &&
           static_cast<double>(window_z(window)) <= window_z_bound(ell, delta);
}

bool is_regular(const ZrConfig& omega, int ell, double delta)
{
    int k = omega.sites();
    if (ell < 1 || ell >= k)
        throw std::invalid_argument("regularity needs 1 <= l < number of sites");
    long cap = window_cap(ell, delta);
    double bound = window_z_bound(ell, delta);
    // prefix sums over the doubled array: s = sum omega, w = sum i*omega
    std::vector<long> s(2 * k + 1, 0), w(2 * k + 1, 0);
    for (int i = 0; i < 2 * k; ++i) {
        long v = omega.piles[i % k];
        s[i + 1] = s[i] + v;
        w[i + 1] = w[i] + v * i;
    }
    for (int x = 0; x < k; ++x) {
        // window cells x+1..x+ell, cell y sits at array index x+y
        long base = s[x + 1];
        if (s[x + ell + 1] - base < cap)
            return false;
        // smallest j with s[x+j+1]-base >= cap
        auto it = std::lower_bound(s.begin() + x + 2, s.begin() + x + ell + 2, base + cap);
        int j = static_cast<int>(it - s.begin()) - x - 1;
        long full = s[x + j] - base;  // particles in cells 1..j-1
        long z = (w[x + j] - w[x + 1]) - static_cast<long>(x) * full + static_cast<long>(j) * (cap - full);
        if (static_cast<double>(z) > bound)
            return false;
    }
    return true;
}

}  // namespace fep

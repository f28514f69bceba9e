#include "fep/couplings.hpp"

#include "fep/indexed_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace fep {

namespace {

void require_segment(const ZrConfig& c)
{
    if (c.geometry != ZrGeometry::Segment || c.sites() < 3)
        throw std::invalid_argument("auxiliary processes live on a segment with l >= 1");
}

AuxResult run_threshold(const ZrConfig& initial, Rng& rng, int threshold)
{
    AuxResult r;
    r.final_state = initial;
    auto& w = r.final_state.piles;
    int ell = initial.ell();
    IndexedSet active(ell + 2);
    for (int y = 1; y <= ell; ++y)
        active.assign(y, w[y] >= threshold);
    double t = 0.0;
    while (!active.empty()) {
        t += rng.exponential(2.0 * static_cast<double>(active.size()));
        int y = active[rng.index(active.size())];
        int z = y + rng.sign();
        --w[y];
        ++w[z];
        ++r.jumps;
        active.assign(y, w[y] >= threshold);
        if (z >= 1 && z <= ell)
            active.assign(z, w[z] >= threshold);
    }
    r.hitting_time = t;
    return r;
}

AuxResult run_irw(const ZrConfig& initial, Rng& rng, double delta)
{
    int ell = initial.ell();
    int cap = window_cap(ell, delta);
    if (cap < 1)
        throw std::invalid_argument("random-walk rate needs floor((1+delta) l) >= 1");
    AuxResult r;
    r.final_state = initial;
    auto& w = r.final_state.piles;
    long n = initial.interior_particles();
    double t = 0.0;
    while (n > 0) {
        t += rng.exponential(2.0 * static_cast<double>(n) / cap);
        long pick = static_cast<long>(rng.index(static_cast<std::uint64_t>(n)));
        int y = 1;
        while (pick >= w[y]) {
            pick -= w[y];
            ++y;
        }
        int z = y + rng.sign();
        --w[y];
        ++w[z];
        ++r.jumps;
        if (z == 0 || z == ell + 1)
            --n;
    }
    r.hitting_time = t;
    return r;
}

}  // namespace

AuxResult simulate_aux(AuxKind kind, const ZrConfig& initial, Rng& rng, double delta)
{
    require_segment(initial);
    for (int v : initial.piles)
        if (v < 0)
            throw std::invalid_argument("negative pile");
    switch (kind) {
    case AuxKind::SZR: return run_threshold(initial, rng, 2);
    case AuxKind::FZR: return run_threshold(initial, rng, 1);
    case AuxKind::IRW: return run_irw(initial, rng, delta);
    }
    throw std::invalid_argument("unknown auxiliary process");
}

SzrFzrCoupling couple_szr_fzr(const ZrConfig& initial, Rng& rng, bool keep_log)
{
    require_segment(initial);
    int ell = initial.ell();
    std::vector<int> chi = initial.piles;
    // zeta interior split into blue (mirrors chi excess) and red particles
    std::vector<int> blue(ell + 2, 0), red(ell + 2, 0);
    IndexedSet occupied(ell + 2);
    long excess = 0, blues = 0;
    for (int y = 1; y <= ell; ++y) {
        red[y] = std::min(chi[y], 1);
        blue[y] = chi[y] - red[y];
        excess += std::max(chi[y] - 1, 0);
        blues += blue[y];
        occupied.assign(y, chi[y] > 0);
    }

    SzrFzrCoupling out;
    double t = 0.0;
    bool chi_done = excess == 0;
    std::uint64_t index = 0;
    auto interior = [ell](int y) { return y >= 1 && y <= ell; };
    auto site_ok = [&](int y) { return !interior(y) || blue[y] == std::max(chi[y] - 1, 0); };

    while (!occupied.empty()) {
        t += rng.exponential(2.0 * static_cast<double>(occupied.size()));
        int y = occupied[rng.index(occupied.size())];
        int z = y + rng.sign();
        if (chi[y] >= 2) {
            bool target_was_empty = chi[z] == 0;
            --chi[y];
            ++chi[z];
            --excess;
            --blue[y];
            --blues;
            if (interior(z)) {
                if (target_was_empty) {
                    ++red[z];
                } else {
                    ++blue[z];
                    ++blues;
                    ++excess;
                }
            }
            ++out.jumps_chi;
        } else {
            if (blue[y] > 0 || red[y] == 0) {
                out.invariant_held = false;
                break;
            }
            --red[y];
            if (interior(z))
                ++red[z];
        }
        ++out.jumps_zeta;
        occupied.assign(y, blue[y] + red[y] > 0);
        if (interior(z))
            occupied.assign(z, blue[z] + red[z] > 0);

        bool ok = excess == blues && site_ok(y) && site_ok(z);
        out.invariant_held = out.invariant_held && ok;
        if (!chi_done && excess == 0) {
            chi_done = true;
            out.t_chi = t;
        }
        if (keep_log)
            out.log.push_back({index, t, t, ok});
        ++index;
    }
    out.t_zeta = t;
    if (!chi_done)
        out.t_chi = t;
    return out;
}

FzrIrwCoupling couple_fzr_irw(const ZrConfig& initial, double delta, Rng& rng, bool keep_log)
{
    require_segment(initial);
    if (!in_A(initial, delta))
        throw std::invalid_argument("initial segment is not in A_l(delta)");
    int ell = initial.ell();
    int cap = window_cap(ell, delta);

    std::vector<int> start;
    for (int y = 1; y <= ell; ++y)
        for (int i = 0; i < initial.piles[y]; ++i)
            start.push_back(y);
    int np = static_cast<int>(start.size());

    // per-particle +-1 sequences shared by both processes, drawn on demand
    Rng walk(rng.bits());
    std::vector<std::vector<signed char>> steps(np);
    auto step_of = [&](int p, std::size_t i) {
        while (steps[p].size() <= i)
            steps[p].push_back(static_cast<signed char>(walk.sign()));
        return static_cast<int>(steps[p][i]);
    };

    std::vector<int> pos_z = start, pos_u = start;
    std::vector<std::size_t> k_z(np, 0), k_u(np, 0);
    std::vector<std::vector<int>> at_site(ell + 2);
    std::vector<int> slot(np);
    IndexedSet occupied(ell + 2), alive(np);
    for (int p = 0; p < np; ++p) {
        slot[p] = static_cast<int>(at_site[start[p]].size());
        at_site[start[p]].push_back(p);
        occupied.insert(start[p]);
        alive.insert(p);
    }
    auto interior = [ell](int y) { return y >= 1 && y <= ell; };

    FzrIrwCoupling out;
    double tz = 0.0, tu = 0.0;
    while (!occupied.empty() && !alive.empty()) {
        double e = rng.exponential(1.0);
        tz += e / (2.0 * static_cast<double>(occupied.size()));
        tu += e / (2.0 * static_cast<double>(alive.size()) / cap);

        int y = occupied[rng.index(occupied.size())];
        auto& here = at_site[y];
        int p = here[rng.index(here.size())];
        int z = y + step_of(p, k_z[p]++);
        int last = here.back();
        here[slot[p]] = last;
        slot[last] = slot[p];
        here.pop_back();
        occupied.assign(y, !here.empty());
        pos_z[p] = z;
        if (interior(z)) {
            slot[p] = static_cast<int>(at_site[z].size());
            at_site[z].push_back(p);
            occupied.insert(z);
        }

        int q = alive[rng.index(alive.size())];
        pos_u[q] += step_of(q, k_u[q]++);
        if (!interior(pos_u[q]))
            alive.erase(q);

        bool ok = tz <= tu;
        out.ordered = out.ordered && ok;
        if (keep_log)
            out.log.push_back({out.steps, tz, tu, ok});
        ++out.steps;
    }
    if (!occupied.empty() || !alive.empty())
        throw std::logic_error("coupled processes used different numbers of steps");
    out.t_zeta = tz;
    out.t_upsilon = tu;
    return out;
}

}  // namespace fep

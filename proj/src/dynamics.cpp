#include "fep/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

namespace fep {

int jump_rate(const ExclusionConfig& eta, int x, int dir)
{
    if (dir == 1)
        return eta(x - 1L) && eta(x) && !eta(x + 1L);
    if (dir == -1)
        return eta(x + 1L) && eta(x) && !eta(x - 1L);
    throw std::invalid_argument("direction must be +1 or -1");
}

int swap_rate(const ExclusionConfig& eta, int x)
{
    return jump_rate(eta, x, 1) + jump_rate(eta, eta.wrap(x + 1L), -1);
}

std::vector<Move> active_moves(const ExclusionConfig& eta)
{
    std::vector<Move> out;
    for (int x = 0; x < eta.size(); ++x)
        for (int dir : {-1, 1})
            if (jump_rate(eta, x, dir))
                out.push_back({x, dir});
    std::sort(out.begin(), out.end());
    return out;
}

FepSimulator::FepSimulator(const ExclusionConfig& eta)
    : n_(eta.size()), k_(eta.particles()), occ_(eta.bits()), active_(2 * static_cast<std::size_t>(eta.size()))
{
    for (int x = 0; x < n_; ++x) {
        refresh(x);
        hole_pairs_ += !occ_[x] && !occ_[wrap(x + 1)];
    }
}

void FepSimulator::refresh(int y)
{
    bool l = occ_[wrap(y - 1)], c = occ_[y], r = occ_[wrap(y + 1)];
    active_.assign(2 * y, l && c && !r);
    active_.assign(2 * y + 1, r && c && !l);
}

void FepSimulator::apply(int id)
{
    int x = id >> 1;
    int dir = (id & 1) ? -1 : 1;
    // the swapped bond is (a, a+1)
    int a = dir == 1 ? x : wrap(x - 1);
    int b = wrap(a + 1);

    int pairs[3] = {wrap(a - 1), a, b};
    int npairs = n_ >= 3 ? 3 : n_;
    for (int i = 0; i < npairs; ++i) {
        int y = pairs[i];
        hole_pairs_ -= !occ_[y] && !occ_[wrap(y + 1)];
    }
    std::swap(occ_[a], occ_[b]);
    for (int i = 0; i < npairs; ++i) {
        int y = pairs[i];
        hole_pairs_ += !occ_[y] && !occ_[wrap(y + 1)];
    }
    refresh(wrap(a - 1));
    refresh(a);
    refresh(b);
    refresh(wrap(b + 1));
    ++events_;
}

ExclusionConfig FepSimulator::config() const { return ExclusionConfig(occ_); }

std::vector<Move> FepSimulator::active_moves() const
{
    std::vector<Move> out;
    for (int id : active_.items())
        out.push_back({id >> 1, (id & 1) ? -1 : 1});
    std::sort(out.begin(), out.end());
    return out;
}

Trajectory simulate(const ExclusionConfig& eta, double t_macro, Rng& rng, bool record_events)
{
    if (!(t_macro >= 0))
        throw std::invalid_argument("time horizon must be non-negative");
    Trajectory tr;
    tr.initial = eta;
    tr.seed = rng.seed();
    double n = eta.size();
    tr.time_scale = n * n;
    FepSimulator sim(eta);
    double horizon = t_macro * tr.time_scale;
    if (record_events)
        sim.run_until(horizon, rng, [&](const Event& e) { tr.events.push_back(e); });
    else
        sim.run_until(horizon, rng);
    tr.final_config = sim.config();
    tr.event_count = sim.events();
    tr.t_micro_end = sim.time();
    return tr;
}

int h_at(const ExclusionConfig& eta, int x)
{
    int a = eta(x - 1L), b = eta(x), c = eta(x + 1L);
    return a * b + b * c - a * b * c;
}

CurrentField current_field(const ExclusionConfig& eta)
{
    int n = eta.size();
    CurrentField f;
    f.j.resize(n);
    f.hval.resize(n);
    for (int x = 0; x < n; ++x) {
        f.j[x] = swap_rate(eta, x) * (static_cast<int>(eta(x)) - static_cast<int>(eta(x + 1L)));
        f.hval[x] = h_at(eta, x);
    }
    return f;
}

HittingResult hitting_time_ergodic(const ExclusionConfig& eta, Rng& rng, double t_max_micro)
{
    if (2 * eta.particles() <= eta.size())
        return {HittingStatus::NeverReachable, 0.0, 0};
    FepSimulator sim(eta);
    while (!sim.ergodic()) {
        auto e = sim.step(rng);
        if (!e)
            return {HittingStatus::NeverReachable, sim.time(), sim.events()};
        if (e->t_micro > t_max_micro)
            return {HittingStatus::NotReached, t_max_micro, sim.events()};
    }
    return {HittingStatus::Reached, sim.time(), sim.events()};
}

}  // namespace fep

#pragma once

#include "fep/indexed_set.hpp"
#include "fep/lattice.hpp"
#include "fep/rng.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fep {

/// A particle at `site` jumps to `site + dir`, dir = +1 or -1.
struct Move {
    int site;
    int dir;
    friend bool operator==(const Move&, const Move&) = default;
    friend auto operator<=>(const Move&, const Move&) = default;
};

struct Event {
    double t_micro;
    int site;
    int dir;
};

/// Rate (0 or 1) of the move (x, dir) in configuration eta.
int jump_rate(const ExclusionConfig& eta, int x, int dir);

/// All moves with positive rate, sorted.
std::vector<Move> active_moves(const ExclusionConfig& eta);

/// Exchange rate c_{x,x+1}.
int swap_rate(const ExclusionConfig& eta, int x);

/// Continuous-time facilitated exclusion on the torus, microscopic clock.
class FepSimulator {
public:
    explicit FepSimulator(const ExclusionConfig& eta);

    int size() const { return n_; }
    double time() const { return t_; }
    std::uint64_t events() const { return events_; }
    double total_rate() const { return static_cast<double>(active_.size()); }
    bool frozen() const { return active_.empty(); }
    /// O(1): no adjacent holes and k > N/2 (or k == N).
    bool ergodic() const { return 2 * k_ > n_ && hole_pairs_ == 0; }

    /// Performs one jump; nullopt if the configuration is frozen.
    std::optional<Event> step(Rng& rng)
    {
        if (active_.empty())
            return std::nullopt;
        t_ += rng.exponential(static_cast<double>(active_.size()));
        int id = active_[rng.index(active_.size())];
        apply(id);
        return Event{t_, id >> 1, (id & 1) ? -1 : 1};
    }

    /// Runs until the horizon; the event that would cross it is discarded.
    /// sink(const Event&) is called for every executed event.
    template <class Sink>
    void run_until(double horizon, Rng& rng, Sink&& sink)
    {
        while (!active_.empty()) {
            double dt = rng.exponential(static_cast<double>(active_.size()));
            if (t_ + dt > horizon)
                break;
            t_ += dt;
            int id = active_[rng.index(active_.size())];
            apply(id);
            sink(Event{t_, id >> 1, (id & 1) ? -1 : 1});
        }
        if (t_ < horizon)
            t_ = horizon;
    }
    void run_until(double horizon, Rng& rng)
    {
        run_until(horizon, rng, [](const Event&) {});
    }

    ExclusionConfig config() const;
    const std::vector<std::uint8_t>& occupancy() const { return occ_; }
    std::vector<Move> active_moves() const;

private:
    int wrap(int x) const { return x < 0 ? x + n_ : (x >= n_ ? x - n_ : x); }
    void refresh(int y);
    void apply(int id);

    int n_;
    int k_;
    int hole_pairs_ = 0;
    double t_ = 0.0;
    std::uint64_t events_ = 0;
    std::vector<std::uint8_t> occ_;
    IndexedSet active_;
};

struct Trajectory {
    ExclusionConfig initial;
    ExclusionConfig final_config;
    std::vector<Event> events;
    std::uint64_t event_count = 0;
    double t_micro_end = 0.0;
    /// Microscopic time per unit macroscopic time, N^2.
    double time_scale = 1.0;
    std::uint64_t seed = 0;
};

/// Runs up to macroscopic time t_macro (microscopic t_macro * N^2).
Trajectory simulate(const ExclusionConfig& eta, double t_macro, Rng& rng, bool record_events = false);

struct CurrentField {
    std::vector<int> j;     ///< j[x] = c_{x,x+1} (eta(x) - eta(x+1)), current across (x,x+1)
    std::vector<int> hval;  ///< hval[x] = (tau_x h)(eta)
};

/// h(eta) = eta(-1)eta(0) + eta(0)eta(1) - eta(-1)eta(0)eta(1), shifted to x.
int h_at(const ExclusionConfig& eta, int x);

CurrentField current_field(const ExclusionConfig& eta);

enum class HittingStatus { Reached, NotReached, NeverReachable };

struct HittingResult {
    HittingStatus status;
    double t_micro = 0.0;
    std::uint64_t events = 0;
};

/// First microscopic time the process started at eta is ergodic.
HittingResult hitting_time_ergodic(const ExclusionConfig& eta, Rng& rng, double t_max_micro);

}  // namespace fep

#pragma once

#include "fep/dynamics.hpp"
#include "fep/lattice.hpp"
#include "fep/rng.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fep {

enum class ZrGeometry { Torus, Segment };

/// Pile heights. On a Segment of length l the vector has l+2 cells and cells
/// 0 and l+1 are absorbing.
struct ZrConfig {
    std::vector<int> piles;
    ZrGeometry geometry = ZrGeometry::Torus;

    int sites() const { return static_cast<int>(piles.size()); }
    /// Segment interior length l.
    int ell() const { return sites() - 2; }
    long particles() const;
    long interior_particles() const;

    std::string to_string() const;
    static ZrConfig from_string(std::string_view s, ZrGeometry g = ZrGeometry::Torus);

    friend bool operator==(const ZrConfig&, const ZrConfig&) = default;
};

/// Exclusion to zero-range map. Hole 1 is the first empty site at or to the
/// left of site 0; pile i counts the particles between holes i and i+1.
ZrConfig ex_to_zr(const ExclusionConfig& eta);

ClassLabel classify_zr(const ZrConfig& omega);

/// One jump of the torus zero-range process: every pile with at least two
/// particles sends one to each neighbour at rate 1. Returns the holding time,
/// or nullopt if frozen.
std::optional<double> zr_step(ZrConfig& omega, Rng& rng);

/// Follows labelled holes along an exclusion trajectory and replays the
/// induced pile moves on a zero-range copy.
class ExZrTracker {
public:
    explicit ExZrTracker(const ExclusionConfig& eta);

    /// Applies an exclusion jump; returns false if the induced zero-range
    /// move was not allowed.
    bool apply(const Event& e);

    /// Piles read off the tracked labels of the current exclusion state.
    ZrConfig mapped() const;
    /// Zero-range state obtained by replaying induced moves.
    const ZrConfig& replayed() const { return zr_; }

private:
    int n_;
    std::vector<std::uint8_t> occ_;
    std::vector<int> hole_pos_;    // label -> site
    std::vector<int> hole_label_;  // site -> label or -1
    ZrConfig zr_;
};

/// Largest number of particles kept in a window of length l: floor((1+delta) l).
int window_cap(int ell, double delta);
/// (1 + delta/2)(1 + delta) l (l+1) / 2.
double window_z_bound(int ell, double delta);

/// Segment holding omega(x+1..x+l), empty boundary cells.
ZrConfig right_window(const ZrConfig& omega, int x, int ell);
/// Keeps the `cap` left-most particles of the segment interior.
ZrConfig truncate_window(const ZrConfig& window, int cap);
/// Sum over the interior of y * omega(y).
long window_z(const ZrConfig& window);

/// Membership of a segment in A_l(delta).
bool in_A(const ZrConfig& window, double delta);

/// Whether the truncated window to the right of every site lies in A_l.
/// Requires more than l sites.
bool is_regular(const ZrConfig& omega, int ell, double delta);

}  // namespace fep

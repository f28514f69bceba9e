#pragma once

#include "fep/rng.hpp"
#include "fep/zero_range.hpp"

#include <cstdint>
#include <vector>

namespace fep {

/// Auxiliary processes on the segment {0..l+1} with absorbing ends.
///  SZR: piles of height >= 2 send a particle each way at rate 1.
///  FZR: every non-empty pile sends a particle each way at rate 1.
///  IRW: every particle jumps each way at rate 1/cap, cap = floor((1+delta) l).
enum class AuxKind { SZR, FZR, IRW };

struct AuxResult {
    /// SZR: first time all interior piles are <= 1; FZR, IRW: first time the
    /// interior is empty.
    double hitting_time = 0.0;
    std::uint64_t jumps = 0;
    ZrConfig final_state;
};

AuxResult simulate_aux(AuxKind kind, const ZrConfig& initial, Rng& rng, double delta = 0.0);

struct CouplingLogRow {
    std::uint64_t event_index;
    double t_chi;
    double t_zeta;
    bool invariant_ok;
};

struct SzrFzrCoupling {
    double t_chi = 0.0;
    double t_zeta = 0.0;
    std::uint64_t jumps_chi = 0;
    std::uint64_t jumps_zeta = 0;
    /// Blue zeta particles match chi excess particles site by site at every
    /// transition.
    bool invariant_held = true;
    std::vector<CouplingLogRow> log;
};

/// Two-colour coupling of SZR (chi) and FZR (zeta) started from the same
/// segment configuration.
SzrFzrCoupling couple_szr_fzr(const ZrConfig& initial, Rng& rng, bool keep_log = false);

struct FzrIrwCoupling {
    double t_zeta = 0.0;
    double t_upsilon = 0.0;
    std::uint64_t steps = 0;
    /// t_i^zeta <= t_i^upsilon at every step i.
    bool ordered = true;
    std::vector<CouplingLogRow> log;
};

/// Time-domination coupling of FZR and IRW sharing per-particle jump
/// sequences. The initial segment must lie in A_l(delta).
FzrIrwCoupling couple_fzr_irw(const ZrConfig& initial, double delta, Rng& rng, bool keep_log = false);

}  // namespace fep

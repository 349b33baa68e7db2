#pragma once

#include <cstddef>
#include <functional>

#include "uscsim/config.hpp"

namespace uscsim {

/// One sweep axis: which parameter varies, over what range, plus the frozen
/// remainder of the configuration.
struct SweepSpec {
    enum class Variable { GRed, GBlue, OmegaEff, ProbeOffset };

    Variable variable;
    double start;   // rad/s
    double stop;    // rad/s
    std::size_t points;
    SimConfig fixed;

    SweepSpec(Variable variable, double start, double stop, std::size_t points,
              SimConfig fixed);

    double value_at(std::size_t index) const;
    SimConfig config_at(std::size_t index) const;
};

/// Worker count: explicit argument wins, then USCSIM_JOBS, then the hardware
/// concurrency (at least 1).
unsigned resolve_jobs(unsigned requested = 0);

/// Run fn(0..n-1) on a bounded pool. Cells must be independent; results keyed
/// by index are deterministic regardless of completion order. Exceptions are
/// captured and rethrown on the calling thread (first by index wins).
void parallel_for_index(std::size_t n, unsigned jobs,
                        const std::function<void(std::size_t)>& fn);

}  // namespace uscsim

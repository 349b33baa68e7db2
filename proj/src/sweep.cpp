#include "uscsim/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace uscsim {

SweepSpec::SweepSpec(Variable variable_, double start_, double stop_,
                     std::size_t points_, SimConfig fixed_)
    : variable(variable_), start(start_), stop(stop_), points(points_),
      fixed(fixed_) {
    if (points < 2) {
        throw std::invalid_argument("SweepSpec: need at least 2 points");
    }
    if (!(start < stop)) {
        throw std::invalid_argument("SweepSpec: requires start < stop");
    }
}

double SweepSpec::value_at(std::size_t index) const {
    const double frac =
        static_cast<double>(index) / static_cast<double>(points - 1);
    return start + (stop - start) * frac;
}

SimConfig SweepSpec::config_at(std::size_t index) const {
    SimConfig config = fixed;
    const double value = value_at(index);
    switch (variable) {
        case Variable::GRed: config.g_red = value; break;
        case Variable::GBlue: config.g_blue = value; break;
        case Variable::OmegaEff: config.omega_eff = value; break;
        case Variable::ProbeOffset:
            throw std::invalid_argument(
                "SweepSpec: probe_offset does not modify the configuration");
    }
    return config;
}

unsigned resolve_jobs(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("USCSIM_JOBS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) return static_cast<unsigned>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_for_index(std::size_t n, unsigned jobs,
                        const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = n;
    std::exception_ptr error;

    const auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace uscsim

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace pn {

/// Tunables shared across modules. All defaults are the documented ones; the
/// CLI overlays config file < environment (PN_*) < flags on top of these.
struct Config {
    /// Cap on dense coefficient arrays (full numerator length) in expand_pn.
    std::size_t expansion_cap = 10'000'000;
    /// Max candidates tried per arithmetic-progression prime search.
    std::uint64_t ap_budget = 1'000'000;
    /// Miller-Rabin error exponent e: accept with error probability < 2^-e.
    unsigned mr_error_exponent = 80;
    /// Region-scan parallelism; 0 = hardware concurrency.
    unsigned threads = 0;
    /// Seed mixed into randomized witness schedules and sampling helpers.
    std::uint64_t seed = 0;
    /// Certificate cache directory; empty = no caching.
    std::string cache_dir;
    /// Max probes when hunting k-bar over maximal regions in amplify.
    std::uint64_t region_probe_budget = 1'000'000;
    /// Cap on the number of regions a height scan may enumerate (2^22 covers
    /// every generic tuple up to n = 5 with room for degenerate n = 6).
    std::uint64_t region_scan_cap = std::uint64_t{1} << 22;

    static const Config& defaults();
};

inline const Config& Config::defaults() {
    static const Config c{};
    return c;
}

} // namespace pn

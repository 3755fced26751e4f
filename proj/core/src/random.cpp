#include "glab/random.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <unordered_set>

namespace glab {

std::size_t thread_count() {
    if (const char* env = std::getenv("GLAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::vector<std::size_t> random_subset(Rng& rng, std::size_t n, std::size_t k) {
    k = std::min(k, n);
    std::vector<std::size_t> out;
    if (2 * k >= n) {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), std::size_t{0});
        std::shuffle(all.begin(), all.end(), rng);
        out.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
        // Floyd's algorithm
        std::unordered_set<std::size_t> picked;
        for (std::size_t j = n - k; j < n; ++j) {
            std::uniform_int_distribution<std::size_t> d(0, j);
            const std::size_t t = d(rng);
            if (!picked.insert(t).second) picked.insert(j);
        }
        out.assign(picked.begin(), picked.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace glab

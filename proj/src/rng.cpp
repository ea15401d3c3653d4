#include "polylat/rng.hpp"

namespace polylat {

u64 Rng::below(u64 bound) {
    if (bound == 0) throw usage_error("Rng::below: zero bound");
    if (bound == 1) return 0;
    // Reject above the largest multiple of bound to keep the draw unbiased.
    u64 limit = ~u64{0} - (~u64{0} % bound);
    for (;;) {
        u64 r = gen_();
        if (r < limit) return r % bound;
    }
}

u64 Rng::between(u64 lo, u64 hi) {
    if (lo > hi) throw usage_error("Rng::between: empty range");
    return lo + below(hi - lo + 1);
}

std::vector<u64> Rng::distinct(u64 bound, std::size_t k) {
    if (k > bound) throw usage_error("Rng::distinct: k exceeds range");
    std::vector<u64> out;
    out.reserve(k);
    std::vector<bool> used;
    // Dense bitmap for small ranges, draw-and-retry otherwise.
    if (bound <= (1u << 22)) {
        used.assign(static_cast<std::size_t>(bound), false);
        while (out.size() < k) {
            u64 v = below(bound);
            if (!used[static_cast<std::size_t>(v)]) {
                used[static_cast<std::size_t>(v)] = true;
                out.push_back(v);
            }
        }
    } else {
        while (out.size() < k) {
            u64 v = below(bound);
            bool seen = false;
            for (u64 w : out)
                if (w == v) { seen = true; break; }
            if (!seen) out.push_back(v);
        }
    }
    return out;
}

} // namespace polylat

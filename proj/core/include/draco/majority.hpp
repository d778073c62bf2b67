#pragma once

#include <cstddef>
#include <optional>

#include "draco/errors.hpp"

namespace draco {

// Boyer-Moore streaming majority vote: one pass, one candidate, one counter.
// If a strict majority element exists under `eq`, the surviving candidate is
// it; callers must guarantee majority existence (with replication 2s+1 and at
// most s corrupted copies, an honest strict majority always exists).
template <typename It, typename Eq>
It streaming_majority(It first, It last, Eq eq) {
    if (first == last) throw EmptySequence("streaming_majority: empty sequence");
    It candidate = first;
    std::size_t counter = 0;
    for (It it = first; it != last; ++it) {
        if (counter == 0) {
            candidate = it;
            counter = 1;
        } else if (eq(*candidate, *it)) {
            ++counter;
        } else {
            --counter;
        }
    }
    return candidate;
}

// Debug-mode variant: adds the verification pass and reports whether the
// survivor actually holds a strict majority.
template <typename It, typename Eq>
std::optional<It> streaming_majority_checked(It first, It last, Eq eq) {
    It candidate = streaming_majority(first, last, eq);
    std::size_t count = 0;
    std::size_t total = 0;
    for (It it = first; it != last; ++it) {
        if (eq(*candidate, *it)) ++count;
        ++total;
    }
    if (2 * count > total) return candidate;
    return std::nullopt;
}

}  // namespace draco

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace bugforecast::metrics {

struct LineChanges {
    std::size_t added = 0;     // unpaired insertions
    std::size_t modified = 0;  // insertion/deletion pairs within a hunk
    std::size_t removed = 0;   // unpaired deletions

    LineChanges& operator+=(const LineChanges& o) {
        added += o.added;
        modified += o.modified;
        removed += o.removed;
        return *this;
    }
    friend bool operator==(const LineChanges&, const LineChanges&) = default;
};

/// Index pairs (i, j) with a[i] == b[j] forming a longest common subsequence,
/// increasing in both coordinates (Myers' O(ND) algorithm, linear space).
std::vector<std::pair<std::size_t, std::size_t>> common_lines(const std::vector<std::string>& a,
                                                              const std::vector<std::string>& b);

/// Line-level change counts from `a` to `b`. Each hunk (maximal run between
/// common lines) with d deletions and i insertions contributes
/// min(d, i) modified lines, the surplus as added or removed.
LineChanges diff_lines(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace bugforecast::metrics

#include "bugforecast/metrics/line_diff.hpp"

#include <algorithm>
#include <unordered_map>

namespace bugforecast::metrics {

namespace {

using Matches = std::vector<std::pair<std::size_t, std::size_t>>;

// Lines are interned to integers so comparisons in the inner loops are cheap.
class Myers {
public:
    Myers(const std::vector<int>& a, const std::vector<int>& b) : a_(a), b_(b) {
        const std::size_t max = a.size() + b.size() + 2;
        fwd_.assign(2 * max + 1, 0);
        bwd_.assign(2 * max + 1, 0);
        offset_ = static_cast<long>(max);
    }

    void run(Matches& out) { compare(0, static_cast<long>(a_.size()), 0, static_cast<long>(b_.size()), out); }

private:
    struct Snake {
        long x0, y0, x1, y1;
    };

    // Recursively splits on the middle snake of a[a0..a1) vs b[b0..b1).
    void compare(long a0, long a1, long b0, long b1, Matches& out) {
        while (a0 < a1 && b0 < b1 && a_[a0] == b_[b0]) {
            out.emplace_back(a0, b0);
            ++a0;
            ++b0;
        }
        Matches tail;
        while (a0 < a1 && b0 < b1 && a_[a1 - 1] == b_[b1 - 1]) {
            tail.emplace_back(a1 - 1, b1 - 1);
            --a1;
            --b1;
        }
        if (a0 < a1 && b0 < b1) {
            const Snake s = middle_snake(a0, a1, b0, b1);
            compare(a0, s.x0, b0, s.y0, out);
            for (long x = s.x0, y = s.y0; x < s.x1; ++x, ++y)
                out.emplace_back(x, y);
            compare(s.x1, a1, s.y1, b1, out);
        }
        out.insert(out.end(), tail.rbegin(), tail.rend());
    }

    Snake middle_snake(long a0, long a1, long b0, long b1) {
        const long n = a1 - a0, m = b1 - b0;
        const long delta = n - m;
        const bool odd = (delta & 1) != 0;
        const long dmax = (n + m + 1) / 2;
        auto F = [&](long k) -> long& { return fwd_[static_cast<std::size_t>(k + offset_)]; };
        auto B = [&](long k) -> long& { return bwd_[static_cast<std::size_t>(k + offset_)]; };
        F(1) = 0;
        B(1) = 0;
        for (long d = 0; d <= dmax; ++d) {
            for (long k = -d; k <= d; k += 2) {
                long x = (k == -d || (k != d && F(k - 1) < F(k + 1))) ? F(k + 1) : F(k - 1) + 1;
                long y = x - k;
                const long sx = x, sy = y;
                while (x < n && y < m && a_[a0 + x] == b_[b0 + y]) {
                    ++x;
                    ++y;
                }
                F(k) = x;
                const long c = delta - k;  // matching backward diagonal
                if (odd && c >= -(d - 1) && c <= d - 1 && x + B(c) >= n)
                    return {a0 + sx, b0 + sy, a0 + x, b0 + y};
            }
            for (long k = -d; k <= d; k += 2) {
                long x = (k == -d || (k != d && B(k - 1) < B(k + 1))) ? B(k + 1) : B(k - 1) + 1;
                long y = x - k;
                const long sx = x, sy = y;
                while (x < n && y < m && a_[a1 - 1 - x] == b_[b1 - 1 - y]) {
                    ++x;
                    ++y;
                }
                B(k) = x;
                const long c = delta - k;
                if (!odd && c >= -d && c <= d && x + F(c) >= n)
                    return {a1 - x, b1 - y, a1 - sx, b1 - sy};
            }
        }
        // Unreachable for non-empty ranges; fall back to "no common line".
        return {a1, b1, a1, b1};
    }

    const std::vector<int>& a_;
    const std::vector<int>& b_;
    std::vector<long> fwd_, bwd_;
    long offset_ = 0;
};

}  // namespace

Matches common_lines(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::unordered_map<std::string, int> ids;
    auto intern = [&](const std::vector<std::string>& lines) {
        std::vector<int> out;
        out.reserve(lines.size());
        for (const auto& l : lines)
            out.push_back(ids.emplace(l, static_cast<int>(ids.size())).first->second);
        return out;
    };
    const auto ia = intern(a);
    const auto ib = intern(b);
    Matches out;
    Myers(ia, ib).run(out);
    return out;
}

LineChanges diff_lines(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    LineChanges total;
    std::size_t i = 0, j = 0;
    auto close_hunk = [&](std::size_t next_i, std::size_t next_j) {
        const std::size_t dels = next_i - i, adds = next_j - j;
        const std::size_t paired = std::min(dels, adds);
        total.modified += paired;
        total.added += adds - paired;
        total.removed += dels - paired;
    };
    // Align in a canonical order so that swapping the inputs swaps added and
    // removed exactly.
    const bool swapped = b < a;
    auto matches = swapped ? common_lines(b, a) : common_lines(a, b);
    if (swapped)
        for (auto& [x, y] : matches)
            std::swap(x, y);
    for (const auto& [mi, mj] : matches) {
        close_hunk(mi, mj);
        i = mi + 1;
        j = mj + 1;
    }
    close_hunk(a.size(), b.size());
    return total;
}

}  // namespace bugforecast::metrics

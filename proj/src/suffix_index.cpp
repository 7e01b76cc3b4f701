#include "surf/suffix_index.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace surf {

std::vector<std::uint64_t> build_sa(std::span<const Symbol> text) {
    const std::size_t n = text.size();
    if (n == 0 || text.back() != kSentinelSymbol)
        throw std::invalid_argument("build_sa: text must end with the sentinel symbol 0");
    if (std::find(text.begin(), text.end() - 1, kSentinelSymbol) != text.end() - 1)
        throw std::invalid_argument("build_sa: sentinel symbol 0 must occur exactly once");

    std::vector<std::uint64_t> sa(n), tmp(n), rank(text.begin(), text.end()), next_rank(n);
    std::size_t classes = *std::max_element(text.begin(), text.end()) + 1;

    {
        std::vector<std::size_t> cnt(classes + 1, 0);
        for (auto c : text) ++cnt[c + 1];
        for (std::size_t c = 1; c <= classes; ++c) cnt[c] += cnt[c - 1];
        for (std::size_t i = 0; i < n; ++i) sa[cnt[text[i]]++] = i;
    }

    std::vector<std::size_t> cnt;
    for (std::size_t k = 1;; k <<= 1) {
        // compact ranks of the current order
        next_rank[sa[0]] = 0;
        std::size_t r = 0;
        for (std::size_t i = 1; i < n; ++i) {
            const auto a = sa[i - 1], b = sa[i];
            const bool same = rank[a] == rank[b] &&
                              (k > 1 ? (a + k / 2 < n ? rank[a + k / 2] : n + 1) == (b + k / 2 < n ? rank[b + k / 2] : n + 1)
                                     : true);
            if (!same) ++r;
            next_rank[b] = r;
        }
        rank.swap(next_rank);
        classes = r + 1;
        if (classes == n) break;

        // order by second key (rank[i + k]); suffixes shorter than k come first
        std::size_t p = 0;
        for (std::size_t i = n - std::min(n, k); i < n; ++i) tmp[p++] = i;
        for (std::size_t i = 0; i < n; ++i)
            if (sa[i] >= k) tmp[p++] = sa[i] - k;

        // stable counting sort by first key
        cnt.assign(classes + 1, 0);
        for (std::size_t i = 0; i < n; ++i) ++cnt[rank[i] + 1];
        for (std::size_t c = 1; c <= classes; ++c) cnt[c] += cnt[c - 1];
        for (std::size_t i = 0; i < n; ++i) sa[cnt[rank[tmp[i]]]++] = tmp[i];
    }
    return sa;
}

std::vector<std::uint64_t> build_lcp(std::span<const Symbol> text, std::span<const std::uint64_t> sa) {
    const std::size_t n = text.size();
    if (sa.size() != n) throw std::invalid_argument("build_lcp: suffix array length mismatch");
    std::vector<std::uint64_t> inv(n), lcp(n, 0);
    for (std::size_t i = 0; i < n; ++i) inv[sa[i]] = i;
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (inv[i] == 0) {
            h = 0;
            continue;
        }
        const std::size_t j = sa[inv[i] - 1];
        while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
        lcp[inv[i]] = h;
        if (h > 0) --h;
    }
    return lcp;
}

namespace {

// Sign of (suffix at pos, truncated to |pattern|) compared to pattern.
int compare_prefix(std::span<const Symbol> text, std::uint64_t pos, std::span<const Symbol> pattern) {
    const std::size_t avail = text.size() - pos;
    const std::size_t len = std::min(avail, pattern.size());
    for (std::size_t i = 0; i < len; ++i) {
        if (text[pos + i] != pattern[i]) return text[pos + i] < pattern[i] ? -1 : 1;
    }
    return avail < pattern.size() ? -1 : 0;
}

}  // namespace

std::optional<Locus> locus(std::span<const std::uint64_t> sa, std::span<const Symbol> text,
                           std::span<const Symbol> pattern) {
    if (pattern.empty()) throw std::invalid_argument("locus: empty pattern");
    auto first = std::partition_point(sa.begin(), sa.end(),
                                      [&](std::uint64_t p) { return compare_prefix(text, p, pattern) < 0; });
    auto last = std::partition_point(first, sa.end(),
                                     [&](std::uint64_t p) { return compare_prefix(text, p, pattern) == 0; });
    if (first == last) return std::nullopt;
    return Locus{static_cast<std::uint64_t>(first - sa.begin()), static_cast<std::uint64_t>(last - sa.begin()) - 1};
}

std::vector<Symbol> extract(std::span<const Symbol> text, std::size_t pos, std::size_t len) {
    if (pos > text.size() || len > text.size() - pos)
        throw std::out_of_range("extract: [" + std::to_string(pos) + "," + std::to_string(pos + len) +
                                ") outside text of length " + std::to_string(text.size()));
    return {text.begin() + static_cast<std::ptrdiff_t>(pos), text.begin() + static_cast<std::ptrdiff_t>(pos + len)};
}

}  // namespace surf

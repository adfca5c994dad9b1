#include "secrisk/category/similarity.hpp"

#include <algorithm>
#include <array>
#include <tuple>
#include <vector>

namespace secrisk {

namespace {

double jaro_impl(std::string_view s1, std::string_view s2, bool winklerize) {
    const std::size_t l1 = s1.size();
    const std::size_t l2 = s2.size();
    if (l1 == 0 || l2 == 0) return 0.0;
    const std::size_t range = std::max<std::size_t>(std::max(l1, l2) / 2, 1) - 1;

    std::vector<bool> f1(l1, false), f2(l2, false);
    std::size_t common = 0;
    for (std::size_t i = 0; i < l1; ++i) {
        const std::size_t lo = i > range ? i - range : 0;
        const std::size_t hi = std::min(i + range, l2 - 1);
        for (std::size_t j = lo; j <= hi; ++j) {
            if (!f2[j] && s2[j] == s1[i]) {
                f1[i] = f2[j] = true;
                ++common;
                break;
            }
        }
    }
    if (common == 0) return 0.0;

    std::size_t k = 0;
    std::size_t trans = 0;
    for (std::size_t i = 0; i < l1; ++i) {
        if (!f1[i]) continue;
        std::size_t j = k;
        while (j < l2 && !f2[j]) ++j;
        k = j + 1;
        if (s1[i] != s2[j]) ++trans;
    }
    trans /= 2;

    const double c = static_cast<double>(common);
    double w = (c / static_cast<double>(l1) + c / static_cast<double>(l2) + (c - static_cast<double>(trans)) / c) / 3.0;
    if (winklerize && w > 0.7) {
        const std::size_t limit = std::min<std::size_t>(std::min(l1, l2), 4);
        std::size_t p = 0;
        while (p < limit && s1[p] == s2[p]) ++p;
        if (p > 0) w += static_cast<double>(p) * 0.1 * (1.0 - w);
    }
    return w;
}

class SequenceMatcher {
public:
    SequenceMatcher(std::string_view a, std::string_view b) : a_(a), b_(b) {
        for (std::size_t j = 0; j < b_.size(); ++j) b2j_[static_cast<unsigned char>(b_[j])].push_back(static_cast<int>(j));
        const std::size_t n = b_.size();
        if (n >= 200) {
            const std::size_t ntest = n / 100 + 1;
            for (auto& idx : b2j_)
                if (idx.size() > ntest) idx.clear();
        }
    }

    std::size_t matched_characters() const {
        std::size_t total = 0;
        std::vector<std::array<int, 4>> queue{{0, static_cast<int>(a_.size()), 0, static_cast<int>(b_.size())}};
        while (!queue.empty()) {
            const auto [alo, ahi, blo, bhi] = queue.back();
            queue.pop_back();
            const auto [i, j, k] = longest_match(alo, ahi, blo, bhi);
            if (k == 0) continue;
            total += static_cast<std::size_t>(k);
            if (alo < i && blo < j) queue.push_back({alo, i, blo, j});
            if (i + k < ahi && j + k < bhi) queue.push_back({i + k, ahi, j + k, bhi});
        }
        return total;
    }

private:
    std::tuple<int, int, int> longest_match(int alo, int ahi, int blo, int bhi) const {
        int besti = alo, bestj = blo, bestsize = 0;
        // run[j + 1] = length of the common run ending at (i - 1, j)
        std::vector<int> prev(b_.size() + 1, 0), cur(b_.size() + 1, 0);
        std::vector<int> prev_touched, cur_touched;
        for (int i = alo; i < ahi; ++i) {
            for (int j : b2j_[static_cast<unsigned char>(a_[static_cast<std::size_t>(i)])]) {
                if (j < blo) continue;
                if (j >= bhi) break;
                const int k = prev[static_cast<std::size_t>(j)] + 1;
                cur[static_cast<std::size_t>(j) + 1] = k;
                cur_touched.push_back(j + 1);
                if (k > bestsize) {
                    besti = i - k + 1;
                    bestj = j - k + 1;
                    bestsize = k;
                }
            }
            for (int t : prev_touched) prev[static_cast<std::size_t>(t)] = 0;
            prev_touched.clear();
            std::swap(prev, cur);
            std::swap(prev_touched, cur_touched);
        }
        auto A = [&](int x) { return a_[static_cast<std::size_t>(x)]; };
        auto B = [&](int x) { return b_[static_cast<std::size_t>(x)]; };
        while (besti > alo && bestj > blo && A(besti - 1) == B(bestj - 1)) {
            --besti;
            --bestj;
            ++bestsize;
        }
        while (besti + bestsize < ahi && bestj + bestsize < bhi && A(besti + bestsize) == B(bestj + bestsize)) ++bestsize;
        return {besti, bestj, bestsize};
    }

    std::string_view a_, b_;
    std::array<std::vector<int>, 256> b2j_;
};

}  // namespace

double jaro(std::string_view a, std::string_view b) { return jaro_impl(a, b, false); }

double jaro_winkler(std::string_view a, std::string_view b) { return jaro_impl(a, b, true); }

double ratcliff_obershelp(std::string_view a, std::string_view b) {
    const std::size_t length = a.size() + b.size();
    if (length == 0) return 1.0;
    const SequenceMatcher sm(a, b);
    return 2.0 * static_cast<double>(sm.matched_characters()) / static_cast<double>(length);
}

}  // namespace secrisk

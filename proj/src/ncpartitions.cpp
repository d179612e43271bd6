#include "mfs/ncpartitions.hpp"

#include <algorithm>
#include <string>

#include "mfs/errors.hpp"

namespace mfs::oracle {

bool NCPartition::is_partition() const {
    std::vector<char> seen(static_cast<std::size_t>(ground_size), 0);
    for (const auto &block : blocks) {
        if (block.empty() || !std::is_sorted(block.begin(), block.end()))
            return false;
        for (int e : block) {
            if (e < 0 || e >= ground_size || seen[static_cast<std::size_t>(e)])
                return false;
            seen[static_cast<std::size_t>(e)] = 1;
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

std::vector<int> NCPartition::block_index() const {
    std::vector<int> idx(static_cast<std::size_t>(ground_size), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int e : blocks[b])
            if (e >= 0 && e < ground_size)
                idx[static_cast<std::size_t>(e)] = static_cast<int>(b);
    return idx;
}

bool NCPartition::is_noncrossing() const {
    const auto idx = block_index();
    const int m = ground_size;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c)
                for (int d = c + 1; d < m; ++d)
                    if (idx[a] == idx[c] && idx[b] == idx[d] && idx[a] != idx[b])
                        return false;
    return true;
}

std::vector<NCPartition> enumerate_nc(int m) {
    if (m < 1 || m > kMaxOracleGroundSize)
        throw SizeLimitExceeded("non-crossing enumeration supports ground sets of size 1.."
                                + std::to_string(kMaxOracleGroundSize));

    // Restricted growth strings enumerate all set partitions; keep the
    // non-crossing ones. Bell(10) is small enough that filtering is cheap.
    std::vector<NCPartition> out;
    std::vector<int> assign(static_cast<std::size_t>(m), 0);
    auto emit = [&] {
        const int nblocks = *std::max_element(assign.begin(), assign.end()) + 1;
        NCPartition p;
        p.ground_size = m;
        p.blocks.assign(static_cast<std::size_t>(nblocks), {});
        for (int e = 0; e < m; ++e)
            p.blocks[static_cast<std::size_t>(assign[static_cast<std::size_t>(e)])].push_back(e);
        if (p.is_noncrossing())
            out.push_back(std::move(p));
    };
    // Depth-first over strings with assign[0] = 0, assign[i] <= max(prefix)+1.
    auto rec = [&](auto &&self, int pos, int maxid) -> void {
        if (pos == m) {
            emit();
            return;
        }
        for (int a = 0; a <= maxid + 1; ++a) {
            assign[static_cast<std::size_t>(pos)] = a;
            self(self, pos + 1, std::max(maxid, a));
        }
    };
    rec(rec, 1, 0);
    return out;
}

} // namespace mfs::oracle

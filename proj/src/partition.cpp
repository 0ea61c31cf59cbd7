#include "coalab/partition.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace coalab {

namespace {

void canonicalize(std::vector<Partition::Block>& blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
}

}  // namespace

Partition::Partition(std::size_t n, std::vector<Block> blocks)
    : n_(n), blocks_(std::move(blocks)), owner_(n) {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        for (int e : blocks_[i]) owner_[static_cast<std::size_t>(e - 1)] = static_cast<std::uint32_t>(i);
}

Partition Partition::singletons(std::size_t n) {
    if (n == 0) throw std::invalid_argument("singleton_partition: n must be >= 1");
    std::vector<Block> blocks(n);
    for (std::size_t i = 0; i < n; ++i) blocks[i] = {static_cast<int>(i + 1)};
    return Partition(n, std::move(blocks));
}

Partition Partition::from_blocks(std::size_t n, std::vector<Block> blocks) {
    if (n == 0) throw std::invalid_argument("partition: n must be >= 1");
    std::vector<char> seen(n, 0);
    std::size_t covered = 0;
    for (const auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("partition: empty block");
        for (int e : b) {
            if (e < 1 || static_cast<std::size_t>(e) > n)
                throw std::invalid_argument("partition: element out of range");
            if (seen[static_cast<std::size_t>(e - 1)]++)
                throw std::invalid_argument("partition: blocks overlap");
            ++covered;
        }
    }
    if (covered != n) throw std::invalid_argument("partition: blocks do not cover {1..n}");
    canonicalize(blocks);
    return Partition(n, std::move(blocks));
}

Partition Partition::from_labels(std::span<const int> labels) {
    if (labels.empty()) throw std::invalid_argument("partition: empty label vector");
    std::map<int, std::size_t> index;
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = index.try_emplace(labels[i], blocks.size());
        if (inserted) blocks.emplace_back();
        blocks[it->second].push_back(static_cast<int>(i + 1));
    }
    // Blocks were opened in order of their least element, so they are canonical.
    return Partition(labels.size(), std::move(blocks));
}

Partition Partition::parse(std::string_view text) {
    std::vector<Block> blocks;
    std::size_t pos = 0;
    int max_elem = 0;
    auto fail = [&] { throw std::invalid_argument("partition: cannot parse '" + std::string(text) + "'"); };
    while (pos < text.size()) {
        if (text[pos] != '{') fail();
        const auto close = text.find('}', pos);
        if (close == std::string_view::npos) fail();
        Block b;
        std::string_view body = text.substr(pos + 1, close - pos - 1);
        std::size_t p = 0;
        while (p < body.size()) {
            const auto comma = body.find(',', p);
            const auto tok = body.substr(p, comma == std::string_view::npos ? std::string_view::npos : comma - p);
            int v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail();
            b.push_back(v);
            max_elem = std::max(max_elem, v);
            if (comma == std::string_view::npos) break;
            p = comma + 1;
        }
        blocks.push_back(std::move(b));
        pos = close + 1;
        if (pos < text.size()) {
            if (text[pos] != '|') fail();
            ++pos;
        }
    }
    if (blocks.empty()) fail();
    return from_blocks(static_cast<std::size_t>(max_elem), std::move(blocks));
}

std::size_t Partition::block_of(int element) const {
    if (element < 1 || static_cast<std::size_t>(element) > n_)
        throw std::out_of_range("partition: element out of range");
    return owner_[static_cast<std::size_t>(element - 1)];
}

std::string Partition::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i) out += '|';
        out += '{';
        for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
            if (j) out += ',';
            out += std::to_string(blocks_[i][j]);
        }
        out += '}';
    }
    return out;
}

bool is_refinement(const Partition& fine, const Partition& coarse) {
    if (fine.size() != coarse.size())
        throw std::invalid_argument("is_refinement: partitions of different ground sets");
    for (const auto& b : fine.blocks()) {
        const auto owner = coarse.block_of(b.front());
        for (int e : b)
            if (coarse.block_of(e) != owner) return false;
    }
    return true;
}

Partition merge_blocks(const Partition& p, const std::vector<std::vector<std::size_t>>& groups) {
    std::vector<int> target(p.block_count(), -1);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].empty()) throw std::invalid_argument("merge_blocks: empty group");
        for (auto idx : groups[g]) {
            if (idx >= p.block_count()) throw std::invalid_argument("merge_blocks: block index out of range");
            if (target[idx] != -1) throw std::invalid_argument("merge_blocks: groups overlap");
            target[idx] = static_cast<int>(g);
        }
    }
    std::vector<Partition::Block> out(groups.size());
    for (std::size_t i = 0; i < p.block_count(); ++i) {
        const auto& blk = p.block(i);
        if (target[i] < 0) {
            out.push_back(blk);
        } else {
            auto& dst = out[static_cast<std::size_t>(target[i])];
            dst.insert(dst.end(), blk.begin(), blk.end());
        }
    }
    return Partition::from_blocks(p.size(), std::move(out));
}

MergerSignature MergerSignature::make(std::vector<int> group_sizes, int s) {
    if (s < 0) throw std::invalid_argument("merger signature: s must be >= 0");
    for (int g : group_sizes)
        if (g < 2) throw std::invalid_argument("merger signature: group sizes must be >= 2");
    std::sort(group_sizes.begin(), group_sizes.end(), std::greater<>());
    MergerSignature sig;
    sig.b = s + std::accumulate(group_sizes.begin(), group_sizes.end(), 0);
    sig.group_sizes = std::move(group_sizes);
    sig.s = s;
    return sig;
}

std::string MergerSignature::to_string() const {
    std::ostringstream os;
    os << "b=" << b << ";[";
    for (std::size_t i = 0; i < group_sizes.size(); ++i) os << (i ? "," : "") << group_sizes[i];
    os << "];s=" << s;
    return os.str();
}

MergerSignature merger_signature(const Partition& before, const Partition& after) {
    if (!is_refinement(before, after))
        throw std::invalid_argument("merger_signature: `before` does not refine `after`");
    std::vector<int> counts(after.block_count(), 0);
    for (const auto& blk : before.blocks()) ++counts[after.block_of(blk.front())];
    std::vector<int> sizes;
    int s = 0;
    for (int c : counts) {
        if (c == 1) ++s;
        else sizes.push_back(c);
    }
    return MergerSignature::make(std::move(sizes), s);
}

double signature_multiplicity(const MergerSignature& sig) {
    // b! / (prod b_i! * prod_m mult_m! * s!)
    double log_count = std::lgamma(sig.b + 1.0) - std::lgamma(sig.s + 1.0);
    std::map<int, int> mult;
    for (int g : sig.group_sizes) {
        log_count -= std::lgamma(g + 1.0);
        ++mult[g];
    }
    for (auto [size, m] : mult) log_count -= std::lgamma(m + 1.0);
    return std::round(std::exp(log_count));
}

std::vector<MergerSignature> enumerate_signatures(int b) {
    if (b < 1) throw std::invalid_argument("enumerate_signatures: b must be >= 1");
    std::vector<MergerSignature> out;
    std::vector<int> current;
    // Non-increasing sequences of parts >= 2 with sum <= b.
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        out.push_back(MergerSignature::make(current, remaining));
        for (int part = std::min(max_part, remaining); part >= 2; --part) {
            current.push_back(part);
            rec(remaining - part, part);
            current.pop_back();
        }
    };
    rec(b, b);
    return out;
}

std::vector<Partition> enumerate_partitions(std::size_t n) {
    if (n == 0) throw std::invalid_argument("enumerate_partitions: n must be >= 1");
    std::vector<Partition> out;
    std::vector<int> rgs(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int max_label) {
        if (i == n) {
            out.push_back(Partition::from_labels(rgs));
            return;
        }
        for (int l = 0; l <= max_label + 1; ++l) {
            rgs[i] = l;
            rec(i + 1, std::max(max_label, l));
        }
    };
    rgs[0] = 0;
    rec(1, 0);
    return out;
}

PartitionPath::PartitionPath(double t0, Partition initial) {
    times_.push_back(t0);
    states_.push_back(std::move(initial));
}

void PartitionPath::append(double time, Partition state) {
    if (!states_.empty()) {
        if (time < times_.back()) throw std::invalid_argument("partition path: time goes backwards");
        if (!is_refinement(states_.back(), state))
            throw std::invalid_argument("partition path: new state is not coarser than the previous one");
    }
    times_.push_back(time);
    states_.push_back(std::move(state));
}

const Partition& PartitionPath::at(double t) const {
    if (states_.empty() || t < times_.front()) throw std::out_of_range("partition path: time before start");
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    return states_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

}  // namespace coalab

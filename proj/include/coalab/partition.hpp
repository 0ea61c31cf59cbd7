#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coalab {

/// A partition of {1..n} in canonical form: elements ascending inside each
/// block, blocks ordered by their least element. Elements are 1-based labels.
class Partition {
  public:
    using Block = std::vector<int>;

    /// {{1},{2},...,{n}}.
    static Partition singletons(std::size_t n);

    /// Validates disjointness and coverage of {1..n}, then canonicalizes.
    static Partition from_blocks(std::size_t n, std::vector<Block> blocks);

    /// Elements i and j share a block iff labels[i-1] == labels[j-1].
    static Partition from_labels(std::span<const int> labels);

    /// Parses the text form "{1,2}|{3}".
    static Partition parse(std::string_view text);

    std::size_t size() const noexcept { return n_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    const Block& block(std::size_t i) const { return blocks_.at(i); }

    /// 0-based index of the block containing `element` (1-based).
    std::size_t block_of(int element) const;

    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

  private:
    Partition(std::size_t n, std::vector<Block> blocks);

    std::size_t n_ = 0;
    std::vector<Block> blocks_;
    std::vector<std::uint32_t> owner_;  // owner_[e-1] = block index of e
};

/// True iff every block of `fine` lies inside some block of `coarse`.
bool is_refinement(const Partition& fine, const Partition& coarse);

/// Unions the blocks named by each group (0-based canonical block positions)
/// and re-canonicalizes. Groups must be nonempty, in range and disjoint.
Partition merge_blocks(const Partition& p, const std::vector<std::vector<std::size_t>>& groups);

/// Shape of one coalescence step: b blocks become a + s blocks, where a blocks
/// are unions of group_sizes[0] >= ... >= group_sizes[a-1] >= 2 old blocks and
/// s old blocks are untouched.
struct MergerSignature {
    int b = 0;
    std::vector<int> group_sizes;
    int s = 0;

    static MergerSignature make(std::vector<int> group_sizes, int s);

    int a() const noexcept { return static_cast<int>(group_sizes.size()); }
    bool has_merge() const noexcept { return !group_sizes.empty(); }
    int blocks_after() const noexcept { return a() + s; }

    /// e.g. "b=4;[3];s=1"
    std::string to_string() const;

    friend bool operator==(const MergerSignature&, const MergerSignature&) = default;
    friend auto operator<=>(const MergerSignature&, const MergerSignature&) = default;
};

MergerSignature merger_signature(const Partition& before, const Partition& after);

/// Number of set partitions of b labelled blocks having this signature's shape.
double signature_multiplicity(const MergerSignature& sig);

/// All signatures of b blocks, the no-merge signature first.
std::vector<MergerSignature> enumerate_signatures(int b);

/// All partitions of {1..n} (Bell(n) of them), by restricted growth strings.
std::vector<Partition> enumerate_partitions(std::size_t n);

/// Piecewise-constant coalescent path: states[i] holds on [times[i], times[i+1]).
class PartitionPath {
  public:
    PartitionPath() = default;
    PartitionPath(double t0, Partition initial);

    /// Appends a state; rejects decreasing time or a state that is not
    /// coarser than the current one.
    void append(double time, Partition state);

    std::size_t length() const noexcept { return states_.size(); }
    bool empty() const noexcept { return states_.empty(); }
    const std::vector<double>& times() const noexcept { return times_; }
    const std::vector<Partition>& states() const noexcept { return states_; }
    const Partition& back() const { return states_.back(); }

    /// State in force at time t (the last state whose time is <= t).
    const Partition& at(double t) const;

  private:
    std::vector<double> times_;
    std::vector<Partition> states_;
};

}  // namespace coalab

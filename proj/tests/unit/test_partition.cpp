#include "coalab/partition.hpp"
#include "coalab/rng.hpp"

#include "../oracle/oracle.hpp"

#include <doctest.h>

#include <set>

using namespace coalab;

namespace {

Partition from_oracle(const std::vector<int>& labels) { return Partition::from_labels(labels); }

}  // namespace

TEST_SUITE("partition") {

TEST_CASE("singletons") {
    CHECK(Partition::singletons(3).to_string() == "{1}|{2}|{3}");
    CHECK(Partition::singletons(1).to_string() == "{1}");
    CHECK(Partition::singletons(5).block_count() == 5);
}

TEST_CASE("construction validates and canonicalizes") {
    const auto p = Partition::from_blocks(4, {{3, 2}, {4, 1}});
    CHECK(p.to_string() == "{1,4}|{2,3}");
    CHECK(p.block_of(3) == 1);
    CHECK_THROWS_AS(Partition::from_blocks(3, {{1, 2}, {2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition::from_blocks(3, {{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition::from_blocks(3, {{1, 4}, {2, 3}}), std::invalid_argument);
    CHECK(Partition::parse("{2,3}|{1}") == Partition::from_blocks(3, {{1}, {2, 3}}));
    CHECK(Partition::parse(p.to_string()) == p);
}

TEST_CASE("is_refinement examples") {
    CHECK(is_refinement(Partition::parse("{1}|{2}|{3}"), Partition::parse("{1,2}|{3}")));
    CHECK_FALSE(is_refinement(Partition::parse("{1,2}|{3}"), Partition::parse("{1,3}|{2}")));
    CHECK(is_refinement(Partition::parse("{1,2,3}"), Partition::parse("{1,2,3}")));
}

TEST_CASE("merge_blocks examples") {
    const auto s3 = Partition::singletons(3);
    CHECK(merge_blocks(s3, {{0, 1}}).to_string() == "{1,2}|{3}");
    CHECK(merge_blocks(s3, {{0, 1, 2}}).to_string() == "{1,2,3}");
    CHECK(merge_blocks(Partition::parse("{1,4}|{2}|{3}"), {{1, 2}}).to_string() == "{1,4}|{2,3}");
    CHECK_THROWS_AS(merge_blocks(s3, {{0, 1}, {1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(merge_blocks(s3, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("merger_signature examples") {
    const auto a = merger_signature(Partition::singletons(3), Partition::parse("{1,2}|{3}"));
    CHECK(a == MergerSignature::make({2}, 1));
    CHECK(a.b == 3);
    const auto b = merger_signature(Partition::singletons(4), Partition::parse("{1,2}|{3,4}"));
    CHECK(b == MergerSignature::make({2, 2}, 0));
    const auto c = merger_signature(Partition::singletons(4), Partition::singletons(4));
    CHECK(c.b == 4);
    CHECK(c.group_sizes.empty());
    CHECK(c.s == 4);
    CHECK_THROWS_AS(merger_signature(Partition::parse("{1,2}|{3}"), Partition::parse("{1,3}|{2}")),
                    std::invalid_argument);
}

TEST_CASE("enumerate_partitions matches brute force for n <= 7") {
    for (int n = 1; n <= 7; ++n) {
        const auto got = enumerate_partitions(static_cast<std::size_t>(n));
        CHECK(static_cast<long long>(got.size()) == oracle::bell(n));
        std::set<Partition> mine(got.begin(), got.end());
        std::set<Partition> ref;
        for (const auto& l : oracle::set_partitions(n)) ref.insert(from_oracle(l));
        CHECK(mine == ref);
    }
}

TEST_CASE("refinement order is exhaustively correct for n <= 6") {
    for (int n = 1; n <= 6; ++n) {
        const auto all = oracle::set_partitions(n);
        std::vector<Partition> ps;
        for (const auto& l : all) ps.push_back(from_oracle(l));
        long long comparable = 0;
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = 0; j < all.size(); ++j) {
                const bool expect = oracle::refines(all[i], all[j]);
                REQUIRE(is_refinement(ps[i], ps[j]) == expect);
                comparable += expect;
            }
        // pairs P <= Q number sum over Q of prod Bell(|block|)
        long long pairs = 0;
        for (const auto& q : all) {
            long long prod = 1;
            for (int s : oracle::shape(q)) prod *= oracle::bell(s);
            pairs += prod;
        }
        CHECK(comparable == pairs);
    }
}

TEST_CASE("merger signatures of every comparable pair for n <= 6") {
    for (int n = 1; n <= 6; ++n) {
        const auto all = oracle::set_partitions(n);
        for (const auto& f : all)
            for (const auto& c : all) {
                if (!oracle::refines(f, c)) continue;
                const auto sig = merger_signature(from_oracle(f), from_oracle(c));
                // group sizes: fine blocks per coarse block, kept when >= 2
                std::map<int, std::set<int>> inside;
                for (std::size_t e = 0; e < f.size(); ++e) inside[c[e]].insert(f[e]);
                std::vector<int> groups;
                int singles = 0;
                for (const auto& [label, fines] : inside) {
                    if (fines.size() >= 2) groups.push_back(static_cast<int>(fines.size()));
                    else ++singles;
                }
                std::sort(groups.rbegin(), groups.rend());
                REQUIRE(sig.b == oracle::block_count(f));
                REQUIRE(sig.group_sizes == groups);
                REQUIRE(sig.s == singles);
                REQUIRE(sig.blocks_after() == oracle::block_count(c));
            }
    }
}

TEST_CASE("signature multiplicities and enumeration") {
    const std::vector<std::size_t> integer_partitions{0, 1, 2, 3, 5, 7, 11, 15};
    for (int b = 1; b <= 7; ++b) {
        const auto sigs = enumerate_signatures(b);
        CHECK(sigs.size() == integer_partitions[static_cast<std::size_t>(b)]);
        CHECK_FALSE(sigs.front().has_merge());
        CHECK(sigs.front().s == b);
        double total = 0.0;
        for (const auto& s : sigs) {
            CHECK(s.b == b);
            const double m = signature_multiplicity(s);
            CHECK(m == static_cast<double>(oracle::shape_count(b, s.group_sizes, s.s)));
            total += m;
        }
        CHECK(total == static_cast<double>(oracle::bell(b)));
    }
}

TEST_CASE("merge then signature round trip on 1000 random cases") {
    Rng rng(20240611);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(10));
        std::vector<int> labels(static_cast<std::size_t>(n));
        int next = 0;
        for (auto& l : labels) {
            l = static_cast<int>(rng.below(static_cast<std::uint64_t>(next + 1)));
            if (l == next) ++next;
        }
        const auto p = Partition::from_labels(labels);
        const auto blocks = p.block_count();
        // random grouping of the blocks
        std::vector<std::size_t> colour(blocks);
        for (auto& c : colour) c = rng.below(blocks);
        std::map<std::size_t, std::vector<std::size_t>> by_colour;
        for (std::size_t i = 0; i < blocks; ++i) by_colour[colour[i]].push_back(i);
        std::vector<std::vector<std::size_t>> groups;
        std::vector<int> sizes;
        int untouched = 0;
        for (auto& [c, g] : by_colour) {
            if (g.size() >= 2) {
                sizes.push_back(static_cast<int>(g.size()));
                groups.push_back(g);
            } else {
                ++untouched;
            }
        }
        const auto q = merge_blocks(p, groups);
        REQUIRE(is_refinement(p, q));
        REQUIRE(q.size() == p.size());
        const auto sig = merger_signature(p, q);
        std::sort(sizes.rbegin(), sizes.rend());
        REQUIRE(sig == MergerSignature::make(sizes, untouched));
        REQUIRE(q.block_count() == static_cast<std::size_t>(sig.blocks_after()));
        REQUIRE(Partition::parse(q.to_string()) == q);
    }
}

TEST_CASE("partition path") {
    PartitionPath path(0.0, Partition::singletons(3));
    path.append(1.5, Partition::parse("{1,2}|{3}"));
    CHECK_THROWS_AS(path.append(1.0, Partition::parse("{1,2,3}")), std::invalid_argument);
    CHECK_THROWS_AS(path.append(2.0, Partition::parse("{1,3}|{2}")), std::invalid_argument);
    path.append(2.0, Partition::parse("{1,2,3}"));
    CHECK(path.length() == 3);
    CHECK(path.at(0.7) == Partition::singletons(3));
    CHECK(path.at(1.5).block_count() == 2);
    CHECK(path.at(10.0).block_count() == 1);
}

}

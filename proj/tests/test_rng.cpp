#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "leja/rng.hpp"

using namespace leja;

TEST_CASE("substreams are deterministic given the key") {
    const SplitStream stream(42);
    Substream a = stream.at(3, 7, Purpose::candidate);
    Substream b = stream.at(3, 7, Purpose::candidate);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct keys give distinct streams") {
    const SplitStream stream(42);
    std::set<std::uint64_t> firsts;
    for (std::uint64_t n = 0; n < 50; ++n)
        for (std::uint64_t k = 0; k < 50; ++k)
            for (auto p : {Purpose::init, Purpose::candidate, Purpose::accept, Purpose::retry})
                firsts.insert(stream.at(n, k, p).next_u64());
    CHECK(firsts.size() == 50u * 50u * 4u);

    const SplitStream other(43);
    CHECK(stream.at(1, 1, Purpose::candidate).next_u64() !=
          other.at(1, 1, Purpose::candidate).next_u64());
}

TEST_CASE("next_unit lands in [0,1) and is uniform") {
    const SplitStream stream(2024);
    const int bins = 16;
    std::vector<int> counts(bins, 0);
    const int total = 100000;
    for (int i = 0; i < total; ++i) {
        Substream s = stream.at(static_cast<std::uint64_t>(i), 0, Purpose::init);
        const double u = s.next_unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        ++counts[static_cast<int>(u * bins)];
    }
    // chi-square against uniform, 15 dof, significance 1e-3
    const double expected = static_cast<double>(total) / bins;
    double chi2 = 0.0;
    for (int c : counts) {
        const double d = c - expected;
        chi2 += d * d / expected;
    }
    CHECK(chi2 < 37.697);
}

TEST_CASE("sequential draws within one substream are uniform") {
    const SplitStream stream(7);
    Substream s = stream.at(0, 0, Purpose::init);
    const int bins = 16;
    std::vector<int> counts(bins, 0);
    const int total = 100000;
    for (int i = 0; i < total; ++i) ++counts[static_cast<int>(s.next_unit() * bins)];
    const double expected = static_cast<double>(total) / bins;
    double chi2 = 0.0;
    for (int c : counts) {
        const double d = c - expected;
        chi2 += d * d / expected;
    }
    CHECK(chi2 < 37.697);
}

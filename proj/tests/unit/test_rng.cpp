#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "maqd/rng.hpp"

using maqd::RngStream;

TEST_SUITE("rng") {

TEST_CASE("identical seeds give identical sequences") {
    RngStream a(42);
    RngStream b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge") {
    RngStream a(1);
    RngStream b(2);
    int equal = 0;
    for (int i = 0; i < 100; ++i)
        if (a.next_u64() == b.next_u64()) ++equal;
    CHECK(equal < 5);
}

TEST_CASE("uniform01 stays in [0, 1)") {
    RngStream rng(7);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("fork is pure and keyed") {
    const RngStream root(9);
    RngStream a = root.fork(3);
    RngStream b = root.fork(3);
    RngStream c = root.fork(4);
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() != c.next_u64());

    // forking must not advance the parent
    RngStream r1(9);
    RngStream r2(9);
    (void)r1.fork(0);
    CHECK(r1.next_u64() == r2.next_u64());
}

TEST_CASE("forked children look independent of the parent sequence") {
    const RngStream root(11);
    std::set<std::uint64_t> firsts;
    for (std::uint64_t k = 0; k < 1000; ++k) firsts.insert(root.fork(k).next_u64());
    CHECK(firsts.size() == 1000);
}

TEST_CASE("normal has roughly standard moments") {
    RngStream rng(13);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sum_sq += z * z;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::fabs(mean) < 0.02);
    CHECK(std::fabs(var - 1.0) < 0.03);
}

TEST_CASE("next_below covers the range without bias") {
    RngStream rng(17);
    std::vector<int> counts(10, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++counts[rng.next_below(10)];
    for (int c : counts) {
        CHECK(c > n / 10 - 600);
        CHECK(c < n / 10 + 600);
    }
}

}  // TEST_SUITE

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dipgp/fock/space.hpp"

using namespace dipgp::fock;

namespace {
long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}
} // namespace

TEST_CASE("dimension matches the stars-and-bars count") {
    for (int m : {1, 2, 3, 4, 5})
        for (int cap : {0, 1, 3, 5}) {
            FockSpace s(m, cap);
            long expect = 0;
            for (int k = 0; k <= cap; ++k) expect += binom(k + m - 1, m - 1);
            CHECK(static_cast<long>(s.dim()) == expect);
        }
}

TEST_CASE("index maps are mutually inverse and sectors are contiguous") {
    FockSpace s(4, 5);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        CHECK(s.index(s.occ(i)) == i);
        int t = 0;
        for (int n : s.occ(i)) t += n;
        CHECK(t == s.total(i));
        CHECK(i >= s.sector_begin(t));
        CHECK(i < s.sector_end(t));
    }
    CHECK(s.sector_end(5) == s.dim());
    CHECK_THROWS_AS(s.index({9, 9, 9, 9}), dipgp::UsageError);
    CHECK_THROWS_AS(s.index({1, 1}), dipgp::UsageError);
}

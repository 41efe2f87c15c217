#include <gtest/gtest.h>

#include "stda/initspec.hpp"
#include "stda/render.hpp"

using namespace stda;

namespace {

SpacetimeGrid sample_grid(int p) {
    SpacetimeGrid g(FieldPrime(p), -3, 4, -2, 5);
    int v = 0;
    for (long long n = g.n0(); n <= g.n1(); ++n) {
        for (long long m = g.m0(); m <= g.m1(); ++m) {
            g.set(m, n, static_cast<Fp>(v++ % p));
        }
    }
    return g;
}

} // namespace

TEST(Render, PbmRoundTripExact) {
    SpacetimeGrid g = sample_grid(2);
    std::string text = render_pbm(g);
    EXPECT_EQ(text.substr(0, 3), "P1\n");
    SpacetimeGrid back = parse_pbm(text);
    EXPECT_EQ(back.m0(), g.m0());
    EXPECT_EQ(back.n1(), g.n1());
    EXPECT_EQ(back.cells(), g.cells());
}

TEST(Render, PgmRoundTripExactForAllPrimes) {
    for (int p : {3, 5, 7, 11, 97}) {
        SpacetimeGrid g = sample_grid(p);
        std::string text = render_pgm(g);
        EXPECT_EQ(text.substr(0, 3), "P2\n");
        SpacetimeGrid back = parse_pgm(text, p);
        EXPECT_EQ(back.cells(), g.cells()) << "p=" << p;
    }
}

TEST(Render, GrayLevelsInvertExactly) {
    for (int p = 2; p <= 97; ++p) {
        if (!is_prime(p)) continue;
        for (int v = 0; v < p; ++v) {
            int gray = 255 * (p - 1 - v) / (p - 1);
            long long back = p - 1 - (static_cast<long long>(gray) * (p - 1) + 127) / 255;
            EXPECT_EQ(back, v) << "p=" << p;
        }
    }
}

TEST(Render, PbmRequiresBinaryField) {
    SpacetimeGrid g = sample_grid(3);
    EXPECT_THROW(render_pbm(g), UsageError);
}

TEST(Render, TopRowIsHighestN) {
    SpacetimeGrid g(FieldPrime(2), 0, 1, 0, 1);
    g.set(0, 1, 1);
    g.set(1, 1, 1);
    std::string text = render_pbm(g);
    // Header, then the n = 1 row first.
    auto payload = text.substr(text.rfind('\n', text.size() - 2 - 3));
    size_t first_row = text.find("11");
    size_t second_row = text.find("00");
    EXPECT_NE(first_row, std::string::npos);
    EXPECT_NE(second_row, std::string::npos);
    EXPECT_LT(first_row, second_row);
    (void)payload;
}

TEST(Render, DeterministicBytes) {
    SpacetimeGrid g = sample_grid(3);
    EXPECT_EQ(render_pgm(g), render_pgm(g));
}

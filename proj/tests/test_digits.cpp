#include <gtest/gtest.h>

#include "stda/digits.hpp"

using namespace stda;

TEST(EncodeBase, NegabinaryPaperValues) {
    DigitString ten = encode_base(10, -2);
    EXPECT_EQ(ten.digits, (std::vector<uint8_t>{0, 1, 1, 1, 1}));
    EXPECT_EQ(ten.msd_string(), "11110");

    DigitString minus9 = encode_base(-9, -2);
    EXPECT_EQ(minus9.digits, (std::vector<uint8_t>{1, 1, 0, 1}));
    EXPECT_EQ(minus9.msd_string(), "1011");
}

TEST(EncodeBase, ZeroIsEmpty) {
    EXPECT_TRUE(encode_base(0, 2).digits.empty());
    EXPECT_TRUE(encode_base(0, -3).digits.empty());
    EXPECT_EQ(decode_base(encode_base(0, 5)), 0);
}

TEST(EncodeBase, NegativeNeedsNegativeBase) {
    EXPECT_THROW(encode_base(-1, 2), UsageError);
    EXPECT_EQ(decode_base(encode_base(-1, -2)), -1);
}

TEST(DecodeBase, Simple) {
    DigitString d;
    d.base = -3;
    d.digits = {1};
    EXPECT_EQ(decode_base(d), 1);
    d.digits = {0, 1, 1, 1, 1};
    d.base = -2;
    EXPECT_EQ(decode_base(d), 10);
}

TEST(RoundTrip, SampledRange) {
    for (int p : {2, 3, 5}) {
        for (int base : {p, -p}) {
            for (long long m = -300; m <= 300; ++m) {
                if (base > 0 && m < 0) continue;
                EXPECT_EQ(decode_base(encode_base(m, base)), m) << m << " base " << base;
            }
            for (long long m = 999900; m <= 1000000; ++m) {
                EXPECT_EQ(decode_base(encode_base(m, base)), m);
                if (base < 0) EXPECT_EQ(decode_base(encode_base(-m, base)), -m);
            }
        }
    }
}

TEST(RoundTrip, MostSignificantDigitNonzero) {
    for (long long m = -200; m <= 200; ++m) {
        DigitString d = encode_base(m, -3);
        if (!d.digits.empty()) EXPECT_NE(d.digits.back(), 0);
    }
}

TEST(PairEncode, PadsShorterCoordinate) {
    auto pairs = pair_encode(2, 1, 2, 2);
    ASSERT_EQ(pairs.size(), 2u);
    EXPECT_EQ(pairs[0], (std::pair<uint8_t, uint8_t>{0, 1}));
    EXPECT_EQ(pairs[1], (std::pair<uint8_t, uint8_t>{1, 0}));

    EXPECT_TRUE(pair_encode(0, 0, 2, 2).empty());

    auto mixed = pair_encode(10, 3, -2, 2);
    std::vector<std::pair<uint8_t, uint8_t>> expected{{0, 1}, {1, 1}, {1, 0}, {1, 0}, {1, 0}};
    EXPECT_EQ(mixed, expected);
}

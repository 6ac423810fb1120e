#include <gtest/gtest.h>

#include "drfmds/gf.hpp"

using namespace drfmds;

namespace {

// Order of x in Z_p^*, by brute force. Independent check for the
// smallest-primitive-root convention.
unsigned mult_order_mod(unsigned x, unsigned p) {
    unsigned acc = x % p, ord = 1;
    while (acc != 1) {
        acc = acc * x % p;
        ++ord;
    }
    return ord;
}

}  // namespace

TEST(Field, Gf4GeneratorSatisfiesModulusRelation) {
    Field f = Field::gf2e(2);
    EXPECT_EQ(f.order(), 4u);
    Elem w = f.generator();
    // x^2 + x + 1 = 0, so w*w = w + 1
    EXPECT_EQ(f.mul(w, w), f.add(w, 1));
    EXPECT_EQ(f.id(), "gf2^2");
}

TEST(Field, Gf7HasSmallestPrimitiveRootThree) {
    // 2 has order 3 mod 7, 3 has order 6: the smallest primitive root is 3.
    EXPECT_EQ(mult_order_mod(2, 7), 3u);
    EXPECT_EQ(mult_order_mod(3, 7), 6u);
    Field f = Field::prime_field(7);
    EXPECT_EQ(f.generator(), 3);
    EXPECT_EQ(f.id(), "prime:7");
}

TEST(Field, CompositeCharacteristicRejected) {
    try {
        Field::make(FieldKind::Prime, 4, 1);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("NonPrimeCharacteristic"), std::string::npos);
    }
}

TEST(Field, UnsupportedShapesRejected) {
    EXPECT_THROW(Field::make(FieldKind::BinaryExtension, 3, 2), ValidationError);
    EXPECT_THROW(Field::make(FieldKind::BinaryExtension, 2, 0), ValidationError);
    EXPECT_THROW(Field::make(FieldKind::BinaryExtension, 2, 17), ValidationError);
    EXPECT_THROW(Field::make(FieldKind::Prime, 7, 2), ValidationError);
}

TEST(Field, ArithmeticExamples) {
    Field f4 = Field::gf2e(2);
    Elem w = f4.generator();
    EXPECT_EQ(f4.mul(w, w), f4.add(w, 1));

    Field f7 = Field::prime_field(7);
    EXPECT_EQ(f7.inv(2), 4);
    EXPECT_EQ(f7.mul(2, 4), 1);
    EXPECT_EQ(f7.sub(3, 5), 5);  // 3 - 5 = -2 = 5 mod 7
    EXPECT_EQ(f7.neg(3), 4);
}

TEST(Field, AdditiveInverseEverywhere) {
    for (const Field& f : {Field::gf2e(3), Field::prime_field(11)}) {
        for (unsigned x = 0; x < f.order(); ++x)
            EXPECT_EQ(f.add(Elem(x), f.neg(Elem(x))), 0) << f.id() << " x=" << x;
    }
}

TEST(Field, MultiplicativeInverseEverywhere) {
    for (const Field& f : {Field::gf2e(4), Field::gf2e(8), Field::prime_field(251)}) {
        for (unsigned x = 1; x < f.order(); ++x) {
            Elem e = Elem(x);
            EXPECT_EQ(f.mul(e, f.inv(e)), 1) << f.id() << " x=" << x;
            EXPECT_EQ(f.exp(f.log(e)), e) << f.id() << " x=" << x;
        }
    }
}

TEST(Field, LargestSupportedFields) {
    // full table sweep at the size limits
    for (const Field& f : {Field::gf2e(16), Field::prime_field(65521)}) {
        ASSERT_GE(f.order(), 65521u);
        unsigned bad = 0;
        for (unsigned x = 1; x < f.order(); ++x) {
            Elem e = Elem(x);
            if (f.mul(e, f.inv(e)) != 1 || f.exp(f.log(e)) != e) ++bad;
        }
        EXPECT_EQ(bad, 0u) << f.id();
    }
    EXPECT_THROW(Field::prime_field(65537), ValidationError);  // above the table limit
}

TEST(Field, CharacteristicTwoSelfCancellation) {
    for (unsigned e = 1; e <= 16; ++e) {
        Field f = Field::gf2e(e);
        // spot-check a spread of elements rather than all 2^16
        for (unsigned x = 0; x < f.order(); x += (f.order() / 37) + 1)
            EXPECT_EQ(f.add(Elem(x), Elem(x)), 0) << f.id();
        EXPECT_EQ(f.sub(3 % f.order(), 3 % f.order()), 0);
    }
}

TEST(Field, PowBasics) {
    Field f4 = Field::gf2e(2);
    Elem w = f4.generator();
    EXPECT_EQ(f4.pow(w, 3), 1);  // multiplicative group of order 3

    Field f16 = Field::gf2e(4);
    Elem a = f16.pow(f16.generator(), (16 - 1) / 3);
    EXPECT_EQ(f16.pow(a, 3), 1);
    EXPECT_NE(a, 1);

    for (unsigned x = 1; x < 16; ++x) EXPECT_EQ(f16.pow(Elem(x), 0), 1);
    EXPECT_EQ(f16.pow(0, 0), 1);
    EXPECT_EQ(f16.pow(0, 5), 0);
    EXPECT_THROW(f16.pow(0, -1), ValidationError);
    EXPECT_EQ(f16.pow(f16.generator(), -1), f16.inv(f16.generator()));
    EXPECT_EQ(f16.pow(f16.generator(), 15 + 7), f16.pow(f16.generator(), 7));
}

TEST(Field, DivisionByZeroRejected) {
    Field f = Field::gf2e(4);
    EXPECT_THROW(f.inv(0), ValidationError);
    EXPECT_THROW(f.div(5, 0), ValidationError);
    EXPECT_THROW(f.log(0), ValidationError);
}

TEST(Field, IdentifierRoundtrip) {
    EXPECT_EQ(Field::parse("gf2^8").id(), "gf2^8");
    EXPECT_EQ(Field::parse("prime:17").id(), "prime:17");
    EXPECT_EQ(Field::parse("gf2^8").modulus(), 0x11Du);
    EXPECT_THROW(Field::parse("gf3^2"), ValidationError);
    EXPECT_THROW(Field::parse("prime:"), ValidationError);
    EXPECT_THROW(Field::parse("prime:15"), ValidationError);
    EXPECT_THROW(Field::parse(""), ValidationError);
}

TEST(Field, AllBuiltinPolynomialsBuild) {
    // Table construction verifies primitivity internally; a non-primitive
    // entry would throw logic_error here.
    for (unsigned e = 1; e <= 16; ++e) {
        Field f = Field::gf2e(e);
        EXPECT_EQ(f.order(), 1u << e);
        EXPECT_EQ(f.pow(f.generator(), long(f.order()) - 1), 1);
    }
}

TEST(CubicNonvanishing, Gf16Examples) {
    Field f = Field::gf2e(4);
    EXPECT_TRUE(cubic_nonvanishing(f, 0));  // 1 + 1 + 1 = 1 in char 2
    for (unsigned i = 0; i < 5; ++i) EXPECT_TRUE(cubic_nonvanishing(f, i)) << i;
    EXPECT_FALSE(cubic_nonvanishing(f, 5));  // w^5 is a primitive cube root of unity
}

TEST(CubicNonvanishing, SharpAtOneThirdOfGroupOrder) {
    for (unsigned e : {2u, 4u, 6u, 8u}) {
        Field f = Field::gf2e(e);
        const unsigned bound = (f.order() - 1) / 3;
        for (unsigned i = 0; i < bound; ++i)
            EXPECT_TRUE(cubic_nonvanishing(f, i)) << f.id() << " i=" << i;
        EXPECT_FALSE(cubic_nonvanishing(f, bound)) << f.id();
    }
}

TEST(CubicNonvanishing, RequiresOrderFourPower) {
    Field f8 = Field::gf2e(3);
    EXPECT_THROW(cubic_nonvanishing(f8, 0), ValidationError);
    Field f7 = Field::prime_field(7);
    EXPECT_THROW(cubic_nonvanishing(f7, 0), ValidationError);
}

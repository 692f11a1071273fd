#include <gtest/gtest.h>

#include <algorithm>

#include "bsloc/error.hpp"
#include "bsloc/product.hpp"
#include "fixtures.hpp"

using namespace bsloc;
namespace fx = bsloc::fixtures;

namespace {

ProductModel power(const Piece& p, int n) {
  ProductModel m;
  for (int i = 0; i < n; ++i) m.factors.push_back(factor_from_piece(p));
  return m;
}

// Oracle: integer points of the product of the lift ranges.
long long enumerate_product_fibers(const std::vector<long long>& degrees) {
  long long total = 1;
  for (long long n : degrees) {
    long long c = 0;
    for (long long k = -50; k <= 50; ++k)
      if (0.5 < k && k < n + 0.5) ++c;
    total *= c;
  }
  return total;
}

}  // namespace

TEST(Product, PowersOfBsPlus) {
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(product_index(power(fx::bs_plus(), n)), 1);
  EXPECT_EQ(product_index(power(fx::bs_minus(), 2)), 1);
  EXPECT_EQ(product_index(power(fx::bs_minus(), 3)), -1);
}

TEST(Product, ZeroFactor) {
  ProductModel m = power(fx::bs_plus(), 3);
  m.factors.push_back(factor_from_piece(fx::disk_minus()));
  EXPECT_EQ(product_index(m), 0);
}

TEST(Product, MultiplicativeAndOrderIndependent) {
  std::vector<Piece> ps{fx::bs_plus(), fx::bs_minus(), fx::disk_plus(), fx::pants_large(),
                        Piece::annulus(HolonomyProfile{{0.0, -0.5}, {1.0, 2.5}})};
  std::vector<int> order{0, 1, 2, 3, 4};
  long long expect = 1;
  for (const auto& p : ps) expect *= local_index(p);
  do {
    ProductModel m;
    for (int i : order) m.factors.push_back(factor_from_piece(ps[static_cast<std::size_t>(i)]));
    EXPECT_EQ(product_index(m), expect);
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST(Product, ScopeFlag) {
  ProductModel m = power(fx::bs_plus(), 2);
  EXPECT_FALSE(outside_product_scope(m));
  m.factors.push_back(factor_from_piece(fx::pants_small()));
  EXPECT_TRUE(outside_product_scope(m));
}

TEST(Product, Errors) {
  ProductModel m;
  EXPECT_THROW(product_index(m), Error);
  m.factors.push_back({"cyl", FactorKind::Cylinder, std::nullopt});
  try {
    product_index(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnresolvedFactor);
  }
}

TEST(Product, FiberCountMatchesEnumeration) {
  for (long long a = 1; a <= 4; ++a)
    for (long long b = 1; b <= 4; ++b) {
      BsFiberCount c = count_bs_fibers({fx::torus(a), fx::torus(b)});
      EXPECT_EQ(c.count, enumerate_product_fibers({a, b}));
      EXPECT_EQ(c.count, c.rr_product);
    }
  EXPECT_EQ(count_bs_fibers({fx::torus(2), fx::torus(2)}).count, 4);
  EXPECT_EQ(count_bs_fibers({fx::torus(3)}).count, 3);
}

TEST(Product, FiberCountEqualsProductIndex) {
  for (long long a = 1; a <= 3; ++a) {
    ProductModel m;
    m.factors.push_back(factor_from_assembly(fx::torus(a)));
    m.factors.push_back(factor_from_assembly(fx::torus(2)));
    EXPECT_EQ(product_index(m), count_bs_fibers({fx::torus(a), fx::torus(2)}).count);
  }
}

TEST(Product, SingularFiber) {
  try {
    count_bs_fibers({fx::torus(2), fx::sphere()});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularFiberPresent);
  }
}

TEST(Product, NegativeDegreeMismatch) {
  SurfaceAssembly a;
  a.pieces.push_back(Piece::annulus(HolonomyProfile{{0.0, 2.5}, {2.0, 0.5}}));
  a.gluings.push_back({{0, 0}, {0, 1}});
  try {
    count_bs_fibers({a});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CountMismatch);
  }
}

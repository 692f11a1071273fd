#include <gtest/gtest.h>

#include <set>

#include "bsloc/assembly_json.hpp"
#include "bsloc/fuzz.hpp"

using namespace bsloc;

TEST(Fuzz, GeneratedAssembliesAreValid) {
  std::set<long long> genera;
  std::set<int> kinds;
  for (std::uint64_t s = 1; s <= 400; ++s) {
    int size = 1 + static_cast<int>(s % 12);
    SurfaceAssembly a = generate_random_assembly(s, size);
    ASSERT_NO_THROW(a.validate()) << s;
    EXPECT_TRUE(a.is_closed());
    EXPECT_EQ(a.components().size(), 1u);
    EXPECT_GE(static_cast<int>(a.pieces.size()), std::min(size, 1));
    genera.insert(genus(a));
    for (const auto& p : a.pieces) kinds.insert(static_cast<int>(p.kind()));
    EXPECT_TRUE(rr_cross_check(a).pass) << s;
  }
  EXPECT_EQ(kinds.size(), 3u);
  EXPECT_GE(genera.size(), 3u);
}

TEST(Fuzz, SameSeedSameAssembly) {
  for (std::uint64_t s : {1ULL, 7ULL, 123456789ULL}) {
    EXPECT_EQ(assembly_to_json(generate_random_assembly(s, 10)).dump(),
              assembly_to_json(generate_random_assembly(s, 10)).dump());
  }
  EXPECT_NE(assembly_to_json(generate_random_assembly(1, 10)).dump(),
            assembly_to_json(generate_random_assembly(2, 10)).dump());
  EXPECT_EQ(case_seed(7, 3), case_seed(7, 3));
  EXPECT_NE(case_seed(7, 3), case_seed(7, 4));
}

TEST(Fuzz, SmallSizes) {
  SurfaceAssembly one = generate_random_assembly(1, 1);
  EXPECT_EQ(one.pieces.size(), 1u);
  EXPECT_EQ(genus(one), 1);
  SurfaceAssembly two = generate_random_assembly(1, 2);
  EXPECT_NO_THROW(two.validate());
  EXPECT_TRUE(rr_cross_check(two).pass);
}

TEST(Fuzz, ParallelRunMatchesSerial) {
  FuzzOptions opt;
  opt.count = 60;
  opt.seed = 7;
  opt.spectral_samples = 3;
  FuzzSummary a = run_fuzz_serial(opt), b = run_fuzz(opt);
  ASSERT_EQ(a.cases.size(), b.cases.size());
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    EXPECT_EQ(a.cases[i].seed, b.cases[i].seed);
    EXPECT_EQ(a.cases[i].check.rr, b.cases[i].check.rr);
    EXPECT_EQ(a.cases[i].annuli_mode_agree, b.cases[i].annuli_mode_agree);
    EXPECT_EQ(a.cases[i].spectral_agree, b.cases[i].spectral_agree);
  }
  EXPECT_EQ(a.failures(), 0);
  int spectral = 0;
  for (const auto& c : a.cases) spectral += c.spectral_checked;
  EXPECT_EQ(spectral, 3);
}

TEST(Fuzz, SpectralAnnulusIndex) {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    HolonomyProfile p = generate_random_profile(case_seed(3, s));
    auto k = spectral_annulus_index(p);
    ASSERT_TRUE(k.has_value());
    EXPECT_EQ(*k, local_index(Piece::annulus(p)));
  }
}

#include <gtest/gtest.h>

#include "kahlerlab/error.hpp"
#include "kahlerlab/multiindex.hpp"

using namespace kl;

namespace {

// Sign by counting adjacent swaps of a bubble sort.
int bubble_sign(std::vector<int> v) {
  int swaps = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j + 1 < v.size() - i; ++j)
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        ++swaps;
      }
  return swaps % 2 == 0 ? 1 : -1;
}

int bubble_perm_sign(const MultiIndex& a) {
  std::vector<int> seq = a.entries();
  const MultiIndex c = a.complement();
  for (int x : c.entries()) seq.push_back(x);
  return bubble_sign(seq);
}

int parity(long e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

TEST(MultiIndex, RejectsInvalidEntries) {
  EXPECT_THROW(MultiIndex(3, {2, 1}), InvalidArgument);
  EXPECT_THROW(MultiIndex(3, {1, 1}), InvalidArgument);
  EXPECT_THROW(MultiIndex(3, {0}), InvalidArgument);
  EXPECT_THROW(MultiIndex(3, {4}), InvalidArgument);
}

TEST(MultiIndex, Complement) {
  EXPECT_EQ(MultiIndex(2, {1}).complement(), MultiIndex(2, {2}));
  EXPECT_EQ(MultiIndex(3, {}).complement(), MultiIndex(3, {1, 2, 3}));
  EXPECT_EQ(MultiIndex(4, {2, 4}).complement(), MultiIndex(4, {1, 3}));
  for (int n = 1; n <= 5; ++n)
    for (const MultiIndex& a : all_multi_indices(n)) {
      const MultiIndex c = a.complement();
      EXPECT_EQ(c.size(), n - a.size());
      for (int x : c.entries()) EXPECT_FALSE(a.contains(x));
      EXPECT_EQ(c.complement(), a);
    }
}

TEST(MultiIndex, PermSignExamples) {
  EXPECT_EQ(perm_sign(MultiIndex(3, {2})), -1);
  EXPECT_EQ(perm_sign(MultiIndex(2, {1, 2})), 1);
  EXPECT_EQ(perm_sign(MultiIndex(4, {2, 4})), -1);
}

TEST(MultiIndex, PermSignMatchesBubbleSort) {
  for (int n = 1; n <= 6; ++n)
    for (const MultiIndex& a : all_multi_indices(n)) EXPECT_EQ(perm_sign(a), bubble_perm_sign(a)) << a.str();
}

TEST(MultiIndex, EpsilonExamples) {
  EXPECT_EQ(epsilon(MultiIndex(1, {1}), MultiIndex(1, {1})), 1);
  EXPECT_EQ(epsilon(MultiIndex(2, {1, 2}), MultiIndex(2, {1, 2})), -1);
  EXPECT_EQ(epsilon(MultiIndex(1, {}), MultiIndex(1, {})), -1);
  EXPECT_THROW(epsilon(MultiIndex(1, {1}), MultiIndex(2, {1})), InvalidArgument);
}

TEST(MultiIndex, EpsilonMatchesClosedForm) {
  for (int n = 1; n <= 4; ++n)
    for (const MultiIndex& a : all_multi_indices(n))
      for (const MultiIndex& b : all_multi_indices(n)) {
        const long e = static_cast<long>(n) * a.size() + n * (n + 1) / 2;
        EXPECT_EQ(epsilon(a, b), parity(e) * bubble_perm_sign(a) * bubble_perm_sign(b));
      }
}

TEST(MultiIndex, IdentitiesHoldByBruteForce) {
  for (int n = 1; n <= 4; ++n) {
    const auto all = all_multi_indices(n);
    for (const MultiIndex& a : all) {
      const int p = a.size();
      const MultiIndex ac = a.complement();
      std::vector<int> rev = ac.entries();
      for (int x : a.entries()) rev.push_back(x);
      EXPECT_EQ(bubble_sign(rev), parity(p * (n - p)) * bubble_perm_sign(a));
      for (const MultiIndex& b : all) {
        const int q = b.size();
        EXPECT_EQ(epsilon(b, a), parity(n * (p + q)) * epsilon(a, b));
        EXPECT_EQ(epsilon(a, b) * epsilon(b.complement(), a.complement()), parity(n + p + q));
      }
    }
  }
}

TEST(MultiIndex, VerifySignIdentities) {
  for (int n = 1; n <= 6; ++n) {
    const SignIdentityReport r = verify_sign_identities(n);
    EXPECT_TRUE(r.all_pass()) << "n=" << n;
    ASSERT_EQ(r.checks.size(), 3u);
    EXPECT_EQ(r.checks[0].checked, 1L << n);
    EXPECT_EQ(r.checks[1].checked, (1L << n) * (1L << n));
  }
  EXPECT_THROW(verify_sign_identities(0), InvalidArgument);
  EXPECT_THROW(verify_sign_identities(7), InvalidArgument);
}

TEST(MultiIndex, Enumeration) {
  EXPECT_EQ(multi_indices(4, 2).size(), 6u);
  const auto all = all_multi_indices(3);
  ASSERT_EQ(all.size(), 8u);
  EXPECT_TRUE(all.front().empty());
  EXPECT_EQ(all.back(), MultiIndex(3, {1, 2, 3}));
  EXPECT_EQ(sort_sign({2, 1, 3}), -1);
  EXPECT_EQ(sort_sign({1, 1}), 0);
}

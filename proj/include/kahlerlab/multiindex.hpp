#pragma once

#include <compare>
#include <string>
#include <vector>

namespace kl {

// Strictly increasing tuple of coframe labels drawn from 1..n.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(int n, std::vector<int> entries);

  int n() const { return n_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  const std::vector<int>& entries() const { return entries_; }
  int operator[](int i) const { return entries_[i]; }
  bool contains(int label) const;

  MultiIndex complement() const;
  std::string str() const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  int n_ = 0;
  std::vector<int> entries_;
};

inline MultiIndex complement(const MultiIndex& a) { return a.complement(); }

// Sign of the permutation sorting `seq`; 0 when a label repeats.
int sort_sign(const std::vector<int>& seq);

// sigma^{AA'}: sign of the permutation taking (1..n) to the concatenation A A'.
int perm_sign(const MultiIndex& a);

// epsilon^{AB} = (-1)^{np + n(n+1)/2} sigma^{AA'} sigma^{BB'} with p = |A|.
int epsilon(const MultiIndex& a, const MultiIndex& b);

std::vector<MultiIndex> multi_indices(int n, int p);
// All 2^n indices, ordered by length and then lexicographically.
std::vector<MultiIndex> all_multi_indices(int n);

struct IdentityCheck {
  std::string name;
  long checked = 0;
  long failures = 0;
  std::vector<std::string> counterexamples;  // first few only
  bool pass() const { return failures == 0; }
};

struct SignIdentityReport {
  int n = 0;
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
};

// Exhaustive check of the three permutation/epsilon identities, 1 <= n <= 6.
SignIdentityReport verify_sign_identities(int n);

}  // namespace kl

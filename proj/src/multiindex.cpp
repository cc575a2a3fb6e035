#include "kahlerlab/multiindex.hpp"

#include <algorithm>
#include <sstream>

#include "kahlerlab/error.hpp"

namespace kl {

MultiIndex::MultiIndex(int n, std::vector<int> entries) : n_(n), entries_(std::move(entries)) {
  if (n < 0) throw InvalidArgument("MultiIndex: negative dimension");
  if (static_cast<int>(entries_.size()) > n) throw InvalidArgument("MultiIndex: longer than n");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] < 1 || entries_[i] > n)
      throw InvalidArgument("MultiIndex: entry " + std::to_string(entries_[i]) + " outside 1.." +
                            std::to_string(n));
    if (i > 0 && entries_[i] <= entries_[i - 1])
      throw InvalidArgument("MultiIndex: entries must be strictly increasing");
  }
}

bool MultiIndex::contains(int label) const {
  return std::binary_search(entries_.begin(), entries_.end(), label);
}

MultiIndex MultiIndex::complement() const {
  std::vector<int> out;
  out.reserve(n_ - size());
  for (int a = 1; a <= n_; ++a)
    if (!contains(a)) out.push_back(a);
  return MultiIndex(n_, std::move(out));
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) os << (i ? "," : "") << entries_[i];
  os << ')';
  return os.str();
}

int sort_sign(const std::vector<int>& seq) {
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) return 0;
      if (seq[i] > seq[j]) ++inversions;
    }
  return (inversions % 2) ? -1 : 1;
}

int perm_sign(const MultiIndex& a) {
  std::vector<int> seq = a.entries();
  const std::vector<int> c = a.complement().entries();
  seq.insert(seq.end(), c.begin(), c.end());
  return sort_sign(seq);
}

namespace {
int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }
}  // namespace

int epsilon(const MultiIndex& a, const MultiIndex& b) {
  if (a.n() != b.n()) throw InvalidArgument("epsilon: multi-indices of different dimension");
  const long n = a.n();
  const long p = a.size();
  return parity_sign(n * p + n * (n + 1) / 2) * perm_sign(a) * perm_sign(b);
}

std::vector<MultiIndex> multi_indices(int n, int p) {
  if (p < 0 || p > n) return {};
  std::vector<MultiIndex> out;
  std::vector<int> cur(p);
  for (int i = 0; i < p; ++i) cur[i] = i + 1;
  while (true) {
    out.emplace_back(n, cur);
    int i = p - 1;
    while (i >= 0 && cur[i] == n - p + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < p; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<MultiIndex> all_multi_indices(int n) {
  std::vector<MultiIndex> out;
  for (int p = 0; p <= n; ++p) {
    auto part = multi_indices(n, p);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

bool SignIdentityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass(); });
}

SignIdentityReport verify_sign_identities(int n) {
  if (n < 1 || n > 6) throw InvalidArgument("verify_sign_identities: n must be in 1..6");
  SignIdentityReport rep;
  rep.n = n;
  IdentityCheck sigma, eps_swap, eps_dual;
  sigma.name = "sigma_complement_swap";
  eps_swap.name = "epsilon_swap";
  eps_dual.name = "epsilon_dual_product";
  const auto record = [](IdentityCheck& c, bool ok, const std::string& what) {
    ++c.checked;
    if (!ok) {
      ++c.failures;
      if (c.counterexamples.size() < 8) c.counterexamples.push_back(what);
    }
  };

  const auto all = all_multi_indices(n);
  for (const auto& a : all) {
    const int p = a.size();
    const MultiIndex ac = a.complement();
    record(sigma, perm_sign(ac) == parity_sign(long(p) * (n - p)) * perm_sign(a), "A=" + a.str());
    for (const auto& b : all) {
      const int q = b.size();
      const std::string tag = "A=" + a.str() + " B=" + b.str();
      record(eps_swap, epsilon(b, a) == parity_sign(long(n) * (p + q)) * epsilon(a, b), tag);
      record(eps_dual, epsilon(a, b) * epsilon(b.complement(), ac) == parity_sign(n + p + q), tag);
    }
  }
  rep.checks = {sigma, eps_swap, eps_dual};
  return rep;
}

}  // namespace kl

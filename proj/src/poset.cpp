#include "pregroup/poset.hpp"

#include <algorithm>
#include <stdexcept>

namespace pregroup {

Poset::Poset(std::vector<std::string> atoms,
             std::vector<std::pair<std::string, std::string>> edges) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  atoms_ = std::move(atoms);
  for (size_t i = 0; i < atoms_.size(); ++i) index_[atoms_[i]] = static_cast<int>(i);

  size_t n = atoms_.size();
  leq_.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (const auto& [a, b] : edges) {
    auto ia = index_.find(a);
    auto ib = index_.find(b);
    if (ia == index_.end()) throw std::out_of_range("order mentions undeclared atom: " + a);
    if (ib == index_.end()) throw std::out_of_range("order mentions undeclared atom: " + b);
    leq_[ia->second][ib->second] = true;
  }
  // Floyd-Warshall style transitive closure; atom sets stay small.
  for (size_t k = 0; k < n; ++k) {
    for (size_t i = 0; i < n; ++i) {
      if (!leq_[i][k]) continue;
      for (size_t j = 0; j < n; ++j) {
        if (leq_[k][j]) leq_[i][j] = true;
      }
    }
  }
  up_.resize(n);
  down_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (leq_[i][j]) up_[i].push_back(atoms_[j]);
      if (leq_[j][i]) down_[i].push_back(atoms_[j]);
    }
  }
}

int Poset::require(const std::string& a) const {
  auto it = index_.find(a);
  if (it == index_.end()) throw std::out_of_range("unknown atom: " + a);
  return it->second;
}

bool Poset::has_atom(const std::string& a) const { return index_.count(a) != 0; }

bool Poset::leq(const std::string& a, const std::string& b) const {
  return leq_[require(a)][require(b)];
}

const std::vector<std::string>& Poset::upward(const std::string& a) const {
  return up_[require(a)];
}

const std::vector<std::string>& Poset::downward(const std::string& a) const {
  return down_[require(a)];
}

}  // namespace pregroup

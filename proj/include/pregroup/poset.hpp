#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pregroup {

// Finite partial order on atoms, given by declared edges and closed under
// reflexivity and transitivity at construction time.  Lookups are O(1)
// after closure.  Equivalences (a <-> b) are represented as two edges.
class Poset {
 public:
  Poset() = default;
  // atoms: the full carrier set.  edges: declared a <= b pairs; both ends
  // must be declared atoms.
  Poset(std::vector<std::string> atoms,
        std::vector<std::pair<std::string, std::string>> edges);

  bool has_atom(const std::string& a) const;
  // Throws std::out_of_range for undeclared atoms.
  bool leq(const std::string& a, const std::string& b) const;

  // All b with a <= b, sorted, including a itself.
  const std::vector<std::string>& upward(const std::string& a) const;
  // All b with b <= a, sorted, including a itself.
  const std::vector<std::string>& downward(const std::string& a) const;

  const std::vector<std::string>& atoms() const { return atoms_; }

 private:
  std::vector<std::string> atoms_;  // sorted, unique
  std::map<std::string, int> index_;
  std::vector<std::vector<bool>> leq_;  // leq_[i][j] iff atom i <= atom j
  std::vector<std::vector<std::string>> up_;
  std::vector<std::vector<std::string>> down_;

  int require(const std::string& a) const;
};

}  // namespace pregroup

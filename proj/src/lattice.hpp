#ifndef IMCA_LATTICE_HPP
#define IMCA_LATTICE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace imca {

// Elements are dense indices into their lattice's element table; display
// names are metadata only.
using Elem = uint32_t;
inline constexpr Elem kNoElem = UINT32_MAX;

struct Violation {
  std::string law;
  std::vector<std::string> witness;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  void add(std::string law, std::vector<std::string> witness) {
    ok = false;
    violations.push_back(Violation{std::move(law), std::move(witness)});
  }
};

// An order candidate before completeness has been certified. `leq` is a
// row-major |A|x|A| truth table.
struct LatticeCandidate {
  std::vector<std::string> labels;
  std::vector<uint8_t> leq;

  uint32_t size() const { return static_cast<uint32_t>(labels.size()); }
  bool rel(Elem a, Elem b) const { return leq[static_cast<size_t>(a) * labels.size() + b] != 0; }
};

// Checks reflexivity, antisymmetry, transitivity and existence of all meets
// and joins. Subsets are swept exhaustively for |A| <= subset_bound;
// otherwise closure under binary meets/joins plus top/bottom is checked,
// which is equivalent for finite posets.
ValidationReport validate_lattice(const LatticeCandidate& cand, uint32_t subset_bound = 8);

// Reflexive-transitive closure of the given pairs; no validation.
LatticeCandidate close_order(std::vector<std::string> labels,
                             const std::vector<std::pair<std::string, std::string>>& pairs);

// A finite complete lattice with precomputed binary meet/join tables.
// Immutable after construction; safe to share across threads.
class Lattice {
public:
  Lattice() = default; // empty placeholder; assign from a factory before use

  // Throws Error{Validation} when the candidate fails validate_lattice.
  static Lattice from_candidate(const LatticeCandidate& cand);

  // Reflexive-transitive closure of `pairs` over `labels`, then validation.
  static Lattice from_order(std::vector<std::string> labels,
                            const std::vector<std::pair<std::string, std::string>>& pairs);

  // 0 < 1 < ... < n-1, labelled by decimal index.
  static Lattice chain(uint32_t n);

  // Subsets of a base set of size `base`, ordered by inclusion. Element id
  // is the subset bitmask; labels look like "{}", "{a}", "{a,b}".
  static Lattice powerset(uint32_t base);

  uint32_t size() const { return n_; }
  bool leq(Elem a, Elem b) const { return leq_[static_cast<size_t>(a) * n_ + b] != 0; }
  Elem top() const { return top_; }
  Elem bottom() const { return bottom_; }

  Elem meet2(Elem a, Elem b) const { return meet_[static_cast<size_t>(a) * n_ + b]; }
  Elem join2(Elem a, Elem b) const { return join_[static_cast<size_t>(a) * n_ + b]; }

  // Greatest lower bound of a subset; meet of the empty set is top.
  Elem meet(std::span<const Elem> subset) const;
  // Least upper bound; join of the empty set is bottom.
  Elem join(std::span<const Elem> subset) const;

  const std::string& label(Elem a) const { return labels_[a]; }
  // kNoElem when no element carries this label.
  Elem find(std::string_view label) const;

  LatticeCandidate to_candidate() const;

private:
  void build_tables();
  void check_elem(Elem a, const char* what) const;

  uint32_t n_ = 0;
  std::vector<std::string> labels_;
  std::vector<uint8_t> leq_;
  std::vector<Elem> meet_;
  std::vector<Elem> join_;
  Elem top_ = 0;
  Elem bottom_ = 0;
};

} // namespace imca

#endif

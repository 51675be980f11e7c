#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "narayana/bigint.hpp"

namespace narayana {

/// An ordered list of positive parts. `colors` runs parallel to `parts`
/// (1-based colour label) and matters only for constraints that admit a
/// part value with multiplicity > 1.
struct Composition {
  std::vector<int> parts;
  std::vector<int> colors;

  Composition() = default;
  explicit Composition(std::vector<int> p);
  Composition(std::vector<int> p, std::vector<int> c);

  int total() const;
  bool empty() const { return parts.empty(); }
  bool colored() const;
  std::string to_string() const;  // "3+1+4", colours as "1#2"

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition&, const Composition&) = default;
};

/// Admissible-part rule for compositions.
class PartConstraint {
 public:
  enum class Kind { finite_set, residue_set, at_least };

  static PartConstraint finite_set(std::map<int, int> multiplicities);
  static PartConstraint residue_set(int modulus, std::set<int> residues,
                                    std::set<int> excluded = {});
  static PartConstraint at_least(int threshold);

  /// Mini-syntax: `set:1,3`, `set:1x2`, `mod:3:1`, `mod:3:1,2`, `min:3`,
  /// with an optional `!v,w` suffix listing excluded part values.
  static PartConstraint parse(std::string_view text);

  Kind kind() const { return kind_; }
  /// Number of colours available for `part` (0 when not admissible).
  int multiplicity(int part) const;
  std::string to_string() const;

 private:
  PartConstraint() = default;

  Kind kind_ = Kind::at_least;
  std::map<int, int> set_;
  int modulus_ = 1;
  std::set<int> residues_;
  int threshold_ = 1;
  std::set<int> excluded_;
};

/// Parts 1 or q; when q = 1 the part 1 comes in two colours.
PartConstraint one_or_q(int q);
/// Parts congruent to `residue` mod q.
PartConstraint residue_mod(int q, int residue);

/// Weighted number of compositions of n (1 for n = 0).
BigInt count_compositions(int n, const PartConstraint& c);

inline constexpr int kDefaultEnumerationBound = 40;

/// Every admissible composition of n, each colour listed separately, in
/// lexicographic order of (part, colour) sequences.
std::vector<Composition> enumerate_compositions(int n, const PartConstraint& c,
                                                int bound = kDefaultEnumerationBound);

struct BitSequence {
  std::vector<bool> bits;

  static BitSequence parse(std::string_view text);
  std::string to_string() const;
  friend bool operator==(const BitSequence&, const BitSequence&) = default;
};

/// Each part p becomes p-1 zeros then a one; the last part drops the one.
BitSequence macmahon_sequence(const Composition& p);
/// Inverse of macmahon_sequence; a sequence of length m encodes a
/// composition of m+1.
Composition macmahon_inverse(const BitSequence& bits);
/// Composition with the complemented MacMahon sequence.
Composition conjugate(const Composition& p);

/// Bijection from compositions of n into parts = 1 (mod q) onto
/// compositions of n+q-1 into parts >= q.
Composition sills_map(int q, const Composition& p);
Composition sills_inverse(int q, const Composition& image);

}  // namespace narayana

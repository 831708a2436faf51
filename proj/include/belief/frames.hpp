#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "belief/opinion.hpp"

namespace blc {

/// Subset of a frame's atoms, encoded as a bitmask over atom indices.
struct Subset {
  std::uint64_t bits = 0;

  int count() const;
  bool empty() const { return bits == 0; }
  bool subset_of(Subset other) const { return (bits & ~other.bits) == 0; }
  bool intersects(Subset other) const { return (bits & other.bits) != 0; }

  friend auto operator<=>(const Subset&, const Subset&) = default;
};

/// Frame of discernment: an ordered list of 2..64 distinct atom labels.
/// Frames beyond 64 atoms are rejected so power-set iteration stays exact.
class Frame {
 public:
  explicit Frame(std::vector<std::string> atoms);

  int size() const { return static_cast<int>(atoms_.size()); }
  const std::vector<std::string>& atoms() const { return atoms_; }

  Subset full() const;
  Subset singleton(int index) const;
  Subset complement(Subset x) const;
  bool contains(Subset x) const { return x.subset_of(full()); }

  /// Parses "t1,t3" (comma-joined labels) or "*" for the whole frame.
  Subset parse_subset(std::string_view text) const;
  /// Inverse of parse_subset; canonical form lists atoms in frame order.
  std::string label(Subset x) const;

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::vector<std::string> atoms_;
};

/// Basic belief assignment: positive masses on non-empty subsets of the
/// frame, summing to 1 within kEpsAdd. Zero-mass entries are dropped, so the
/// stored map holds exactly the focal elements, keyed in canonical order.
class Bba {
 public:
  Bba(Frame frame, std::map<Subset, double> masses);

  const Frame& frame() const { return frame_; }
  double mass(Subset x) const;
  const std::map<Subset, double>& focals() const { return masses_; }

 private:
  Frame frame_;
  std::map<Subset, double> masses_;
};

Bba make_bba(const Frame& frame,
             std::initializer_list<std::pair<Subset, double>> masses);

/// Overlapping structural classes of a bba (every Bayesian bba is dogmatic,
/// every Dirichlet bba is cluster Dirichlet, and so on).
struct BbaClass {
  bool vacuous = false;            // only focal element is the whole frame
  bool bayesian = false;           // all focal elements are atoms
  bool dogmatic = false;           // the whole frame carries no mass
  bool dirichlet = false;          // focals are the frame and/or atoms
  bool cluster_dirichlet = false;  // focals are the frame and/or disjoint sets
  bool general() const { return !cluster_dirichlet; }
};

/// Mass of the non-empty subsets of x.
double belief(const Bba& bba, Subset x);
/// Mass of the subsets disjoint from x.
double disbelief(const Bba& bba, Subset x);
/// Mass of the subsets that overlap x without being contained in it.
double uncertainty(const Bba& bba, Subset x);
/// |x| / |frame|.
double base_rate(const Frame& frame, Subset x);
/// Pignistic expectation: sum over focals of m(y) * |x & y| / |y|.
double prob_expectation(const Bba& bba, Subset x);

BbaClass classify(const Bba& bba);

/// Coarsens the frame onto the binary frame {x, not-x} for a non-empty
/// proper subset x, preserving the probability expectation and base rate.
/// The two formula branches meet continuously where the expectation equals
/// b + a*u.
Opinion smooth_coarsen(const Bba& bba, Subset x);

/// Verbatim (b(x), d(x), u(x), a(x)). Defined only for (cluster) Dirichlet
/// bbas whose target is itself a focal element; agrees with smooth_coarsen
/// there.
Opinion stable_coarsen(const Bba& bba, Subset x);

/// File format used by the CLI:
///   {"atoms": ["t1","t2","t3"], "masses": {"t1": 0.5, "t1,t2": 0.1, "*": 0.4}}
/// Keys are comma-joined atom labels, "*" is the whole frame, masses must sum
/// to 1 within kEpsAdd.
Bba bba_from_json(const std::string& text);
std::string bba_to_json(const Bba& bba);

}  // namespace blc

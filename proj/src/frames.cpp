#include "belief/frames.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "belief/errors.hpp"

namespace blc {

namespace {

void require_target(const Frame& frame, Subset x, bool allow_empty = false) {
  if (!frame.contains(x)) {
    fail(ErrorKind::ForeignSubset, "subset has bits outside the frame");
  }
  if (!allow_empty && x.empty()) {
    fail(ErrorKind::EmptyTarget, "the empty set cannot be a target");
  }
}

}  // namespace

int Subset::count() const { return std::popcount(bits); }

Frame::Frame(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.size() < 2) {
    fail(ErrorKind::InvalidFrame, "a frame needs at least two atoms");
  }
  if (atoms_.size() > 64) {
    fail(ErrorKind::InvalidFrame, "frames beyond 64 atoms are not supported");
  }
  std::set<std::string_view> seen;
  for (const auto& atom : atoms_) {
    if (atom.empty() || atom == "*" || atom.find(',') != std::string::npos) {
      fail(ErrorKind::InvalidFrame, "bad atom label '" + atom + "'");
    }
    if (!seen.insert(atom).second) {
      fail(ErrorKind::InvalidFrame, "duplicate atom label '" + atom + "'");
    }
  }
}

Subset Frame::full() const {
  const int n = size();
  return Subset{n == 64 ? ~0ULL : (1ULL << n) - 1};
}

Subset Frame::singleton(int index) const {
  if (index < 0 || index >= size()) {
    fail(ErrorKind::ForeignSubset, "atom index out of range");
  }
  return Subset{1ULL << index};
}

Subset Frame::complement(Subset x) const {
  require_target(*this, x, /*allow_empty=*/true);
  return Subset{full().bits & ~x.bits};
}

Subset Frame::parse_subset(std::string_view text) const {
  if (text == "*") return full();
  if (text.empty()) {
    fail(ErrorKind::EmptyTarget, "empty subset label");
  }
  Subset result;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view piece =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                           : comma - start);
    int index = -1;
    for (int i = 0; i < size(); ++i) {
      if (atoms_[static_cast<std::size_t>(i)] == piece) {
        index = i;
        break;
      }
    }
    if (index < 0) {
      fail(ErrorKind::ForeignSubset,
           "unknown atom label '" + std::string(piece) + "'");
    }
    result.bits |= 1ULL << index;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return result;
}

std::string Frame::label(Subset x) const {
  require_target(*this, x, /*allow_empty=*/true);
  if (x == full()) return "*";
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (x.bits & (1ULL << i)) {
      if (!out.empty()) out += ',';
      out += atoms_[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

Bba::Bba(Frame frame, std::map<Subset, double> masses)
    : frame_(std::move(frame)) {
  double sum = 0.0;
  for (const auto& [subset, mass] : masses) {
    if (subset.empty()) {
      fail(ErrorKind::InvalidBba, "the empty set cannot carry mass");
    }
    if (!frame_.contains(subset)) {
      fail(ErrorKind::InvalidBba, "focal element outside the frame");
    }
    if (!(std::isfinite(mass) && mass >= -kEpsAdd && mass <= 1.0 + kEpsAdd)) {
      fail(ErrorKind::InvalidBba,
           "mass " + std::to_string(mass) + " outside [0,1]");
    }
    if (mass > 0.0) {
      masses_.emplace(subset, std::min(mass, 1.0));
      sum += mass;
    }
  }
  if (std::fabs(sum - 1.0) > kEpsAdd) {
    fail(ErrorKind::InvalidBba,
         "masses sum to " + std::to_string(sum) + ", expected 1");
  }
}

double Bba::mass(Subset x) const {
  const auto it = masses_.find(x);
  return it == masses_.end() ? 0.0 : it->second;
}

Bba make_bba(const Frame& frame,
             std::initializer_list<std::pair<Subset, double>> masses) {
  std::map<Subset, double> map;
  for (const auto& [subset, mass] : masses) map[subset] += mass;
  return Bba(frame, std::move(map));
}

double belief(const Bba& bba, Subset x) {
  require_target(bba.frame(), x);
  double sum = 0.0;
  for (const auto& [y, m] : bba.focals()) {
    if (y.subset_of(x)) sum += m;
  }
  return sum;
}

double disbelief(const Bba& bba, Subset x) {
  require_target(bba.frame(), x);
  double sum = 0.0;
  for (const auto& [y, m] : bba.focals()) {
    if (!y.intersects(x)) sum += m;
  }
  return sum;
}

double uncertainty(const Bba& bba, Subset x) {
  require_target(bba.frame(), x);
  double sum = 0.0;
  for (const auto& [y, m] : bba.focals()) {
    if (y.intersects(x) && !y.subset_of(x)) sum += m;
  }
  return sum;
}

double base_rate(const Frame& frame, Subset x) {
  require_target(frame, x, /*allow_empty=*/true);
  return static_cast<double>(x.count()) / frame.size();
}

double prob_expectation(const Bba& bba, Subset x) {
  require_target(bba.frame(), x, /*allow_empty=*/true);
  double sum = 0.0;
  for (const auto& [y, m] : bba.focals()) {
    const Subset overlap{y.bits & x.bits};
    sum += m * overlap.count() / y.count();
  }
  return sum;
}

BbaClass classify(const Bba& bba) {
  const Subset theta = bba.frame().full();
  BbaClass c;
  c.vacuous = bba.focals().size() == 1 && bba.focals().begin()->first == theta;
  c.dogmatic = bba.mass(theta) == 0.0;
  c.bayesian = true;
  c.dirichlet = true;
  c.cluster_dirichlet = true;
  Subset covered;  // union of non-frame focals seen so far
  for (const auto& [y, m] : bba.focals()) {
    if (y == theta) {
      c.bayesian = false;
      continue;
    }
    if (y.count() != 1) {
      c.bayesian = false;
      c.dirichlet = false;
    }
    if (y.intersects(covered)) c.cluster_dirichlet = false;
    covered.bits |= y.bits;
  }
  return c;
}

Opinion smooth_coarsen(const Bba& bba, Subset x) {
  require_target(bba.frame(), x);
  if (x == bba.frame().full()) {
    fail(ErrorKind::PreconditionViolated,
         "coarsening target must be a proper subset");
  }
  const double b = belief(bba, x);
  const double d = disbelief(bba, x);
  const double u = uncertainty(bba, x);
  const double a = base_rate(bba.frame(), x);
  const double e = prob_expectation(bba, x);
  const double boundary = b + a * u;
  if (e <= boundary) {
    if (boundary == 0.0) {
      // e is squeezed to 0 here; the limit along the projector line.
      return make_opinion(0.0, 1.0, 0.0, a);
    }
    return finalize_opinion(e * b / boundary, 1.0 - e * (b + u) / boundary,
                            e * u / boundary, a, e);
  }
  const double rest = 1.0 - boundary;
  if (rest == 0.0) {
    return make_opinion(1.0, 0.0, 0.0, a);
  }
  return finalize_opinion(1.0 - (1.0 - e) * (d + u) / rest,
                          (1.0 - e) * d / rest, (1.0 - e) * u / rest, a, e);
}

Opinion stable_coarsen(const Bba& bba, Subset x) {
  require_target(bba.frame(), x);
  if (x == bba.frame().full()) {
    fail(ErrorKind::PreconditionViolated,
         "coarsening target must be a proper subset");
  }
  if (!classify(bba).cluster_dirichlet) {
    fail(ErrorKind::PreconditionViolated,
         "stable coarsening needs a (cluster) Dirichlet bba");
  }
  if (bba.mass(x) <= 0.0) {
    fail(ErrorKind::PreconditionViolated,
         "stable coarsening needs a focal target");
  }
  return make_opinion(belief(bba, x), disbelief(bba, x), uncertainty(bba, x),
                      base_rate(bba.frame(), x));
}

Bba bba_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidBba, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("atoms") || !doc.contains("masses")) {
    fail(ErrorKind::InvalidBba, "expected an object with atoms and masses");
  }
  std::vector<std::string> atoms;
  for (const auto& atom : doc["atoms"]) {
    if (!atom.is_string()) {
      fail(ErrorKind::InvalidBba, "atoms must be strings");
    }
    atoms.push_back(atom.get<std::string>());
  }
  Frame frame(std::move(atoms));
  std::map<Subset, double> masses;
  for (const auto& [key, value] : doc["masses"].items()) {
    if (!value.is_number()) {
      fail(ErrorKind::InvalidBba, "mass for '" + key + "' must be a number");
    }
    const Subset subset = frame.parse_subset(key);
    if (masses.count(subset) != 0) {
      fail(ErrorKind::InvalidBba, "duplicate focal element '" + key + "'");
    }
    masses.emplace(subset, value.get<double>());
  }
  return Bba(std::move(frame), std::move(masses));
}

std::string bba_to_json(const Bba& bba) {
  nlohmann::ordered_json doc;
  doc["atoms"] = bba.frame().atoms();
  auto& masses = doc["masses"] = nlohmann::ordered_json::object();
  for (const auto& [subset, mass] : bba.focals()) {
    masses[bba.frame().label(subset)] = mass;
  }
  return doc.dump();
}

}  // namespace blc

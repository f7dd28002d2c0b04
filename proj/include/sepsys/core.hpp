#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace sepsys {

/// A side of a separation: a subset of ground-set indices.
using Side = boost::dynamic_bitset<>;

inline Side empty_side(std::size_t width) { return Side(width); }

inline Side full_side(std::size_t width) {
  Side s(width);
  s.set();
  return s;
}

inline Side side_from_indices(std::size_t width, const std::vector<std::size_t>& indices) {
  Side s(width);
  for (std::size_t i : indices) {
    if (i >= width) throw InputError("side index out of range");
    s.set(i);
  }
  return s;
}

inline std::vector<std::size_t> side_indices(const Side& s) {
  std::vector<std::size_t> out;
  out.reserve(s.count());
  for (std::size_t i = s.find_first(); i != Side::npos; i = s.find_next(i)) out.push_back(i);
  return out;
}

/// Lexicographic order on sides viewed as sorted index sequences;
/// a proper prefix sorts first.
inline bool side_lex_less(const Side& a, const Side& b) {
  std::size_t i = a.find_first();
  std::size_t j = b.find_first();
  while (true) {
    if (i == Side::npos && j == Side::npos) return false;
    if (i == Side::npos) return true;
    if (j == Side::npos) return false;
    if (i != j) return i < j;
    i = a.find_next(i);
    j = b.find_next(j);
  }
}

inline std::string side_to_string(const Side& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t i = s.find_first(); i != Side::npos; i = s.find_next(i)) {
    if (!first) os << ',';
    os << i;
    first = false;
  }
  os << '}';
  return os.str();
}

/// Finite non-empty ground set; elements are the indices 0..size()-1.
class GroundSet {
 public:
  explicit GroundSet(std::size_t size, std::vector<std::string> labels = {})
      : size_(size), labels_(std::move(labels)) {
    if (size_ == 0) throw InputError("ground set must be non-empty");
    if (!labels_.empty() && labels_.size() != size_)
      throw InputError("label count does not match ground-set size");
  }

  std::size_t size() const { return size_; }
  const std::vector<std::string>& labels() const { return labels_; }

  friend bool operator==(const GroundSet& a, const GroundSet& b) {
    return a.size_ == b.size_ && a.labels_ == b.labels_;
  }

 private:
  std::size_t size_;
  std::vector<std::string> labels_;
};

/// Ordered pair (small, big) of sides whose union is the whole ground set.
struct OrientedSeparation {
  Side small;
  Side big;

  OrientedSeparation(Side small_side, Side big_side)
      : small(std::move(small_side)), big(std::move(big_side)) {
    if (small.size() != big.size()) throw InputError("side widths differ");
    if (!(small | big).all()) throw InputError("sides do not cover the ground set");
  }

  std::size_t width() const { return small.size(); }

  OrientedSeparation inverse() const { return OrientedSeparation(big, small); }
  Side separator() const { return small & big; }

  bool is_small() const { return big.all(); }
  bool is_cosmall() const { return small.all(); }
  bool is_degenerate() const { return small.all() && big.all(); }

  friend bool operator==(const OrientedSeparation&, const OrientedSeparation&) = default;
};

inline std::string to_string(const OrientedSeparation& o) {
  return "(" + side_to_string(o.small) + "," + side_to_string(o.big) + ")";
}

inline void require_same_width(const OrientedSeparation& r, const OrientedSeparation& s) {
  if (r.width() != s.width()) throw InputError("oriented separations over different ground sets");
}

/// r <= s iff r.small is contained in s.small and r.big contains s.big.
inline bool leq(const OrientedSeparation& r, const OrientedSeparation& s) {
  require_same_width(r, s);
  return r.small.is_subset_of(s.small) && s.big.is_subset_of(r.big);
}

inline bool lt(const OrientedSeparation& r, const OrientedSeparation& s) {
  return leq(r, s) && !(r == s);
}

enum class Cmp { less, greater, equal, incomparable };

inline Cmp compare(const OrientedSeparation& r, const OrientedSeparation& s) {
  const bool le = leq(r, s);
  const bool ge = leq(s, r);
  if (le && ge) return Cmp::equal;
  if (le) return Cmp::less;
  if (ge) return Cmp::greater;
  return Cmp::incomparable;
}

inline OrientedSeparation join(const OrientedSeparation& r, const OrientedSeparation& s) {
  require_same_width(r, s);
  return OrientedSeparation(r.small | s.small, r.big & s.big);
}

inline OrientedSeparation meet(const OrientedSeparation& r, const OrientedSeparation& s) {
  require_same_width(r, s);
  return OrientedSeparation(r.small & s.small, r.big | s.big);
}

/// Unoriented separation, stored via a canonical orientation: the side that is
/// lexicographically least as a sorted index sequence comes first. The
/// degenerate separation canonicalizes to itself.
class Separation {
 public:
  explicit Separation(const OrientedSeparation& o)
      : canon_(side_lex_less(o.big, o.small) ? o.inverse() : o) {}

  const OrientedSeparation& canonical() const { return canon_; }
  std::size_t width() const { return canon_.width(); }

  /// The orientation of this separation whose big side is `big`.
  OrientedSeparation oriented_toward(const Side& big) const {
    if (big == canon_.big) return canon_;
    if (big == canon_.small) return canon_.inverse();
    throw InputError("side is not a side of this separation");
  }

  friend bool operator==(const Separation&, const Separation&) = default;

 private:
  OrientedSeparation canon_;
};

/// Total order on separations used for deduplication and serialization.
inline bool sep_less(const Separation& x, const Separation& y) {
  const auto& xc = x.canonical();
  const auto& yc = y.canonical();
  if (xc.small != yc.small) return side_lex_less(xc.small, yc.small);
  return side_lex_less(xc.big, yc.big);
}

struct SepLess {
  bool operator()(const Separation& x, const Separation& y) const { return sep_less(x, y); }
};

inline std::string to_string(const Separation& s) { return to_string(s.canonical()); }

/// Order function specification: separator cardinality, the number of crossed
/// families, or an explicit per-separation table.
class OrderSpec {
 public:
  enum class Kind { standard, crossing, explicit_table };

  static OrderSpec standard() { return OrderSpec(Kind::standard); }

  static OrderSpec crossing(std::vector<Side> families) {
    OrderSpec spec(Kind::crossing);
    spec.families_ = std::move(families);
    return spec;
  }

  static OrderSpec explicit_table(std::map<Separation, std::size_t, SepLess> table) {
    OrderSpec spec(Kind::explicit_table);
    spec.table_ = std::move(table);
    return spec;
  }

  Kind kind() const { return kind_; }
  const std::vector<Side>& families() const { return families_; }
  const std::map<Separation, std::size_t, SepLess>& table() const { return table_; }

  std::size_t evaluate(const Separation& s) const {
    switch (kind_) {
      case Kind::standard:
        return (s.canonical().small & s.canonical().big).count();
      case Kind::crossing: {
        std::size_t n = 0;
        for (const Side& f : families_) {
          if (f.size() != s.width()) throw InputError("crossing family over a different ground set");
          if (f.intersects(s.canonical().small) && f.intersects(s.canonical().big)) ++n;
        }
        return n;
      }
      case Kind::explicit_table: {
        const auto it = table_.find(s);
        if (it == table_.end())
          throw InputError("explicit order table does not cover separation " + to_string(s));
        return it->second;
      }
    }
    throw InvariantError("unreachable order kind");
  }

  friend bool operator==(const OrderSpec& a, const OrderSpec& b) {
    return a.kind_ == b.kind_ && a.families_ == b.families_ && a.table_ == b.table_;
  }

 private:
  explicit OrderSpec(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::vector<Side> families_;
  std::map<Separation, std::size_t, SepLess> table_;
};

/// A deduplicated family of separations of one ground set, kept sorted in the
/// canonical separation order, together with an order function.
class SeparationSystem {
 public:
  SeparationSystem(GroundSet ground, std::vector<Separation> separations, OrderSpec order)
      : ground_(std::move(ground)), separations_(std::move(separations)), order_(std::move(order)) {
    for (const Separation& s : separations_) {
      if (s.width() != ground_.size())
        throw InputError("separation width does not match the ground set");
    }
    std::sort(separations_.begin(), separations_.end(), SepLess{});
    separations_.erase(std::unique(separations_.begin(), separations_.end()), separations_.end());
    if (order_.kind() == OrderSpec::Kind::explicit_table) {
      for (const Separation& s : separations_) order_.evaluate(s);
    }
  }

  const GroundSet& ground() const { return ground_; }
  std::size_t width() const { return ground_.size(); }
  const std::vector<Separation>& separations() const { return separations_; }
  std::size_t size() const { return separations_.size(); }
  const Separation& at(std::size_t i) const { return separations_.at(i); }
  const OrderSpec& order_spec() const { return order_; }

  std::optional<std::size_t> find(const Separation& s) const {
    const auto it = std::lower_bound(separations_.begin(), separations_.end(), s, SepLess{});
    if (it == separations_.end() || !(*it == s)) return std::nullopt;
    return static_cast<std::size_t>(it - separations_.begin());
  }

  std::size_t order_of(const Separation& s) const { return order_.evaluate(s); }
  std::size_t order_of(const OrientedSeparation& o) const { return order_.evaluate(Separation(o)); }

  friend bool operator==(const SeparationSystem& a, const SeparationSystem& b) {
    return a.ground_ == b.ground_ && a.separations_ == b.separations_ && a.order_ == b.order_;
  }

 private:
  GroundSet ground_;
  std::vector<Separation> separations_;
  OrderSpec order_;
};

using SystemPtr = std::shared_ptr<const SeparationSystem>;

inline SystemPtr make_system(GroundSet ground, std::vector<Separation> separations, OrderSpec order) {
  return std::make_shared<const SeparationSystem>(std::move(ground), std::move(separations),
                                                  std::move(order));
}

/// The subsystem of separations of order less than k.
inline SeparationSystem restrict_to_Sk(const SeparationSystem& sys, std::size_t k) {
  std::vector<Separation> kept;
  for (const Separation& s : sys.separations())
    if (sys.order_of(s) < k) kept.push_back(s);
  return SeparationSystem(sys.ground(), std::move(kept), sys.order_spec());
}

struct StarCheck {
  bool is_star = false;
  Side interior;
};

/// Star test plus interior (intersection of big sides). The interior of the
/// empty family is the whole ground set. Degenerate members disqualify.
inline StarCheck star_interior(std::size_t width, const std::vector<OrientedSeparation>& sigma) {
  StarCheck result;
  result.interior = full_side(width);

  std::vector<OrientedSeparation> elems;
  for (const OrientedSeparation& o : sigma) {
    if (o.width() != width) throw InputError("star member over a different ground set");
    if (std::find(elems.begin(), elems.end(), o) == elems.end()) elems.push_back(o);
  }
  for (const OrientedSeparation& o : elems) result.interior &= o.big;

  for (const OrientedSeparation& o : elems)
    if (o.is_degenerate()) return result;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (!leq(elems[i], elems[j].inverse())) return result;

  result.is_star = true;
  return result;
}

struct SubmodularityReport {
  bool submodular = true;
  std::optional<std::pair<OrientedSeparation, OrientedSeparation>> violation;
};

/// Checks |r v s| + |r ^ s| <= |r| + |s| over all orientations of all pairs of
/// the system. Explicit order tables must cover the joins and meets involved.
inline SubmodularityReport check_submodular(const SeparationSystem& sys) {
  SubmodularityReport report;
  const auto orientations = [](const Separation& s) {
    std::vector<OrientedSeparation> out{s.canonical()};
    if (!s.canonical().is_degenerate()) out.push_back(s.canonical().inverse());
    return out;
  };
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (std::size_t j = i; j < sys.size(); ++j) {
      const std::size_t bound = sys.order_of(sys.at(i)) + sys.order_of(sys.at(j));
      for (const auto& r : orientations(sys.at(i))) {
        for (const auto& s : orientations(sys.at(j))) {
          const std::size_t lhs = sys.order_of(join(r, s)) + sys.order_of(meet(r, s));
          if (lhs > bound) {
            report.submodular = false;
            report.violation = std::make_pair(r, s);
            return report;
          }
        }
      }
    }
  }
  return report;
}

}  // namespace sepsys

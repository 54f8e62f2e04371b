#pragma once

// Finite abelian groups Z_{n_1} x ... x Z_{n_k}, their elements, characters,
// subgroups and annihilators.
//
// Elements are addressed either by coordinates or by a mixed-radix index
// (first coordinate most significant), so index order is lexicographic order.
// The dual group is identified with the group itself: the character with
// coordinates c acts by z -> prod_i w_{n_i}^{c_i z_i}.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "weaktile/cyclo.hpp"

namespace weaktile {

using Coords = std::vector<std::uint32_t>;

struct GroupLimits {
  std::uint64_t enumeration_cap = 10'000'000;
  std::uint64_t materialize_cap = 100'000;
};

GroupLimits& group_limits();

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GroupElement {
  Coords coords;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

struct Character {
  Coords coords;
  friend auto operator<=>(const Character&, const Character&) = default;
};

class GroupSpec {
 public:
  GroupSpec() = default;
  /// Throws std::invalid_argument on an empty list or a zero order.
  explicit GroupSpec(std::vector<std::uint32_t> orders);

  [[nodiscard]] const std::vector<std::uint32_t>& orders() const { return orders_; }
  [[nodiscard]] std::size_t rank() const { return orders_.size(); }
  [[nodiscard]] std::uint64_t size() const { return size_; }
  [[nodiscard]] std::uint64_t exponent() const { return exponent_; }

  [[nodiscard]] std::uint64_t index(const Coords& c) const;
  [[nodiscard]] Coords coords(std::uint64_t index) const;
  void coords(std::uint64_t index, Coords& out) const;
  [[nodiscard]] GroupElement element(std::uint64_t index) const { return {coords(index)}; }

  [[nodiscard]] std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  [[nodiscard]] std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  [[nodiscard]] std::uint64_t neg(std::uint64_t a) const;
  /// Reduces arbitrary integer coordinates into range.
  [[nodiscard]] Coords reduce(const std::vector<std::int64_t>& c) const;

  /// Exponent j with chi(z) = w_exponent^j.
  [[nodiscard]] std::uint64_t pairing(const Coords& chi, const Coords& z) const;
  [[nodiscard]] std::uint64_t pairing(std::uint64_t chi, std::uint64_t z) const;

  /// "n1,n2,..."
  [[nodiscard]] std::string str() const;
  static GroupSpec parse(const std::string& text);

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.orders_ == b.orders_; }

 private:
  std::vector<std::uint32_t> orders_;
  std::vector<std::uint64_t> strides_;
  std::vector<std::uint64_t> scale_;  // exponent / n_i
  std::uint64_t size_ = 1;
  std::uint64_t exponent_ = 1;
};

GroupSpec make_group(const std::vector<std::uint32_t>& orders);

/// G x H with the embeddings and projections. Element index of (g, h) is
/// g * |H| + h.
struct ProductGroup {
  GroupSpec first;
  GroupSpec second;
  GroupSpec whole;

  ProductGroup(GroupSpec a, GroupSpec b);
  [[nodiscard]] std::uint64_t join(std::uint64_t g, std::uint64_t h) const { return g * second.size() + h; }
  [[nodiscard]] std::uint64_t project_first(std::uint64_t z) const { return z / second.size(); }
  [[nodiscard]] std::uint64_t project_second(std::uint64_t z) const { return z % second.size(); }
  [[nodiscard]] std::uint64_t embed_first(std::uint64_t g) const { return join(g, 0); }
  [[nodiscard]] std::uint64_t embed_second(std::uint64_t h) const { return join(0, h); }
};

ProductGroup product(const GroupSpec& a, const GroupSpec& b);

cyclo::CyclotomicNumber char_eval(const GroupSpec& spec, const Character& chi, const GroupElement& z);

/// Sorted set of elements of one group.
class ElementSet {
 public:
  ElementSet() = default;
  ElementSet(GroupSpec spec, std::vector<std::uint64_t> elements);  // sorts, dedups

  [[nodiscard]] const GroupSpec& spec() const { return spec_; }
  [[nodiscard]] const std::vector<std::uint64_t>& elements() const { return elems_; }
  [[nodiscard]] std::size_t size() const { return elems_.size(); }
  [[nodiscard]] bool empty() const { return elems_.empty(); }
  [[nodiscard]] bool contains(std::uint64_t idx) const;
  [[nodiscard]] auto begin() const { return elems_.begin(); }
  [[nodiscard]] auto end() const { return elems_.end(); }

  [[nodiscard]] ElementSet translate(std::uint64_t by) const;
  [[nodiscard]] ElementSet negate() const;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  GroupSpec spec_;
  std::vector<std::uint64_t> elems_;
};

class Subgroup {
 public:
  /// Closure of the generators; materialized, so the closure must stay under
  /// the materialization cap.
  static Subgroup generated_by(const GroupSpec& spec, const std::vector<std::uint64_t>& generators);
  static Subgroup from_elements(const GroupSpec& spec, std::vector<std::uint64_t> elements,
                                std::vector<std::uint64_t> generators);

  [[nodiscard]] const GroupSpec& spec() const { return spec_; }
  [[nodiscard]] std::uint64_t size() const { return size_; }
  [[nodiscard]] bool materialized() const { return elements_.has_value(); }
  /// Throws std::logic_error when not materialized.
  [[nodiscard]] const std::vector<std::uint64_t>& elements() const;
  [[nodiscard]] const std::vector<std::uint64_t>& generators() const { return generators_; }
  [[nodiscard]] bool contains(std::uint64_t idx) const;
  [[nodiscard]] bool full_group() const { return size_ == spec_.size(); }
  /// Kernel of x -> <form, x> mod n, if this subgroup was built as one.
  [[nodiscard]] const std::optional<Coords>& form() const { return form_; }

 private:
  friend Subgroup kernel_of_form(const GroupSpec& spec, const Coords& w);
  Subgroup() = default;

  GroupSpec spec_;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> generators_;
  std::optional<std::vector<std::uint64_t>> elements_;
  std::optional<Coords> form_;
};

/// Kernel of x -> <w, x> mod n on Z_n^r. A zero form yields the full group
/// (check full_group()). Materialized when below the cap.
Subgroup kernel_of_form(const GroupSpec& spec, const Coords& w);

/// Characters identically 1 on the subgroup, as a subgroup of the dual.
Subgroup annihilator(const Subgroup& s);

/// Lexicographic enumeration of all elements; throws CapExceeded above the
/// enumeration cap.
class ElementRange {
 public:
  explicit ElementRange(const GroupSpec& spec);

  class iterator {
   public:
    using value_type = GroupElement;
    using difference_type = std::ptrdiff_t;
    iterator(const GroupSpec* spec, std::uint64_t i) : spec_(spec), i_(i) {}
    GroupElement operator*() const { return spec_->element(i_); }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    bool operator==(const iterator& o) const { return i_ == o.i_; }

   private:
    const GroupSpec* spec_;
    std::uint64_t i_;
  };

  [[nodiscard]] iterator begin() const { return {&spec_, 0}; }
  [[nodiscard]] iterator end() const { return {&spec_, spec_.size()}; }

 private:
  GroupSpec spec_;
};

ElementRange enumerate(const GroupSpec& spec);
/// Characters of the group, identified with the same coordinates.
ElementRange enumerate_dual(const GroupSpec& spec);

using Permutation5 = std::array<std::uint8_t, 5>;

/// All 120 permutations of {0..4} in lexicographic order of one-line
/// notation; index 0 is the identity.
const std::vector<Permutation5>& s5_enumeration();

/// out[i] = v[perm[i]].
Coords permute_vector(const Permutation5& perm, const Coords& v);

}  // namespace weaktile

#include "weaktile/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace weaktile {

GroupLimits& group_limits() {
  static GroupLimits l;
  return l;
}

GroupSpec::GroupSpec(std::vector<std::uint32_t> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw std::invalid_argument("group needs at least one cyclic factor");
  strides_.assign(orders_.size(), 1);
  for (std::size_t i = orders_.size(); i-- > 0;) {
    if (orders_[i] == 0) throw std::invalid_argument("cyclic orders must be positive");
    strides_[i] = size_;
    if (__builtin_mul_overflow(size_, static_cast<std::uint64_t>(orders_[i]), &size_)) {
      throw std::invalid_argument("group too large");
    }
    exponent_ = std::lcm(exponent_, static_cast<std::uint64_t>(orders_[i]));
  }
  for (auto n : orders_) scale_.push_back(exponent_ / n);
}

GroupSpec make_group(const std::vector<std::uint32_t>& orders) { return GroupSpec(orders); }

std::uint64_t GroupSpec::index(const Coords& c) const {
  if (c.size() != orders_.size()) throw ShapeMismatch("coordinate count does not match group rank");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < c.size(); ++i) idx += (c[i] % orders_[i]) * strides_[i];
  return idx;
}

Coords GroupSpec::coords(std::uint64_t index) const {
  Coords c;
  coords(index, c);
  return c;
}

void GroupSpec::coords(std::uint64_t index, Coords& out) const {
  out.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    out[i] = static_cast<std::uint32_t>(index / strides_[i]);
    index %= strides_[i];
  }
}

std::uint64_t GroupSpec::add(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    std::uint64_t ai = a / strides_[i], bi = b / strides_[i];
    a %= strides_[i];
    b %= strides_[i];
    out += ((ai + bi) % orders_[i]) * strides_[i];
  }
  return out;
}

std::uint64_t GroupSpec::neg(std::uint64_t a) const {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    std::uint64_t ai = a / strides_[i];
    a %= strides_[i];
    out += ((orders_[i] - ai) % orders_[i]) * strides_[i];
  }
  return out;
}

std::uint64_t GroupSpec::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

Coords GroupSpec::reduce(const std::vector<std::int64_t>& c) const {
  if (c.size() != orders_.size()) throw ShapeMismatch("coordinate count does not match group rank");
  Coords out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto n = static_cast<std::int64_t>(orders_[i]);
    out[i] = static_cast<std::uint32_t>(((c[i] % n) + n) % n);
  }
  return out;
}

std::uint64_t GroupSpec::pairing(const Coords& chi, const Coords& z) const {
  if (chi.size() != orders_.size() || z.size() != orders_.size()) {
    throw ShapeMismatch("character and element shapes differ from the group");
  }
  std::uint64_t j = 0;
  for (std::size_t i = 0; i < chi.size(); ++i) {
    std::uint64_t t = (static_cast<std::uint64_t>(chi[i]) * z[i]) % orders_[i];
    j = (j + t * scale_[i]) % exponent_;
  }
  return j;
}

std::uint64_t GroupSpec::pairing(std::uint64_t chi, std::uint64_t z) const {
  std::uint64_t j = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    std::uint64_t ci = chi / strides_[i], zi = z / strides_[i];
    chi %= strides_[i];
    z %= strides_[i];
    j = (j + (ci * zi % orders_[i]) * scale_[i]) % exponent_;
  }
  return j;
}

std::string GroupSpec::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < orders_.size(); ++i) os << (i ? "," : "") << orders_[i];
  return os.str();
}

GroupSpec GroupSpec::parse(const std::string& text) {
  std::vector<std::uint32_t> orders;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      unsigned long v = std::stoul(item, &pos);
      if (item.find_first_not_of(" \t", pos) != std::string::npos) throw std::invalid_argument("");
      orders.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed group orders: '" + text + "'");
    }
  }
  return GroupSpec(std::move(orders));
}

ProductGroup::ProductGroup(GroupSpec a, GroupSpec b) : first(std::move(a)), second(std::move(b)) {
  auto orders = first.orders();
  orders.insert(orders.end(), second.orders().begin(), second.orders().end());
  whole = GroupSpec(std::move(orders));
}

ProductGroup product(const GroupSpec& a, const GroupSpec& b) { return ProductGroup(a, b); }

cyclo::CyclotomicNumber char_eval(const GroupSpec& spec, const Character& chi, const GroupElement& z) {
  return cyclo::CyclotomicNumber::root_of_unity(static_cast<std::int64_t>(spec.pairing(chi.coords, z.coords)),
                                                spec.exponent());
}

// ---------------------------------------------------------------------------

ElementSet::ElementSet(GroupSpec spec, std::vector<std::uint64_t> elements)
    : spec_(std::move(spec)), elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  if (!elems_.empty() && elems_.back() >= spec_.size()) {
    throw std::invalid_argument("set element outside its group");
  }
}

bool ElementSet::contains(std::uint64_t idx) const {
  return std::binary_search(elems_.begin(), elems_.end(), idx);
}

ElementSet ElementSet::translate(std::uint64_t by) const {
  std::vector<std::uint64_t> out;
  out.reserve(elems_.size());
  for (auto e : elems_) out.push_back(spec_.add(e, by));
  return {spec_, std::move(out)};
}

ElementSet ElementSet::negate() const {
  std::vector<std::uint64_t> out;
  out.reserve(elems_.size());
  for (auto e : elems_) out.push_back(spec_.neg(e));
  return {spec_, std::move(out)};
}

// ---------------------------------------------------------------------------

Subgroup Subgroup::from_elements(const GroupSpec& spec, std::vector<std::uint64_t> elements,
                                 std::vector<std::uint64_t> generators) {
  Subgroup s;
  s.spec_ = spec;
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  s.size_ = elements.size();
  s.elements_ = std::move(elements);
  s.generators_ = std::move(generators);
  return s;
}

Subgroup Subgroup::generated_by(const GroupSpec& spec, const std::vector<std::uint64_t>& generators) {
  std::vector<std::uint64_t> elems{0};
  std::vector<char> seen(spec.size() <= group_limits().enumeration_cap ? spec.size() : 0, 0);
  if (seen.empty()) throw CapExceeded("group too large to close generators");
  seen[0] = 1;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (auto g : generators) {
      std::uint64_t n = spec.add(elems[head], g);
      if (!seen[n]) {
        seen[n] = 1;
        elems.push_back(n);
        if (elems.size() > group_limits().materialize_cap) {
          throw CapExceeded("subgroup exceeds the materialization cap");
        }
      }
    }
  }
  return from_elements(spec, std::move(elems), generators);
}

const std::vector<std::uint64_t>& Subgroup::elements() const {
  if (!elements_) throw std::logic_error("subgroup is not materialized");
  return *elements_;
}

bool Subgroup::contains(std::uint64_t idx) const {
  if (elements_) return std::binary_search(elements_->begin(), elements_->end(), idx);
  if (form_) {
    Coords c = spec_.coords(idx);
    std::uint64_t n = spec_.orders().front();
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += static_cast<std::uint64_t>((*form_)[i]) * c[i];
    return s % n == 0;
  }
  throw std::logic_error("subgroup has no membership test");
}

Subgroup kernel_of_form(const GroupSpec& spec, const Coords& w) {
  const auto& ord = spec.orders();
  if (std::adjacent_find(ord.begin(), ord.end(), std::not_equal_to<>()) != ord.end()) {
    throw std::invalid_argument("kernel_of_form needs a power of a single cyclic group");
  }
  if (w.size() != ord.size()) throw ShapeMismatch("form length differs from group rank");
  const std::uint64_t n = ord.front();
  std::uint64_t g = n;
  for (auto c : w) g = std::gcd(g, static_cast<std::uint64_t>(c % n));
  const std::uint64_t image = n / g;  // size of the image of the form

  Subgroup s;
  s.spec_ = spec;
  s.size_ = spec.size() / image;
  s.form_ = w;
  if (s.size_ <= group_limits().materialize_cap) {
    std::vector<std::uint64_t> elems;
    elems.reserve(s.size_);
    Coords c;
    for (std::uint64_t i = 0; i < spec.size(); ++i) {
      spec.coords(i, c);
      std::uint64_t v = 0;
      for (std::size_t k = 0; k < c.size(); ++k) v += static_cast<std::uint64_t>(w[k]) * c[k];
      if (v % n == 0) elems.push_back(i);
    }
    s.elements_ = std::move(elems);
  }
  return s;
}

Subgroup annihilator(const Subgroup& s) {
  const GroupSpec& spec = s.spec();
  if (spec.size() > group_limits().enumeration_cap) throw CapExceeded("dual too large to enumerate");
  const std::vector<std::uint64_t>& test =
      s.generators().empty() ? s.elements() : s.generators();
  std::vector<std::uint64_t> out;
  for (std::uint64_t chi = 0; chi < spec.size(); ++chi) {
    bool trivial = std::all_of(test.begin(), test.end(),
                               [&](std::uint64_t z) { return spec.pairing(chi, z) == 0; });
    if (trivial) out.push_back(chi);
  }
  return Subgroup::from_elements(spec, std::move(out), {});
}

ElementRange::ElementRange(const GroupSpec& spec) : spec_(spec) {
  if (spec.size() > group_limits().enumeration_cap) {
    throw CapExceeded("group of size " + std::to_string(spec.size()) + " exceeds the enumeration cap");
  }
}

ElementRange enumerate(const GroupSpec& spec) { return ElementRange(spec); }
ElementRange enumerate_dual(const GroupSpec& spec) { return ElementRange(spec); }

const std::vector<Permutation5>& s5_enumeration() {
  static const std::vector<Permutation5> perms = [] {
    std::vector<Permutation5> v;
    Permutation5 p{0, 1, 2, 3, 4};
    do {
      v.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return v;
  }();
  return perms;
}

Coords permute_vector(const Permutation5& perm, const Coords& v) {
  if (v.size() != 5) throw std::invalid_argument("permute_vector expects a length-5 vector");
  Coords out(5);
  for (std::size_t i = 0; i < 5; ++i) out[i] = v[perm[i]];
  return out;
}

}  // namespace weaktile

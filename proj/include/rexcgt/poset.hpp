#pragma once

// Finite posets with top and bottom, stored extensionally, and monotone
// maps between them.
//
// Posets are interned: two structurally equal posets (same element names,
// same order, same product factors) share one instance, so pointer equality
// is structural equality. Elements are kept sorted by name; an Element is an
// index into that list.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rexcgt {

using Element = std::uint32_t;

class Poset;
using PosetRef = std::shared_ptr<const Poset>;

class Poset {
 public:
  // Builds the reflexive-transitive closure of `generators` over `elements`.
  // Throws InputError on unknown names, duplicate names, antisymmetry
  // violations, or a missing top/bottom.
  static PosetRef make(std::string name, std::vector<std::string> elements,
                       const std::vector<std::pair<std::string, std::string>>& generators);

  static PosetRef boolean();  // bot < top
  static PosetRef unit();     // the one-element poset {0}
  static PosetRef chain(std::string name, const std::vector<std::string>& bottom_to_top);

  const std::string& name() const { return name_; }
  std::size_t size() const { return names_.size(); }
  const std::string& element_name(Element e) const { return names_.at(e); }
  const std::vector<std::string>& element_names() const { return names_; }
  std::optional<Element> find(std::string_view name) const;
  Element element(std::string_view name) const;

  bool leq(Element a, Element b) const { return order_[a * names_.size() + b] != 0; }
  bool leq(std::string_view a, std::string_view b) const;
  Element top() const { return top_; }
  Element bottom() const { return bottom_; }

  // True only for the multiplicative identity returned by unit().
  bool is_unit() const;

  bool is_product() const { return left_ != nullptr; }
  const PosetRef& left_factor() const { return left_; }
  const PosetRef& right_factor() const { return right_; }
  Element pair(Element a, Element b) const { return pair_.at(a * right_->size() + b); }
  std::pair<Element, Element> split(Element e) const { return split_.at(e); }

  // Hasse diagram edges (a covered by b), in element order.
  std::vector<std::pair<Element, Element>> covering_pairs() const;

  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  friend class PosetBuilder;
  Poset() = default;

  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::uint8_t> order_;
  Element top_ = 0;
  Element bottom_ = 0;
  PosetRef left_;
  PosetRef right_;
  std::vector<Element> pair_;
  std::vector<std::pair<Element, Element>> split_;
  std::uint64_t fingerprint_ = 0;
};

// Cartesian product with the componentwise order. The unit is absorbed:
// product(a, unit()) is `a` itself.
PosetRef product(const PosetRef& a, const PosetRef& b);

// The element (x, y) of product(a, b), honoring unit absorption.
Element pair_elements(const PosetRef& a, const PosetRef& b, Element x, Element y);

// Opposite order. Element names gain (or lose) a "^op" suffix; duals of
// products are products of duals; the unit is self-dual.
PosetRef dual(const PosetRef& p);
Element dual_element(const PosetRef& p, Element e);

// Text format: `poset <name>`, `elems <id>...`, `le <a> <b>`; `#` comments.
PosetRef parse_poset(std::string_view text);
std::string serialize_poset(const Poset& p);

struct Quotient {
  PosetRef poset;
  std::vector<Element> projection;  // input index -> class
};

// Collapses mutually-related elements of a preorder. Classes are named by
// joining their sorted member names with '='. Throws InputError if the
// relation is not reflexive and transitive.
Quotient quotient_preorder(std::string name, const std::vector<std::string>& elements,
                           const std::function<bool(std::size_t, std::size_t)>& preleq);

class MonotoneMap {
 public:
  // Throws InputError if `table` is not total or not order-preserving.
  MonotoneMap(PosetRef domain, PosetRef codomain, std::vector<Element> table);

  const PosetRef& domain() const { return domain_; }
  const PosetRef& codomain() const { return codomain_; }
  const std::vector<Element>& table() const { return table_; }
  Element operator()(Element x) const { return table_.at(x); }

  static bool is_monotone(const Poset& domain, const Poset& codomain,
                          const std::vector<Element>& table);

  friend bool operator==(const MonotoneMap& a, const MonotoneMap& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.table_ == b.table_;
  }

 private:
  PosetRef domain_;
  PosetRef codomain_;
  std::vector<Element> table_;
};

MonotoneMap identity_map(const PosetRef& p);
MonotoneMap constant_map(const PosetRef& domain, const PosetRef& codomain, Element value);
MonotoneMap compose(const MonotoneMap& outer, const MonotoneMap& inner);

// lambda(x^op, y) = top iff x <= y, on dual(p) x p.
MonotoneMap lambda_map(const PosetRef& p);
// rho(x, y^op) = top iff not x <= y, on p x dual(p).
MonotoneMap rho_map(const PosetRef& p);
MonotoneMap bool_and();
MonotoneMap bool_or();

// All monotone maps domain -> codomain, ordered pointwise. Map i is the
// element named "f<i>"; enumeration is lexicographic in the table.
struct HomPoset {
  PosetRef domain;
  PosetRef codomain;
  PosetRef poset;
  std::vector<MonotoneMap> maps;
  std::vector<Element> element_of_map;
  std::vector<std::size_t> map_of_element;

  const MonotoneMap& map_at(Element e) const { return maps.at(map_of_element.at(e)); }
};

HomPoset enumerate_monotone_maps(const PosetRef& domain, const PosetRef& codomain);

// The application map A x hom -> codomain, (a, f) |-> f(a).
MonotoneMap application_map(const HomPoset& hom);
Element apply_map(const HomPoset& hom, const PosetRef& over, Element a, Element f);

}  // namespace rexcgt

#include "rexcgt/poset.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "rexcgt/errors.hpp"

namespace rexcgt {

namespace {

constexpr std::string_view kOpSuffix = "^op";

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c == '{' || c == '}' || c == '|' || c == '#') return false;
    if (static_cast<unsigned char>(c) <= ' ') return false;
  }
  return true;
}

std::string toggle_op(const std::string& name) {
  if (name.size() > kOpSuffix.size() &&
      name.compare(name.size() - kOpSuffix.size(), kOpSuffix.size(), kOpSuffix) == 0) {
    return name.substr(0, name.size() - kOpSuffix.size());
  }
  return name + std::string(kOpSuffix);
}

}  // namespace

class PosetBuilder {
 public:
  // `order` is a full relation matrix (already closed) over `names`, in the
  // caller's order. Elements are re-sorted by name before interning.
  static PosetRef build(std::string name, std::vector<std::string> names,
                        std::vector<std::uint8_t> order, PosetRef left, PosetRef right,
                        std::vector<std::pair<Element, Element>> split) {
    const std::size_t n = names.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });

    auto p = std::shared_ptr<Poset>(new Poset());
    p->name_ = std::move(name);
    p->names_.resize(n);
    p->order_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) p->names_[i] = names[perm[i]];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p->order_[i * n + j] = order[perm[i] * n + perm[j]];

    for (std::size_t i = 0; i + 1 < n; ++i)
      if (p->names_[i] == p->names_[i + 1]) throw InputError("duplicate element '" + p->names_[i] + "'");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && p->order_[i * n + j] && p->order_[j * n + i])
          throw InputError("antisymmetry violated by '" + p->names_[i] + "' and '" + p->names_[j] + "'");

    bool found_top = false, found_bottom = false;
    for (std::size_t i = 0; i < n; ++i) {
      bool is_top = true, is_bottom = true;
      for (std::size_t j = 0; j < n; ++j) {
        is_top = is_top && p->order_[j * n + i];
        is_bottom = is_bottom && p->order_[i * n + j];
      }
      if (is_top) p->top_ = static_cast<Element>(i), found_top = true;
      if (is_bottom) p->bottom_ = static_cast<Element>(i), found_bottom = true;
    }
    if (!found_top) throw InputError("poset '" + p->name_ + "' has no greatest element");
    if (!found_bottom) throw InputError("poset '" + p->name_ + "' has no least element");

    if (left) {
      std::vector<std::size_t> inverse(n);
      for (std::size_t i = 0; i < n; ++i) inverse[perm[i]] = i;
      p->left_ = std::move(left);
      p->right_ = std::move(right);
      p->split_.resize(n);
      p->pair_.assign(p->left_->size() * p->right_->size(), 0);
      for (std::size_t old = 0; old < n; ++old) {
        auto [a, b] = split[old];
        p->split_[inverse[old]] = {a, b};
        p->pair_[a * p->right_->size() + b] = static_cast<Element>(inverse[old]);
      }
    }

    std::uint64_t h = hash_string(p->name_);
    for (const auto& s : p->names_) h = mix(h, hash_string(s));
    for (auto bit : p->order_) h = mix(h, bit);
    if (p->left_) h = mix(mix(h, p->left_->fingerprint()), p->right_->fingerprint());
    p->fingerprint_ = h;
    return intern(std::move(p));
  }

 private:
  static PosetRef intern(std::shared_ptr<Poset> p) {
    static std::mutex mutex;
    static std::unordered_multimap<std::uint64_t, PosetRef> table;
    std::lock_guard<std::mutex> lock(mutex);
    auto [lo, hi] = table.equal_range(p->fingerprint_);
    for (auto it = lo; it != hi; ++it) {
      const Poset& q = *it->second;
      if (q.name_ == p->name_ && q.names_ == p->names_ && q.order_ == p->order_ &&
          q.left_ == p->left_ && q.right_ == p->right_)
        return it->second;
    }
    PosetRef ref = std::move(p);
    table.emplace(ref->fingerprint(), ref);
    return ref;
  }
};

PosetRef Poset::make(std::string name, std::vector<std::string> elements,
                     const std::vector<std::pair<std::string, std::string>>& generators) {
  const std::size_t n = elements.size();
  if (n == 0) throw InputError("poset '" + name + "' has no elements");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!valid_identifier(elements[i])) throw InputError("invalid element name '" + elements[i] + "'");
    if (!index.emplace(elements[i], i).second) throw InputError("duplicate element '" + elements[i] + "'");
  }
  std::vector<std::uint8_t> order(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) order[i * n + i] = 1;
  for (const auto& [a, b] : generators) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) throw InputError("unknown element '" + a + "'");
    if (ib == index.end()) throw InputError("unknown element '" + b + "'");
    order[ia->second * n + ib->second] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (order[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (order[k * n + j]) order[i * n + j] = 1;
  return PosetBuilder::build(std::move(name), std::move(elements), std::move(order), nullptr,
                             nullptr, {});
}

PosetRef Poset::boolean() {
  static const PosetRef b = make("bool", {"bot", "top"}, {{"bot", "top"}});
  return b;
}

PosetRef Poset::unit() {
  static const PosetRef u = make("one", {"0"}, {});
  return u;
}

PosetRef Poset::chain(std::string name, const std::vector<std::string>& bottom_to_top) {
  std::vector<std::pair<std::string, std::string>> gens;
  for (std::size_t i = 0; i + 1 < bottom_to_top.size(); ++i)
    gens.emplace_back(bottom_to_top[i], bottom_to_top[i + 1]);
  return make(std::move(name), bottom_to_top, gens);
}

bool Poset::is_unit() const { return this == unit().get(); }

std::optional<Element> Poset::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<Element>(it - names_.begin());
}

Element Poset::element(std::string_view name) const {
  auto e = find(name);
  if (!e) throw InputError("unknown element '" + std::string(name) + "' in poset '" + name_ + "'");
  return *e;
}

bool Poset::leq(std::string_view a, std::string_view b) const { return leq(element(a), element(b)); }

std::vector<std::pair<Element, Element>> Poset::covering_pairs() const {
  std::vector<std::pair<Element, Element>> out;
  const auto n = static_cast<Element>(size());
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool covered = true;
      for (Element c = 0; c < n && covered; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) covered = false;
      if (covered) out.emplace_back(a, b);
    }
  return out;
}

namespace {

template <class Key>
struct PosetCache {
  std::mutex mutex;
  std::map<Key, PosetRef> table;

  template <class Fn>
  PosetRef get(const Key& key, Fn make) {
    {
      std::lock_guard<std::mutex> lock(mutex);
      if (auto it = table.find(key); it != table.end()) return it->second;
    }
    PosetRef p = make();
    std::lock_guard<std::mutex> lock(mutex);
    return table.emplace(key, p).first->second;
  }
};

PosetRef build_product(const PosetRef& a, const PosetRef& b);
PosetRef build_dual(const PosetRef& p);

}  // namespace

PosetRef product(const PosetRef& a, const PosetRef& b) {
  if (a->is_unit()) return b;
  if (b->is_unit()) return a;
  static PosetCache<std::pair<const Poset*, const Poset*>> cache;
  return cache.get({a.get(), b.get()}, [&] { return build_product(a, b); });
}

PosetRef dual(const PosetRef& p) {
  if (p->is_unit()) return p;
  static PosetCache<const Poset*> cache;
  return cache.get(p.get(), [&] { return build_dual(p); });
}

namespace {

PosetRef build_product(const PosetRef& a, const PosetRef& b) {
  const std::size_t na = a->size(), nb = b->size(), n = na * nb;
  std::vector<std::string> names(n);
  std::vector<std::pair<Element, Element>> split(n);
  std::vector<std::uint8_t> order(n * n, 0);
  for (Element x = 0; x < na; ++x)
    for (Element y = 0; y < nb; ++y) {
      names[x * nb + y] = "(" + a->element_name(x) + "," + b->element_name(y) + ")";
      split[x * nb + y] = {x, y};
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      order[i * n + j] = a->leq(split[i].first, split[j].first) && b->leq(split[i].second, split[j].second);
  return PosetBuilder::build(a->name() + "*" + b->name(), std::move(names), std::move(order), a, b,
                             std::move(split));
}

PosetRef build_dual(const PosetRef& p) {
  if (p->is_product()) return product(dual(p->left_factor()), dual(p->right_factor()));
  const std::size_t n = p->size();
  std::vector<std::string> names(n);
  std::vector<std::uint8_t> order(n * n, 0);
  for (Element i = 0; i < n; ++i) names[i] = toggle_op(p->element_name(i));
  for (Element i = 0; i < n; ++i)
    for (Element j = 0; j < n; ++j) order[i * n + j] = p->leq(j, i);
  return PosetBuilder::build(toggle_op(p->name()), std::move(names), std::move(order), nullptr,
                             nullptr, {});
}

}  // namespace

Element pair_elements(const PosetRef& a, const PosetRef& b, Element x, Element y) {
  if (a->is_unit()) return y;
  if (b->is_unit()) return x;
  return product(a, b)->pair(x, y);
}

Element dual_element(const PosetRef& p, Element e) {
  if (p->is_unit()) return e;
  if (p->is_product()) {
    auto [x, y] = p->split(e);
    PosetRef dl = dual(p->left_factor()), dr = dual(p->right_factor());
    return product(dl, dr)->pair(dual_element(p->left_factor(), x), dual_element(p->right_factor(), y));
  }
  return dual(p)->element(toggle_op(p->element_name(e)));
}

PosetRef parse_poset(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line, name;
  std::vector<std::string> elems;
  std::vector<std::pair<std::string, std::string>> gens;
  int lineno = 0;
  bool saw_elems = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
    if (kw == "poset") {
      if (!(ls >> name)) throw InputError(where() + "missing poset name");
    } else if (kw == "elems") {
      std::string id;
      while (ls >> id) elems.push_back(id);
      saw_elems = true;
    } else if (kw == "le") {
      std::string a, b, extra;
      if (!(ls >> a >> b) || (ls >> extra)) throw InputError(where() + "expected 'le <a> <b>'");
      gens.emplace_back(a, b);
    } else {
      throw InputError(where() + "unknown keyword '" + kw + "'");
    }
  }
  if (name.empty()) throw InputError("missing 'poset <name>' line");
  if (!saw_elems) throw InputError("missing 'elems' line");
  return Poset::make(name, elems, gens);
}

std::string serialize_poset(const Poset& p) {
  std::ostringstream out;
  out << "poset " << p.name() << "\nelems";
  for (const auto& e : p.element_names()) out << ' ' << e;
  out << '\n';
  for (auto [a, b] : p.covering_pairs())
    out << "le " << p.element_name(a) << ' ' << p.element_name(b) << '\n';
  return out.str();
}

Quotient quotient_preorder(std::string name, const std::vector<std::string>& elements,
                           const std::function<bool(std::size_t, std::size_t)>& preleq) {
  const std::size_t n = elements.size();
  std::vector<std::uint8_t> rel(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rel[i * n + j] = preleq(i, j);
  for (std::size_t i = 0; i < n; ++i)
    if (!rel[i * n + i]) throw InputError("preorder is not reflexive at '" + elements[i] + "'");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rel[i * n + j])
        for (std::size_t k = 0; k < n; ++k)
          if (rel[j * n + k] && !rel[i * n + k])
            throw InputError("preorder is not transitive: '" + elements[i] + "' <= '" + elements[j] +
                             "' <= '" + elements[k] + "'");

  std::vector<std::size_t> cls(n, n);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i] != n) continue;
    cls[i] = members.size();
    members.push_back({i});
    for (std::size_t j = i + 1; j < n; ++j)
      if (cls[j] == n && rel[i * n + j] && rel[j * n + i]) {
        cls[j] = cls[i];
        members.back().push_back(j);
      }
  }
  std::vector<std::string> names;
  for (auto& m : members) {
    std::vector<std::string> ms;
    for (auto i : m) ms.push_back(elements[i]);
    std::sort(ms.begin(), ms.end());
    std::string joined;
    for (const auto& s : ms) joined += (joined.empty() ? "" : "=") + s;
    names.push_back(joined);
  }
  std::vector<std::pair<std::string, std::string>> gens;
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = 0; b < members.size(); ++b)
      if (rel[members[a][0] * n + members[b][0]]) gens.emplace_back(names[a], names[b]);
  Quotient q;
  q.poset = Poset::make(std::move(name), names, gens);
  q.projection.resize(n);
  for (std::size_t i = 0; i < n; ++i) q.projection[i] = q.poset->element(names[cls[i]]);
  return q;
}

MonotoneMap::MonotoneMap(PosetRef domain, PosetRef codomain, std::vector<Element> table)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
  if (table_.size() != domain_->size()) throw InputError("map table is not total on its domain");
  for (Element v : table_)
    if (v >= codomain_->size()) throw InputError("map value outside codomain");
  if (!is_monotone(*domain_, *codomain_, table_)) throw InputError("map is not order-preserving");
}

bool MonotoneMap::is_monotone(const Poset& domain, const Poset& codomain,
                              const std::vector<Element>& table) {
  const auto n = static_cast<Element>(domain.size());
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (domain.leq(a, b) && !codomain.leq(table[a], table[b])) return false;
  return true;
}

MonotoneMap identity_map(const PosetRef& p) {
  std::vector<Element> t(p->size());
  std::iota(t.begin(), t.end(), 0);
  return MonotoneMap(p, p, std::move(t));
}

MonotoneMap constant_map(const PosetRef& domain, const PosetRef& codomain, Element value) {
  return MonotoneMap(domain, codomain, std::vector<Element>(domain->size(), value));
}

MonotoneMap compose(const MonotoneMap& outer, const MonotoneMap& inner) {
  if (inner.codomain() != outer.domain()) throw InputError("cannot compose maps: poset mismatch");
  std::vector<Element> t(inner.domain()->size());
  for (Element x = 0; x < t.size(); ++x) t[x] = outer(inner(x));
  return MonotoneMap(inner.domain(), outer.codomain(), std::move(t));
}

MonotoneMap lambda_map(const PosetRef& p) {
  PosetRef d = dual(p);
  PosetRef dom = product(d, p);
  const PosetRef& b = Poset::boolean();
  std::vector<Element> t(dom->size());
  for (Element x = 0; x < p->size(); ++x)
    for (Element y = 0; y < p->size(); ++y)
      t[pair_elements(d, p, dual_element(p, x), y)] = p->leq(x, y) ? b->top() : b->bottom();
  return MonotoneMap(dom, b, std::move(t));
}

MonotoneMap rho_map(const PosetRef& p) {
  PosetRef d = dual(p);
  PosetRef dom = product(p, d);
  const PosetRef& b = Poset::boolean();
  std::vector<Element> t(dom->size());
  for (Element x = 0; x < p->size(); ++x)
    for (Element y = 0; y < p->size(); ++y)
      t[pair_elements(p, d, x, dual_element(p, y))] = p->leq(x, y) ? b->bottom() : b->top();
  return MonotoneMap(dom, b, std::move(t));
}

namespace {
MonotoneMap bool_binary(bool (*op)(bool, bool)) {
  const PosetRef& b = Poset::boolean();
  PosetRef dom = product(b, b);
  std::vector<Element> t(dom->size());
  for (Element x = 0; x < 2; ++x)
    for (Element y = 0; y < 2; ++y)
      t[dom->pair(x, y)] = op(x == b->top(), y == b->top()) ? b->top() : b->bottom();
  return MonotoneMap(dom, b, std::move(t));
}
}  // namespace

MonotoneMap bool_and() {
  return bool_binary([](bool x, bool y) { return x && y; });
}

MonotoneMap bool_or() {
  return bool_binary([](bool x, bool y) { return x || y; });
}

HomPoset enumerate_monotone_maps(const PosetRef& domain, const PosetRef& codomain) {
  const auto n = static_cast<Element>(domain->size());
  const auto m = static_cast<Element>(codomain->size());
  std::vector<std::vector<Element>> tables;
  std::vector<Element> t(n);
  std::function<void(Element)> rec = [&](Element i) {
    if (i == n) {
      tables.push_back(t);
      return;
    }
    for (Element v = 0; v < m; ++v) {
      bool ok = true;
      for (Element j = 0; j < i && ok; ++j) {
        if (domain->leq(j, i) && !codomain->leq(t[j], v)) ok = false;
        if (domain->leq(i, j) && !codomain->leq(v, t[j])) ok = false;
      }
      if (!ok) continue;
      t[i] = v;
      rec(i + 1);
    }
  };
  rec(0);

  const std::size_t k = tables.size();
  std::vector<std::string> names(k);
  for (std::size_t i = 0; i < k; ++i) names[i] = "f" + std::to_string(i);
  std::vector<std::pair<std::string, std::string>> gens;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      bool le = true;
      for (Element x = 0; x < n && le; ++x) le = codomain->leq(tables[a][x], tables[b][x]);
      if (le) gens.emplace_back(names[a], names[b]);
    }

  HomPoset h;
  h.domain = domain;
  h.codomain = codomain;
  h.poset = Poset::make("hom(" + domain->name() + "," + codomain->name() + ")", names, gens);
  h.element_of_map.resize(k);
  h.map_of_element.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    h.maps.emplace_back(domain, codomain, tables[i]);
    Element e = h.poset->element(names[i]);
    h.element_of_map[i] = e;
    h.map_of_element[e] = i;
  }
  return h;
}

MonotoneMap application_map(const HomPoset& hom) {
  PosetRef dom = product(hom.domain, hom.poset);
  std::vector<Element> t(dom->size());
  for (Element a = 0; a < hom.domain->size(); ++a)
    for (Element f = 0; f < hom.poset->size(); ++f)
      t[pair_elements(hom.domain, hom.poset, a, f)] = hom.map_at(f)(a);
  return MonotoneMap(dom, hom.codomain, std::move(t));
}

Element apply_map(const HomPoset& hom, const PosetRef& over, Element a, Element f) {
  if (over != hom.domain) throw InputError("element's poset is not the domain of the hom-poset");
  if (a >= hom.domain->size() || f >= hom.poset->size()) throw InputError("element out of range");
  return hom.map_at(f)(a);
}

}  // namespace rexcgt

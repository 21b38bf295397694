#include "sigmacalc/hopf.hpp"

#include <stdexcept>

#include "sigmacalc/expression_parser.hpp"

namespace sigmacalc {

// ---------------------------------------------------------------------------
// Tensor helpers

Tensor multiply(const Tensor& x, const Tensor& y, const Legs& legs) {
  Tensor out;
  for (const auto& [u, a] : x) {
    for (const auto& [v, b] : y) {
      Tensor term(TensorKey{}, a * b);
      for (std::size_t i = 0; i < legs.size(); ++i) {
        term = tensor_of(term, legs[i]->normal_form(u[i] + v[i]));
        if (term.is_zero()) break;
      }
      out += term;
    }
  }
  return out;
}

Tensor normal_form(const Tensor& x, const Legs& legs) {
  Tensor out;
  for (const auto& [k, c] : x) {
    Tensor term(TensorKey{}, c);
    for (std::size_t i = 0; i < legs.size(); ++i) {
      term = tensor_of(term, legs[i]->normal_form(k[i]));
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

Tensor map_leg(const Tensor& x, std::size_t leg, const std::function<Tensor(const Word&)>& f) {
  Tensor out;
  for (const auto& [k, c] : x) {
    const Tensor image = f(k[leg]);
    for (const auto& [m, d] : image) {
      TensorKey key(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(leg));
      key.insert(key.end(), m.begin(), m.end());
      key.insert(key.end(), k.begin() + static_cast<std::ptrdiff_t>(leg) + 1, k.end());
      out.add_term(key, c * d);
    }
  }
  return out;
}

Tensor merge_legs(const Tensor& x, std::size_t i, const Presentation& p) {
  Tensor out;
  for (const auto& [k, c] : x) {
    const NCElement product = p.normal_form(k[i] + k[i + 1]);
    for (const auto& [w, d] : product) {
      TensorKey key = k;
      key[i] = w;
      key.erase(key.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      out.add_term(key, c * d);
    }
  }
  return out;
}

Tensor permute_leg(const Tensor& x, std::size_t from, std::size_t to) {
  Tensor out;
  for (const auto& [k, c] : x) {
    TensorKey key = k;
    Word w = key[from];
    key.erase(key.begin() + static_cast<std::ptrdiff_t>(from));
    key.insert(key.begin() + static_cast<std::ptrdiff_t>(to), std::move(w));
    out.add_term(key, c);
  }
  return out;
}

Tensor as_tensor(const NCElement& x) {
  Tensor t;
  for (const auto& [w, c] : x) t.add_term({w}, c);
  return t;
}

NCElement as_element(const Tensor& x) {
  NCElement r;
  for (const auto& [k, c] : x) {
    if (k.size() != 1) throw std::logic_error("expected a single tensor leg");
    r.add_term(k.front(), c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Structure-table parsing

namespace {

std::vector<const StructureLine*> lines_for(const AlgebraBlock& block, const std::string& keyword,
                                            bool required) {
  const Presentation& p = *block.presentation;
  std::vector<const StructureLine*> table(p.generators().size(), nullptr);
  for (const auto& line : block.structure) {
    if (line.keyword != keyword) continue;
    const std::size_t i = *p.index_of(line.symbol);
    if (table[i]) throw ParseError("duplicate " + keyword + " for '" + line.symbol + "'", line.line, line.column);
    table[i] = &line;
  }
  if (required) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (!table[i]) {
        throw std::invalid_argument("missing " + keyword + " for generator '" +
                                    p.generators()[i].symbol + "' in algebra " + p.name());
      }
    }
  }
  return table;
}

bool any_line(const AlgebraBlock& block, const std::string& keyword) {
  for (const auto& line : block.structure) {
    if (line.keyword == keyword) return true;
  }
  return false;
}

Tensor parse_structure_tensor(const StructureLine& line, const Legs& legs) {
  std::vector<std::vector<std::string>> tables;
  for (const auto* p : legs) tables.push_back(p->symbols());
  return normal_form(parse_tensor_expression(line.expression, tables, line.line, line.column - 1),
                     legs);
}

NCElement parse_structure_element(const StructureLine& line, const Presentation& p) {
  return p.normal_form(parse_expression(line.expression, p.symbols(), line.line, line.column - 1));
}

}  // namespace

// ---------------------------------------------------------------------------
// HopfAlgebra

HopfAlgebra::HopfAlgebra(PresentationPtr algebra, std::vector<Tensor> coproduct,
                         std::vector<RationalFunction> counit, std::vector<NCElement> antipode,
                         std::optional<std::vector<NCElement>> antipode_inverse)
    : algebra_(std::move(algebra)),
      coproduct_(std::move(coproduct)),
      counit_(std::move(counit)),
      antipode_(std::move(antipode)),
      antipode_inverse_(std::move(antipode_inverse)) {
  const std::size_t n = algebra_->generators().size();
  if (coproduct_.size() != n || counit_.size() != n || antipode_.size() != n ||
      (antipode_inverse_ && antipode_inverse_->size() != n)) {
    throw std::invalid_argument("structure table size does not match generator count");
  }
}

HopfPtr HopfAlgebra::from_block(const AlgebraBlock& block) {
  PresentationPtr p = block.presentation;
  const Legs hh{p.get(), p.get()};
  std::vector<Tensor> delta;
  for (const auto* line : lines_for(block, "delta", true)) {
    delta.push_back(parse_structure_tensor(*line, hh));
  }
  std::vector<RationalFunction> eps;
  for (const auto* line : lines_for(block, "eps", true)) {
    const NCElement value = parse_structure_element(*line, *p);
    if (value.size() > 1 || (value.size() == 1 && !value.begin()->first.empty())) {
      throw ParseError("counit value must be a scalar", line->line, line->column);
    }
    eps.push_back(value.coefficient(Word{}));
  }
  std::vector<NCElement> s;
  for (const auto* line : lines_for(block, "antipode", true)) {
    s.push_back(parse_structure_element(*line, *p));
  }
  std::optional<std::vector<NCElement>> s_inv;
  if (any_line(block, "antipode_inv")) {
    s_inv.emplace();
    for (const auto* line : lines_for(block, "antipode_inv", true)) {
      s_inv->push_back(parse_structure_element(*line, *p));
    }
  }
  return std::make_shared<const HopfAlgebra>(std::move(p), std::move(delta), std::move(eps),
                                             std::move(s), std::move(s_inv));
}

Tensor HopfAlgebra::coproduct(const Word& w) const {
  {
    std::lock_guard lock(mutex_);
    auto it = coproduct_cache_.find(w);
    if (it != coproduct_cache_.end()) return it->second;
  }
  const Legs hh{algebra_.get(), algebra_.get()};
  Tensor result;
  if (w.size() <= 1) {
    result = w.empty() ? Tensor(TensorKey{Word{}, Word{}})
                       : coproduct_[static_cast<std::size_t>(w[0])];
  } else {
    // Split in half so prefixes are shared through the cache.
    const std::size_t mid = w.size() / 2;
    result = multiply(coproduct(w.substr(0, mid)), coproduct(w.substr(mid)), hh);
  }
  std::lock_guard lock(mutex_);
  coproduct_cache_.emplace(w, result);
  return result;
}

Tensor HopfAlgebra::coproduct(const NCElement& x) const {
  Tensor out;
  for (const auto& [w, c] : x) out += coproduct(w) * c;
  return out;
}

RationalFunction HopfAlgebra::counit(const Word& w) const {
  RationalFunction r(1);
  for (char c : w) {
    r *= counit_[static_cast<std::size_t>(c)];
    if (r.is_zero()) break;
  }
  return r;
}

RationalFunction HopfAlgebra::counit(const NCElement& x) const {
  RationalFunction r;
  for (const auto& [w, c] : x) r += c * counit(w);
  return r;
}

NCElement HopfAlgebra::anti_extend(const Word& w, const std::vector<NCElement>& table) const {
  NCElement r = algebra_->one();
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    r = algebra_->multiply(r, table[static_cast<std::size_t>(*it)]);
  }
  return r;
}

NCElement HopfAlgebra::antipode(const Word& w) const { return anti_extend(w, antipode_); }

NCElement HopfAlgebra::antipode(const NCElement& x) const {
  NCElement out;
  for (const auto& [w, c] : x) out += antipode(w) * c;
  return out;
}

NCElement HopfAlgebra::antipode_inverse(const NCElement& x) const {
  const auto& table = antipode_inverse_ ? *antipode_inverse_ : antipode_;
  NCElement out;
  for (const auto& [w, c] : x) out += anti_extend(w, table) * c;
  return out;
}

NCElement HopfAlgebra::plus_part(const NCElement& h) const {
  NCElement r = h;
  r.add_term(Word{}, -counit(h));
  return r;
}

// ---------------------------------------------------------------------------
// ComoduleAlgebra

ComoduleAlgebra::ComoduleAlgebra(PresentationPtr algebra, HopfPtr hopf,
                                 std::vector<Tensor> coaction)
    : algebra_(std::move(algebra)), hopf_(std::move(hopf)), coaction_(std::move(coaction)) {
  if (coaction_.size() != algebra_->generators().size()) {
    throw std::invalid_argument("coaction table size does not match generator count");
  }
}

ComodulePtr ComoduleAlgebra::from_block(const AlgebraBlock& block, HopfPtr hopf) {
  PresentationPtr p = block.presentation;
  const Legs ah{p.get(), &hopf->algebra()};
  std::vector<Tensor> delta;
  for (const auto* line : lines_for(block, "delta", true)) {
    delta.push_back(parse_structure_tensor(*line, ah));
  }
  return std::make_shared<const ComoduleAlgebra>(std::move(p), std::move(hopf), std::move(delta));
}

Tensor ComoduleAlgebra::coaction(const Word& w) const {
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
  }
  Tensor result;
  if (w.size() <= 1) {
    result = w.empty() ? Tensor(TensorKey{Word{}, Word{}}) : coaction_[static_cast<std::size_t>(w[0])];
  } else {
    const std::size_t mid = w.size() / 2;
    result = multiply(coaction(w.substr(0, mid)), coaction(w.substr(mid)), legs_ah());
  }
  std::lock_guard lock(mutex_);
  cache_.emplace(w, result);
  return result;
}

Tensor ComoduleAlgebra::coaction(const NCElement& x) const {
  Tensor out;
  for (const auto& [w, c] : x) out += coaction(w) * c;
  return out;
}

Tensor ComoduleAlgebra::double_coaction(const Word& w) const {
  return map_leg(coaction(w), 0, [this](const Word& u) { return coaction(u); });
}

Tensor canonical_map(const ComoduleAlgebra& c, const Tensor& x) {
  const Legs ah = c.legs_ah();
  Tensor out;
  for (const auto& [k, coeff] : x) {
    out += multiply(Tensor(TensorKey{k[0], Word{}}), c.coaction(k[1]), ah) * coeff;
  }
  return out;
}

Tensor diagonal_coaction(const ComoduleAlgebra& c, const Tensor& x) {
  const Presentation& h = c.hopf().algebra();
  Tensor out;
  for (const auto& [k, coeff] : x) {
    for (const auto& [u, d] : c.coaction(k[0])) {
      for (const auto& [v, e] : c.coaction(k[1])) {
        for (const auto& [w, f] : h.normal_form(u[1] + v[1])) {
          out.add_term({u[0], v[0], w}, coeff * d * e * f);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coordinates

WordCoordinates word_coordinates(const Presentation& p, std::size_t degree) {
  return WordCoordinates(p.basis_up_to_degree(degree),
                         [&p](const Word& w) { return p.word_string(w); });
}

TensorCoordinates tensor_coordinates(const std::vector<std::vector<Word>>& leg_words,
                                     const Legs& legs) {
  std::vector<TensorKey> keys{TensorKey{}};
  for (const auto& words : leg_words) {
    std::vector<TensorKey> next;
    next.reserve(keys.size() * words.size());
    for (const auto& k : keys) {
      for (const auto& w : words) {
        TensorKey key = k;
        key.push_back(w);
        next.push_back(std::move(key));
      }
    }
    keys = std::move(next);
  }
  return TensorCoordinates(std::move(keys), [&legs](const TensorKey& k) {
    return format_tensor(Tensor(k), legs);
  });
}

// ---------------------------------------------------------------------------
// Axiom suites

namespace {

struct FirstFailure {
  std::size_t checked = 0;
  std::string witness;
  bool ok() const { return witness.empty(); }
};

template <class Pred>
FirstFailure scan(const std::vector<Word>& words, const Presentation& p, Pred&& pred) {
  FirstFailure f;
  for (const auto& w : words) {
    ++f.checked;
    std::string why = pred(w);
    if (!why.empty()) {
      f.witness = p.word_string(w) + ": " + why;
      break;
    }
  }
  return f;
}

std::string differs(const Tensor& lhs, const Tensor& rhs, const Legs& legs) {
  if (lhs == rhs) return {};
  return "difference " + format_tensor(lhs - rhs, legs);
}

std::string differs(const NCElement& lhs, const NCElement& rhs, const Presentation& p) {
  if (lhs == rhs) return {};
  return "difference " + p.to_string(lhs - rhs);
}

std::string basis_detail(std::size_t count, std::size_t degree) {
  return std::to_string(count) + " basis words up to length " + std::to_string(degree);
}

std::string relation_text(const Presentation& p, const RewriteRule& r) {
  return p.word_string(r.lead) + " = " + p.to_string(r.replacement);
}

}  // namespace

CheckList verify_bialgebra_axioms(const HopfAlgebra& h, std::size_t degree) {
  const Presentation& p = h.algebra();
  const Legs h1{&p};
  const Legs hh{&p, &p};
  const Legs hhh{&p, &p, &p};
  const auto basis = p.basis_up_to_degree(degree);
  CheckList out;
  auto delta_leg = [&h](const Word& u) { return h.coproduct(u); };
  auto counit_leg = [&h](const Word& u) { return Tensor(TensorKey{}, h.counit(u)); };
  auto antipode_leg = [&h](const Word& u) { return as_tensor(h.antipode(u)); };

  {
    CheckTimer timer;
    std::string witness;
    for (const auto& rule : p.rules()) {
      const NCElement rhs = rule.replacement;
      std::string why = differs(h.coproduct(rule.lead), h.coproduct(rhs), hh);
      if (why.empty() && h.counit(rule.lead) != h.counit(rhs)) why = "counit differs";
      if (why.empty()) why = differs(h.antipode(rule.lead), h.antipode(rhs), p);
      if (why.empty() && h.has_antipode_inverse_table()) {
        why = differs(h.antipode_inverse(NCElement(rule.lead)), h.antipode_inverse(rhs), p);
      }
      if (!why.empty()) {
        witness = relation_text(p, rule) + ": " + why;
        break;
      }
    }
    auto e = make_entry("hopf", "structure-maps-respect-relations", "hopf.relations",
                        witness.empty(), witness,
                        std::to_string(p.rules().size()) + " relations");
    e.elapsed_ms = timer.elapsed_ms();
    out.push_back(std::move(e));
  }

  auto add = [&](const char* check, const char* anchor, auto&& pred) {
    CheckTimer timer;
    const FirstFailure f = scan(basis, p, pred);
    auto e = make_entry("hopf", check, anchor, f.ok(), f.witness, basis_detail(f.checked, degree));
    e.elapsed_ms = timer.elapsed_ms();
    out.push_back(std::move(e));
  };

  add("coassociativity", "hopf.coassoc", [&](const Word& w) {
    const Tensor d = h.coproduct(w);
    return differs(map_leg(d, 0, delta_leg), map_leg(d, 1, delta_leg), hhh);
  });
  add("counit", "hopf.counit", [&](const Word& w) {
    const Tensor d = h.coproduct(w);
    const Tensor id = Tensor(TensorKey{w});
    std::string why = differs(map_leg(d, 0, counit_leg), id, h1);
    if (why.empty()) why = differs(map_leg(d, 1, counit_leg), id, h1);
    return why;
  });
  add("antipode", "hopf.antipode", [&](const Word& w) {
    const Tensor d = h.coproduct(w);
    const Tensor unit(TensorKey{Word{}}, h.counit(w));
    std::string why = differs(merge_legs(map_leg(d, 0, antipode_leg), 0, p), unit, h1);
    if (why.empty()) why = differs(merge_legs(map_leg(d, 1, antipode_leg), 0, p), unit, h1);
    return why;
  });
  add("antipode-bijective", "hopf.antipode-bijective", [&](const Word& w) {
    const NCElement x(w);
    std::string why = differs(h.antipode_inverse(h.antipode(x)), x, p);
    if (why.empty()) why = differs(h.antipode(h.antipode_inverse(x)), x, p);
    return why;
  });
  return out;
}

CheckList verify_comodule_axioms(const ComoduleAlgebra& c, std::size_t degree) {
  const Presentation& a = c.algebra();
  const HopfAlgebra& h = c.hopf();
  const Legs a1{&a};
  const Legs ahh{&a, &h.algebra(), &h.algebra()};
  const auto basis = a.basis_up_to_degree(degree);
  CheckList out;

  {
    CheckTimer timer;
    std::string witness;
    for (const auto& rule : a.rules()) {
      std::string why = differs(c.coaction(rule.lead), c.coaction(rule.replacement), c.legs_ah());
      if (!why.empty()) {
        witness = relation_text(a, rule) + ": " + why;
        break;
      }
    }
    auto e = make_entry("hopf", "coaction-algebra-map", "comodule.algebra-map", witness.empty(),
                        witness, std::to_string(a.rules().size()) + " relations");
    e.elapsed_ms = timer.elapsed_ms();
    out.push_back(std::move(e));
  }

  auto add = [&](const char* check, const char* anchor, auto&& pred) {
    CheckTimer timer;
    const FirstFailure f = scan(basis, a, pred);
    auto e = make_entry("hopf", check, anchor, f.ok(), f.witness, basis_detail(f.checked, degree));
    e.elapsed_ms = timer.elapsed_ms();
    out.push_back(std::move(e));
  };
  add("coaction-coassociativity", "comodule.coassoc", [&](const Word& w) {
    const Tensor rhs = map_leg(c.coaction(w), 1, [&h](const Word& u) { return h.coproduct(u); });
    return differs(c.double_coaction(w), rhs, ahh);
  });
  add("coaction-counit", "comodule.counit", [&](const Word& w) {
    const Tensor lhs = map_leg(c.coaction(w), 1,
                               [&h](const Word& u) { return Tensor(TensorKey{}, h.counit(u)); });
    return differs(lhs, Tensor(TensorKey{w}), a1);
  });
  return out;
}

SubspaceBasis coinvariants_up_to(const ComoduleAlgebra& c, std::size_t degree) {
  const WordCoordinates coords = word_coordinates(c.algebra(), degree);
  KeyIndexer<TensorKey> codomain;
  std::vector<SparseVector> images;
  images.reserve(coords.size());
  for (const auto& w : coords.keys()) {
    Tensor image = c.coaction(w);
    image.add_term({w, Word{}}, RationalFunction(-1));
    images.push_back(codomain.vector(image));
  }
  return kernel(coords.ambient(), images, codomain.size());
}

ChargeDecomposition charge_decompose(const NCElement& a, const ComoduleAlgebra& c) {
  const Presentation& p = c.algebra();
  const HopfAlgebra& h = c.hopf();
  ChargeDecomposition out{a, {}};
  for (const auto& [w, coeff] : a) out.components[p.charge(w)].add_term(w, coeff);
  if (out.components.empty()) out.components[0] = NCElement();
  for (const auto& [n, component] : out.components) {
    if (component.is_zero()) continue;
    // The weight g_n is read off from the first term and must be group-like.
    const Tensor first = c.coaction(component.begin()->first);
    if (first.size() != 1) throw NotChargeGraded();
    const auto& [key, value] = *first.begin();
    if (key[0] != component.begin()->first || !value.is_one()) throw NotChargeGraded();
    const NCElement g(key[1]);
    if (h.coproduct(g) != tensor_of(g, g) || !h.counit(g).is_one()) throw NotChargeGraded();
    if (c.coaction(component) != tensor_of(component, g)) throw NotChargeGraded();
  }
  return out;
}

Tensor adjoint_coaction(const HopfAlgebra& h, const NCElement& x) {
  if (!h.counit(x).is_zero()) {
    throw std::invalid_argument("adjoint coaction requires an element of counit zero");
  }
  const Presentation& p = h.algebra();
  const Tensor d2 = map_leg(h.coproduct(x), 0, [&h](const Word& u) { return h.coproduct(u); });
  Tensor out;
  for (const auto& [k, c] : d2) {
    const NCElement right = p.multiply(h.antipode(k[0]), NCElement(k[2]));
    out += tensor_of(NCElement(k[1]), right) * c;
  }
  return out;
}

}  // namespace sigmacalc

#include "finite_oracle.hpp"

#include <functional>
#include <stdexcept>

namespace oracle {

namespace {

void axpy(Vec& v, const Q& c, const Vec& w) {
  if (c == 0) return;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i] != 0) v[i] += c * w[i];
  }
}

bool is_zero(const Vec& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

// A dense tensor over function algebras; legs are indexed by points of X or
// elements of G and products are pointwise.
struct T {
  std::vector<std::size_t> shape;
  Vec v;
};

std::size_t volume(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  return n;
}

T zeros(std::vector<std::size_t> shape) {
  T t{std::move(shape), {}};
  t.v.assign(volume(t.shape), Q(0));
  return t;
}

std::vector<std::size_t> decode(const std::vector<std::size_t>& shape, std::size_t flat) {
  std::vector<std::size_t> idx(shape.size());
  for (std::size_t i = shape.size(); i-- > 0;) {
    idx[i] = flat % shape[i];
    flat /= shape[i];
  }
  return idx;
}

std::size_t encode(const std::vector<std::size_t>& shape, const std::vector<std::size_t>& idx) {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < shape.size(); ++i) flat = flat * shape[i] + idx[i];
  return flat;
}

T basis(std::vector<std::size_t> shape, const std::vector<std::size_t>& idx) {
  T t = zeros(std::move(shape));
  t.v[encode(t.shape, idx)] = 1;
  return t;
}

T& add(T& a, const T& b, const Q& c = Q(1)) {
  if (a.shape != b.shape) throw std::logic_error("oracle: shape mismatch");
  axpy(a.v, c, b.v);
  return a;
}

bool operator==(const T& a, const T& b) { return a.shape == b.shape && a.v == b.v; }

T outer(const T& a, const T& b) {
  std::vector<std::size_t> shape = a.shape;
  shape.insert(shape.end(), b.shape.begin(), b.shape.end());
  T out = zeros(shape);
  const std::size_t nb = b.v.size();
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    if (a.v[i] == 0) continue;
    for (std::size_t j = 0; j < nb; ++j) {
      if (b.v[j] != 0) out.v[i * nb + j] += a.v[i] * b.v[j];
    }
  }
  return out;
}

/// Replaces leg `leg` by f(index), which may have any number of legs.
T map_leg(const T& x, std::size_t leg, const std::function<T(std::size_t)>& f) {
  std::optional<T> out;
  for (std::size_t flat = 0; flat < x.v.size(); ++flat) {
    if (x.v[flat] == 0) continue;
    const auto idx = decode(x.shape, flat);
    const T image = f(idx[leg]);
    if (!out) {
      std::vector<std::size_t> shape(x.shape.begin(), x.shape.begin() + leg);
      shape.insert(shape.end(), image.shape.begin(), image.shape.end());
      shape.insert(shape.end(), x.shape.begin() + leg + 1, x.shape.end());
      out = zeros(shape);
    }
    for (std::size_t j = 0; j < image.v.size(); ++j) {
      if (image.v[j] == 0) continue;
      const auto sub = decode(image.shape, j);
      std::vector<std::size_t> at(idx.begin(), idx.begin() + leg);
      at.insert(at.end(), sub.begin(), sub.end());
      at.insert(at.end(), idx.begin() + leg + 1, idx.end());
      out->v[encode(out->shape, at)] += x.v[flat] * image.v[j];
    }
  }
  if (!out) {
    // Zero input: the output shape still follows from f.
    const T probe = f(0);
    std::vector<std::size_t> shape(x.shape.begin(), x.shape.begin() + leg);
    shape.insert(shape.end(), probe.shape.begin(), probe.shape.end());
    shape.insert(shape.end(), x.shape.begin() + leg + 1, x.shape.end());
    out = zeros(shape);
  }
  return *out;
}

/// Multiplies legs i and i+1 (pointwise: δ_a δ_b = [a = b] δ_a).
T merge(const T& x, std::size_t i) {
  std::vector<std::size_t> shape = x.shape;
  shape.erase(shape.begin() + i + 1);
  T out = zeros(shape);
  for (std::size_t flat = 0; flat < x.v.size(); ++flat) {
    if (x.v[flat] == 0) continue;
    auto idx = decode(x.shape, flat);
    if (idx[i] != idx[i + 1]) continue;
    idx.erase(idx.begin() + i + 1);
    out.v[encode(shape, idx)] += x.v[flat];
  }
  return out;
}

/// Multiplies leg `leg` by the function f.
T scale_leg(const T& x, std::size_t leg, const Vec& f) {
  T out = x;
  for (std::size_t flat = 0; flat < x.v.size(); ++flat) {
    if (x.v[flat] == 0) continue;
    out.v[flat] *= f[decode(x.shape, flat)[leg]];
  }
  return out;
}

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n, Q(0));
  v[i] = 1;
  return v;
}

Vec pointwise(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

T from_vec(std::vector<std::size_t> shape, Vec v) { return T{std::move(shape), std::move(v)}; }

Span span_of(std::size_t n, const std::vector<Vec>& vs) {
  Span s(n);
  for (const auto& v : vs) s.insert(v);
  return s;
}

Span sum_of(const Span& a, const Span& b) {
  Span s = a;
  for (const auto& r : b.rows()) s.insert(r);
  return s;
}

Span intersect(const Span& a, const Span& b) {
  const std::size_t da = a.dim(), db = b.dim(), n = a.ambient();
  Eliminator e(n, da + db);
  Span out(n);
  for (std::size_t i = 0; i < da + db; ++i) {
    Vec image = i < da ? a.rows()[i] : b.rows()[i - da];
    if (i >= da) {
      for (auto& x : image) x = -x;
    }
    if (auto k = e.add(std::move(image), unit_vector(da + db, i))) {
      Vec v(n, Q(0));
      for (std::size_t j = 0; j < da; ++j) axpy(v, (*k)[j], a.rows()[j]);
      out.insert(std::move(v));
    }
  }
  return out;
}

/// Kernel of the linear map with the given images of the standard basis.
Span kernel_of(std::size_t domain, std::size_t codomain, const std::function<Vec(std::size_t)>& image) {
  Eliminator e(codomain, domain);
  Span out(domain);
  for (std::size_t i = 0; i < domain; ++i) {
    if (auto k = e.add(image(i), unit_vector(domain, i))) out.insert(std::move(*k));
  }
  return out;
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

// ---------------------------------------------------------------------------

struct Model {
  std::size_t n, m, e;
  const Action& act;
  std::vector<std::size_t> inv;
  Vec one_a, one_h;
  std::vector<Vec> coinvariants;
  Span relations;              // R ⊂ A⊗A
  std::vector<T> tau;          // τ(δ_g) representatives
  std::vector<Vec> can_kernel;  // ker(can) from the elimination

  explicit Model(const Action& a)
      : n(a.points), m(a.group.size()), e(0), act(a), relations(a.points * a.points) {
    bool found = false;
    for (std::size_t g = 0; g < m && !found; ++g) {
      bool ok = true;
      for (std::size_t h = 0; h < m; ++h) ok = ok && a.group[g][h] == h && a.group[h][g] == h;
      if (ok) {
        e = g;
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("oracle: no identity");
    inv.assign(m, 0);
    for (std::size_t g = 0; g < m; ++g) {
      for (std::size_t h = 0; h < m; ++h) {
        if (a.group[g][h] == e) inv[g] = h;
      }
    }
    one_a.assign(n, Q(1));
    one_h.assign(m, Q(1));

    // B = {f : δ(f) = f⊗1}
    const Span b = kernel_of(n, n * m, [&](std::size_t x) {
      T d = coaction(x);
      add(d, outer(basis({n}, {x}), from_vec({m}, one_h)), Q(-1));
      return d.v;
    });
    coinvariants = b.rows();
    for (const auto& f : coinvariants) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          T r = outer(from_vec({n}, pointwise(unit_vector(n, x), f)), basis({n}, {y}));
          add(r, outer(basis({n}, {x}), from_vec({n}, pointwise(f, unit_vector(n, y)))), Q(-1));
          relations.insert(r.v);
        }
      }
    }

    // τ(δ_g) = can⁻¹(1⊗δ_g), solved on A⊗A.
    Eliminator can_e(n * m, n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
      if (auto k = can_e.add(can(from_vec({n, n}, unit_vector(n * n, i))).v, unit_vector(n * n, i))) {
        can_kernel.push_back(std::move(*k));
      }
    }
    for (std::size_t g = 0; g < m; ++g) {
      const auto sol = can_e.solve(outer(from_vec({n}, one_a), basis({m}, {g})).v);
      if (!sol) throw std::runtime_error("oracle: canonical map not surjective");
      tau.push_back(from_vec({n, n}, *sol));
    }
  }

  // δ(δ_y) = Σ_{z·g = y} δ_z⊗δ_g
  T coaction(std::size_t y) const {
    T out = zeros({n, m});
    for (std::size_t z = 0; z < n; ++z) {
      for (std::size_t g = 0; g < m; ++g) {
        if (act.act[z][g] == y) out.v[z * m + g] += 1;
      }
    }
    return out;
  }
  // Δ(δ_g) = Σ_{hk = g} δ_h⊗δ_k
  T coproduct(std::size_t g) const {
    T out = zeros({m, m});
    for (std::size_t h = 0; h < m; ++h) {
      for (std::size_t k = 0; k < m; ++k) {
        if (act.group[h][k] == g) out.v[h * m + k] += 1;
      }
    }
    return out;
  }
  Q counit(std::size_t g) const { return g == e ? Q(1) : Q(0); }
  T antipode(std::size_t g) const { return basis({m}, {inv[g]}); }
  T antipode_inverse(std::size_t g) const {
    for (std::size_t h = 0; h < m; ++h) {
      if (inv[h] == g) return basis({m}, {h});
    }
    throw std::logic_error("oracle: antipode not bijective");
  }
  T counit_t(std::size_t g) const { return from_vec({}, Vec{counit(g)}); }
  T plus(std::size_t g) const {
    T h = basis({m}, {g});
    add(h, from_vec({m}, one_h), -counit(g));
    return h;
  }
  T unit_aa() const { return outer(from_vec({n}, one_a), from_vec({n}, one_a)); }

  T can(const T& x) const {
    return merge(map_leg(x, 1, [&](std::size_t y) { return coaction(y); }), 0);
  }
  T mult(const T& x) const { return merge(x, 0); }
  /// ver_u(x) = a a'₍₀₎⊗a'₍₁₎ − aa'⊗1
  T ver(const T& x) const {
    T out = can(x);
    add(out, outer(mult(x), from_vec({m}, one_h)), Q(-1));
    return out;
  }
  T tau_of(const T& h) const {
    T out = zeros({n, n});
    for (std::size_t g = 0; g < m; ++g) add(out, tau[g], h.v[g]);
    return out;
  }
  // σ(a⊗a') = a₍₀₎a'τ(a₍₁₎)
  T sigma(const T& x) const {
    T out = zeros({n, n});
    for (std::size_t flat = 0; flat < x.v.size(); ++flat) {
      if (x.v[flat] == 0) continue;
      const std::size_t a = flat / n, b = flat % n;
      const T d = coaction(a);
      for (std::size_t j = 0; j < d.v.size(); ++j) {
        if (d.v[j] == 0) continue;
        const std::size_t z = j / m, g = j % m;
        const Vec f = pointwise(unit_vector(n, z), unit_vector(n, b));
        add(out, scale_leg(tau[g], 0, f), x.v[flat] * d.v[j]);
      }
    }
    return out;
  }
  // σ⁻¹(a⊗a') = τ(S⁻¹(a'₍₁₎)) a a'₍₀₎
  T sigma_inverse(const T& x) const {
    T out = zeros({n, n});
    for (std::size_t flat = 0; flat < x.v.size(); ++flat) {
      if (x.v[flat] == 0) continue;
      const std::size_t a = flat / n, b = flat % n;
      const T d = coaction(b);
      for (std::size_t j = 0; j < d.v.size(); ++j) {
        if (d.v[j] == 0) continue;
        const std::size_t z = j / m, g = j % m;
        const Vec f = pointwise(unit_vector(n, a), unit_vector(n, z));
        add(out, scale_leg(tau_of(antipode_inverse(g)), 1, f), x.v[flat] * d.v[j]);
      }
    }
    return out;
  }
  /// σ on legs i, i+1 of a three-leg tensor.
  T sigma_on(const T& x, std::size_t i) const {
    T out = zeros(x.shape);
    for (std::size_t flat = 0; flat < x.v.size(); ++flat) {
      if (x.v[flat] == 0) continue;
      const auto idx = decode(x.shape, flat);
      const T s = sigma(basis({n, n}, {idx[i], idx[i + 1]}));
      for (std::size_t j = 0; j < s.v.size(); ++j) {
        if (s.v[j] == 0) continue;
        auto at = idx;
        at[i] = j / n;
        at[i + 1] = j % n;
        out.v[encode(out.shape, at)] += x.v[flat] * s.v[j];
      }
    }
    return out;
  }
  // σ_can(a⊗h) = a₍₀₎⊗a₍₁₎S(h), σ⁻¹_can(a⊗h) = a₍₀₎⊗S⁻¹(h)a₍₁₎
  T sigma_canonical(const T& y, bool inverse) const {
    T out = zeros({n, m});
    for (std::size_t flat = 0; flat < y.v.size(); ++flat) {
      if (y.v[flat] == 0) continue;
      const std::size_t a = flat / m, h = flat % m;
      const T d = coaction(a);
      const T s = inverse ? antipode_inverse(h) : antipode(h);
      for (std::size_t j = 0; j < d.v.size(); ++j) {
        if (d.v[j] == 0) continue;
        const T leg = from_vec({m}, pointwise(unit_vector(m, j % m), s.v));
        add(out, outer(basis({n}, {j / m}), leg), y.v[flat] * d.v[j]);
      }
    }
    return out;
  }
  /// s(a) = a₍₀₎ℓ(a₍₁₎)
  T splitting(const Vec& f, const ConnectionData& l) const {
    T out = zeros({n, n});
    for (std::size_t y = 0; y < n; ++y) {
      if (f[y] == 0) continue;
      const T d = coaction(y);
      for (std::size_t j = 0; j < d.v.size(); ++j) {
        if (d.v[j] == 0) continue;
        add(out, scale_leg(from_vec({n, n}, l.on_points[j % m]), 0, unit_vector(n, j / m)),
            f[y] * d.v[j]);
      }
    }
    return out;
  }
  std::vector<Vec> a_basis() const {
    std::vector<Vec> out{one_a};
    for (std::size_t x = 0; x < n; ++x) out.push_back(unit_vector(n, x));
    return out;
  }
};

}  // namespace

// ---------------------------------------------------------------------------

std::optional<Vec> Eliminator::add(Vec image, Vec combination) {
  for (const auto& r : rows_) {
    if (image[r.pivot] == 0) continue;
    const Q c = image[r.pivot];
    axpy(image, -c, r.image);
    axpy(combination, -c, r.combination);
  }
  for (std::size_t p = 0; p < image_size_; ++p) {
    if (image[p] == 0) continue;
    const Q c = 1 / image[p];
    for (auto& x : image) x *= c;
    for (auto& x : combination) x *= c;
    rows_.push_back(Row{p, std::move(image), std::move(combination)});
    return std::nullopt;
  }
  return combination;
}

std::optional<Vec> Eliminator::solve(const Vec& target) const {
  Vec residual = target;
  Vec combination(domain_size_, Q(0));
  for (const auto& r : rows_) {
    if (residual[r.pivot] == 0) continue;
    const Q c = residual[r.pivot];
    axpy(residual, -c, r.image);
    axpy(combination, c, r.combination);
  }
  if (!is_zero(residual)) return std::nullopt;
  return combination;
}

Vec Span::reduce(Vec v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (v[pivots_[i]] != 0) axpy(v, -v[pivots_[i]], rows_[i]);
  }
  return v;
}

bool Span::insert(Vec v) {
  if (v.size() != n_) throw std::logic_error("oracle: ambient mismatch");
  v = reduce(std::move(v));
  for (std::size_t p = 0; p < n_; ++p) {
    if (v[p] == 0) continue;
    const Q c = 1 / v[p];
    for (auto& x : v) x *= c;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }
  return false;
}

bool Span::contains(const Vec& v) const { return is_zero(reduce(v)); }

bool Span::contains(const Span& other) const {
  for (const auto& r : other.rows()) {
    if (!contains(r)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::map<std::string, std::string> structure_statuses(const Action& action,
                                                      const ConnectionData& l) {
  const Model md(action);
  const std::size_t n = md.n, m = md.m;
  std::map<std::string, std::string> st;
  auto set = [&](const std::string& key, bool ok) { st[key] = verdict(ok); };
  auto coact = [&](std::size_t y) { return md.coaction(y); };
  auto cop = [&](std::size_t g) { return md.coproduct(g); };
  auto eps = [&](std::size_t g) { return md.counit_t(g); };
  auto ant = [&](std::size_t g) { return md.antipode(g); };
  const T one_h = from_vec({m}, md.one_h);
  const T one_a = from_vec({n}, md.one_a);

  // Hopf algebra Fun(G) and the coaction.
  {
    bool ok = true;
    T total = zeros({m, m}), s_total = zeros({m});
    Q e_total = 0;
    for (std::size_t g = 0; g < m; ++g) {
      add(total, cop(g));
      add(s_total, ant(g));
      e_total += md.counit(g);
      for (std::size_t h = 0; h < m; ++h) {
        const Q same = g == h ? 1 : 0;
        T dg = cop(g), prod = cop(g);
        prod.v = pointwise(cop(g).v, cop(h).v);
        dg.v = pointwise(dg.v, Vec(dg.v.size(), same));
        ok = ok && prod == dg;
        ok = ok && md.counit(g) * md.counit(h) == same * md.counit(g);
        ok = ok && pointwise(ant(h).v, ant(g).v) == pointwise(ant(g).v, Vec(m, same));
      }
    }
    ok = ok && total == outer(one_h, one_h) && s_total == one_h && e_total == 1;
    set("hopf/structure-maps-respect-relations", ok);
  }
  {
    bool coassoc = true, counit = true, antipode = true;
    Span image(m);
    for (std::size_t g = 0; g < m; ++g) {
      const T d = cop(g);
      coassoc = coassoc && map_leg(d, 0, cop) == map_leg(d, 1, cop);
      counit = counit && map_leg(d, 0, eps) == basis({m}, {g}) && map_leg(d, 1, eps) == basis({m}, {g});
      T unit = one_h;
      for (auto& x : unit.v) x *= md.counit(g);
      antipode = antipode && merge(map_leg(d, 0, ant), 0) == unit && merge(map_leg(d, 1, ant), 0) == unit;
      image.insert(ant(g).v);
    }
    set("hopf/coassociativity", coassoc);
    set("hopf/counit", counit);
    set("hopf/antipode", antipode);
    set("hopf/antipode-bijective", image.dim() == m);
  }
  {
    bool algebra = true, coassoc = true, counit = true;
    T total = zeros({n, m});
    for (std::size_t x = 0; x < n; ++x) {
      const T d = coact(x);
      add(total, d);
      for (std::size_t y = 0; y < n; ++y) {
        T prod = d;
        prod.v = pointwise(d.v, coact(y).v);
        T expect = d;
        if (x != y) expect = zeros({n, m});
        algebra = algebra && prod == expect;
      }
      coassoc = coassoc && map_leg(d, 0, coact) == map_leg(d, 1, cop);
      counit = counit && map_leg(d, 1, eps) == basis({n}, {x});
    }
    algebra = algebra && total == outer(one_a, one_h);
    set("hopf/coaction-algebra-map", algebra);
    set("hopf/coaction-coassociativity", coassoc);
    set("hopf/coaction-counit", counit);
  }

  // Translation map and braiding.
  {
    bool ok = true;
    for (std::size_t g = 0; g < m; ++g) ok = ok && md.can(md.tau[g]) == outer(one_a, basis({m}, {g}));
    set("galois/translation-map", ok);
    set("braiding/translation-map", ok);
  }
  {
    bool ok = true;
    for (const auto& r : md.relations.rows()) ok = ok && is_zero(md.can(from_vec({n, n}, r)).v);
    set("braiding/balanced-slide", ok);
  }
  {
    bool can_sigma = true, closed = true, inverse = true, commut = true;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const T x = basis({n, n}, {a, b});
        const T s = md.sigma(x), si = md.sigma_inverse(x);
        T expect = zeros({n, m});
        const T d = md.coaction(a);
        for (std::size_t j = 0; j < d.v.size(); ++j) {
          if (d.v[j] == 0) continue;
          add(expect, outer(from_vec({n}, pointwise(unit_vector(n, j / m), unit_vector(n, b))),
                            basis({m}, {j % m})),
              d.v[j]);
        }
        can_sigma = can_sigma && md.can(s) == expect;
        closed = closed && md.can(s) == md.sigma_canonical(md.can(x), false) &&
                 md.can(si) == md.sigma_canonical(md.can(x), true);
        inverse = inverse && md.can(md.sigma(si)) == md.can(x) && md.can(md.sigma_inverse(s)) == md.can(x);
        commut = commut && md.mult(s) == md.mult(x);
      }
    }
    set("braiding/canonical-braiding", can_sigma);
    set("braiding/canonical-coordinates", closed);
    set("braiding/inverse", inverse);
    set("braiding/sigma-commutativity", commut);
  }
  {
    Span r3(n * n * n);
    for (const auto& r : md.relations.rows()) {
      for (std::size_t z = 0; z < n; ++z) {
        r3.insert(outer(from_vec({n, n}, r), basis({n}, {z})).v);
        r3.insert(outer(basis({n}, {z}), from_vec({n, n}, r)).v);
      }
    }
    bool braid = true, left = true, right = true;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          const T x = basis({n, n, n}, {a, b, c});
          T lhs = md.sigma_on(md.sigma_on(md.sigma_on(x, 0), 1), 0);
          add(lhs, md.sigma_on(md.sigma_on(md.sigma_on(x, 1), 0), 1), Q(-1));
          braid = braid && r3.contains(lhs.v);
          left = left && md.can(md.sigma(merge(x, 0))) == md.can(merge(md.sigma_on(md.sigma_on(x, 1), 0), 1));
          right = right && md.can(md.sigma(merge(x, 1))) == md.can(merge(md.sigma_on(md.sigma_on(x, 0), 1), 0));
        }
      }
    }
    set("braiding/braid-relation", braid);
    set("braiding/product-compatibility-left", left);
    set("braiding/product-compatibility-right", right);
  }

  // Connection axioms on the supplied values.
  {
    auto ell = [&](std::size_t g) { return from_vec({n, n}, l.on_points[g]); };
    set("connection/unit", from_vec({n, n}, l.on_unit) == md.unit_aa());
    bool colinear = true, left = true, canonical = true, kernel = true, vertical = true, adjoint = true;
    for (std::size_t g = 0; g < m; ++g) {
      const T d = cop(g);
      colinear = colinear && map_leg(ell(g), 1, coact) == map_leg(d, 0, ell);
      T rhs = zeros({n, m, n});
      for (std::size_t j = 0; j < d.v.size(); ++j) {
        if (d.v[j] == 0) continue;
        const T lk = ell(j % m);
        for (std::size_t f = 0; f < lk.v.size(); ++f) {
          if (lk.v[f] == 0) continue;
          add(rhs, outer(outer(basis({n}, {f / n}), ant(j / m)), basis({n}, {f % n})), d.v[j] * lk.v[f]);
        }
      }
      left = left && map_leg(ell(g), 0, coact) == rhs;
      canonical = canonical && md.can(ell(g)) == outer(one_a, basis({m}, {g}));
      T om = ell(g);
      add(om, md.unit_aa(), -md.counit(g));
      kernel = kernel && is_zero(md.mult(om).v);
      vertical = vertical && map_leg(md.can(om), 1, [&](std::size_t h) { return md.plus(h); }) ==
                                 outer(one_a, md.plus(g));

      // δ_{A⊗A}(ω(h⁺)) = (ω⊗id)Ad_R(h⁺) with Ad_R(h) = h₍₂₎⊗S(h₍₁₎)h₍₃₎.
      const T hp = md.plus(g);
      auto omega = [&](std::size_t k) {
        T o = ell(k);
        add(o, md.unit_aa(), -md.counit(k));
        return o;
      };
      T omega_hp = zeros({n, n});
      for (std::size_t k = 0; k < m; ++k) add(omega_hp, omega(k), hp.v[k]);
      T lhs = zeros({n, n, m});
      for (std::size_t f = 0; f < omega_hp.v.size(); ++f) {
        if (omega_hp.v[f] == 0) continue;
        const T d1 = coact(f / n), d2 = coact(f % n);
        for (std::size_t i = 0; i < d1.v.size(); ++i) {
          if (d1.v[i] == 0) continue;
          for (std::size_t j = 0; j < d2.v.size(); ++j) {
            if (d2.v[j] == 0) continue;
            T hleg = from_vec({m}, pointwise(unit_vector(m, i % m), unit_vector(m, j % m)));
            add(lhs, outer(outer(basis({n}, {i / m}), basis({n}, {j / m})), hleg),
                omega_hp.v[f] * d1.v[i] * d2.v[j]);
          }
        }
      }
      T ad = zeros({m, m});
      for (std::size_t k = 0; k < m; ++k) {
        if (hp.v[k] == 0) continue;
        const T d3 = map_leg(cop(k), 0, cop);
        for (std::size_t f = 0; f < d3.v.size(); ++f) {
          if (d3.v[f] == 0) continue;
          const auto idx = decode(d3.shape, f);
          add(ad, outer(basis({m}, {idx[1]}), from_vec({m}, pointwise(ant(idx[0]).v, unit_vector(m, idx[2])))),
              hp.v[k] * d3.v[f]);
        }
      }
      adjoint = adjoint && lhs == map_leg(ad, 0, omega);
    }
    set("connection/colinearity", colinear);
    set("connection/left-colinearity", left);
    set("connection/canonical-identity", canonical);
    set("connection/omega-in-kernel", kernel);
    set("connection/vertical-omega", vertical);
    set("connection/adjoint-covariance", adjoint);

    bool leibniz = true;
    auto d = [&](const Vec& f) {
      T out = outer(one_a, from_vec({n}, f));
      add(out, outer(from_vec({n}, f), one_a), Q(-1));
      return out;
    };
    for (const auto& f : md.a_basis()) {
      for (const auto& g : md.a_basis()) {
        T rhs = scale_leg(d(g), 0, f);
        add(rhs, scale_leg(d(f), 1, g));
        leibniz = leibniz && d(pointwise(f, g)) == rhs;
      }
    }
    set("connection/leibniz", leibniz);
  }

  // Principality.
  {
    bool surjective = true;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t g = 0; g < m; ++g) {
        surjective = surjective &&
                     md.can(scale_leg(md.tau[g], 0, unit_vector(n, x))) == basis({n, m}, {x, g});
      }
    }
    set("principality/can-after-inverse", surjective);
    set("principality/inverse-after-can", span_of(n * n, md.can_kernel) == md.relations);

    bool section = true, first = true, colinear = true, linear = true;
    for (const auto& f : md.a_basis()) {
      const T s = md.splitting(f, l);
      section = section && md.mult(s).v == f;
      T flat_first = zeros({n, m, n});
      for (std::size_t i = 0; i < s.v.size(); ++i) {
        if (s.v[i] != 0) add(flat_first, outer(outer(basis({n}, {i / n}), one_h), basis({n}, {i % n})), s.v[i]);
      }
      first = first && map_leg(s, 0, coact) == flat_first;
      T rhs = zeros({n, n, m});
      for (std::size_t y = 0; y < n; ++y) {
        if (f[y] == 0) continue;
        const T d = coact(y);
        for (std::size_t j = 0; j < d.v.size(); ++j) {
          if (d.v[j] != 0) add(rhs, outer(md.splitting(unit_vector(n, j / m), l), basis({m}, {j % m})), f[y] * d.v[j]);
        }
      }
      colinear = colinear && map_leg(s, 1, coact) == rhs;
      for (const auto& b : md.coinvariants) {
        linear = linear && md.splitting(pointwise(b, f), l) == scale_leg(s, 0, b);
      }
    }
    set("principality/splitting-section", section);
    set("principality/splitting-coinvariant-leg", first);
    set("principality/splitting-colinear", colinear);
    set("principality/splitting-left-linear", linear);
  }
  return st;
}

// ---------------------------------------------------------------------------

Evaluation calculus(const Action& action, const std::vector<std::size_t>& support,
                    std::size_t degree) {
  const Model md(action);
  const std::size_t n = md.n, m = md.m, nn = n * n;
  Evaluation out;
  auto set = [&](const std::string& key, bool ok) { out.statuses[key] = verdict(ok); };
  std::vector<bool> in_i(m, false);
  for (auto g : support) in_i.at(g) = true;
  const T one_a = from_vec({n}, md.one_a);

  // A⊗(H/I): drop the coordinates along I.
  auto project = [&](T y) {
    for (std::size_t i = 0; i < y.v.size(); ++i) {
      if (in_i[i % m]) y.v[i] = 0;
    }
    return y;
  };
  auto in_ai = [&](const T& y) { return is_zero(project(y).v); };
  auto pair = [&](const Vec& v) { return from_vec({n, n}, v); };
  auto with_r = [&](std::vector<Vec> vs) {
    Span s = md.relations;
    for (auto& v : vs) s.insert(std::move(v));
    return s;
  };

  const Span kernel = kernel_of(nn, n, [&](std::size_t i) { return md.mult(pair(unit_vector(nn, i))).v; });
  const Span vertical =
      kernel_of(nn, n * m, [&](std::size_t i) { return project(md.can(pair(unit_vector(nn, i)))).v; });
  std::vector<Vec> tau_i;
  for (auto g : support) tau_i.push_back(md.tau[g].v);
  const Span seed = with_r(tau_i);

  auto closure = [&](Span w, std::size_t* steps) {
    std::size_t k = 0;
    for (;;) {
      Span next = w;
      for (const auto& r : w.rows()) next.insert(md.sigma(pair(r)).v);
      if (next.dim() == w.dim()) break;
      ++k;
      w = std::move(next);
    }
    if (steps) *steps = k;
    return w;
  };
  std::size_t steps = 0;
  const Span balanced = closure(seed, &steps);
  const Span k_plus_r = sum_of(kernel, md.relations);
  const Span lift = intersect(kernel, balanced);

  // Dimensions.
  const std::size_t r = md.relations.dim();
  Dimensions& d = out.dims;
  d.interior = n;
  d.kernel = kernel.dim();
  d.ideal = support.size();
  d.vertical = vertical.dim() - r;
  d.balanced_seed = seed.dim() - r;
  d.balanced = balanced.dim() - r;
  d.lift = lift.dim();
  d.forms = kernel.dim() - lift.dim();
  d.quotient_ideal = m - 1 - support.size();
  {
    Span image(n * m);
    for (std::size_t x = 0; x < n; ++x) {
      for (auto g : support) image.insert(basis({n, m}, {x, g}).v);
    }
    const std::size_t base = image.dim();
    for (const auto& k : kernel.rows()) image.insert(md.ver(pair(k)).v);
    d.ver_rank = image.dim() - base;
  }
  d.interior_degree = degree;
  d.closure_steps = steps;
  d.closure_stabilized = true;
  d.balanced_square = nn - r;

  // lemmas
  {
    bool ok = true;
    for (auto g : support) {
      for (std::size_t h = 0; h < m; ++h) {
        const Vec prod = pointwise(unit_vector(m, g), unit_vector(m, h));
        for (std::size_t k = 0; k < m; ++k) ok = ok && (prod[k] == 0 || in_i[k]);
      }
    }
    set("lemmas/ideal-closure", ok);
  }
  {
    bool proj = true, counit = true, equal = true;
    for (const auto& k : kernel.rows()) {
      const T x = pair(k);
      const T can = md.can(x);
      proj = proj && md.ver(x) == map_leg(can, 1, [&](std::size_t h) { return md.plus(h); });
      counit = counit && is_zero(map_leg(can, 1, [&](std::size_t h) { return md.counit_t(h); }).v);
      equal = equal && md.ver(x) == can;
    }
    set("lemmas/ver-projection", proj);
    set("lemmas/counit-vanishes", counit);
    set("lemmas/ver-equals-can", equal);
  }
  {
    std::vector<Vec> pre;
    Eliminator e(n * m, kernel.dim());
    for (std::size_t i = 0; i < kernel.dim(); ++i) {
      if (auto c = e.add(project(md.ver(pair(kernel.rows()[i]))).v, unit_vector(kernel.dim(), i))) {
        Vec v(nn, Q(0));
        for (std::size_t j = 0; j < kernel.dim(); ++j) axpy(v, (*c)[j], kernel.rows()[j]);
        pre.push_back(std::move(v));
      }
    }
    set("lemmas/ver-can-subspace", with_r(pre) == intersect(vertical, k_plus_r));
  }
  {
    bool ok = true;
    for (std::size_t x = 0; x < n; ++x) {
      for (auto g : support) {
        ok = ok && md.can(scale_leg(md.tau[g], 0, unit_vector(n, x))) == basis({n, m}, {x, g});
      }
    }
    set("lemmas/vertical-basis", ok);
  }
  bool stable = true;
  for (const auto& v : vertical.rows()) stable = stable && vertical.contains(md.sigma(pair(v)).v);
  set("lemmas/sigma-stability", stable);
  set("lemmas/connection-in-vertical", vertical.contains(seed));
  set("lemmas/sigma-closure", true);

  // descent
  {
    bool ok = true;
    for (auto g : support) ok = ok && balanced.contains(md.tau[g].v) && k_plus_r.contains(md.tau[g].v);
    set("descent/omega-in-lift", ok);
  }
  {
    bool ok = true;
    for (const auto& v : lift.rows()) ok = ok && in_ai(md.ver(pair(v)));
    set("descent/ver-lift-in-ideal", ok);
  }
  set("descent/lift-image", with_r(lift.rows()) == balanced);
  set("descent/vertical-containment", vertical.contains(balanced));
  {
    bool ok = true;
    for (const auto& v : balanced.rows()) ok = ok && balanced.contains(md.sigma(pair(v)).v);
    set("descent/sigma-bar-well-defined", ok);
  }
  {
    const Span widened = sum_of(vertical, balanced);
    bool ok = true;
    for (const auto& v : vertical.rows()) ok = ok && widened.contains(md.sigma(pair(v)).v);
    set("descent/sigma-bar-vertical", ok);
  }
  std::vector<std::size_t> reps;
  for (std::size_t g = 0; g < m; ++g) {
    if (g != md.e && !in_i[g]) reps.push_back(g);
  }
  {
    Span image(n * m);
    for (std::size_t x = 0; x < n; ++x) {
      for (auto g : support) image.insert(basis({n, m}, {x, g}).v);
    }
    for (const auto& k : kernel.rows()) image.insert(md.ver(pair(k)).v);
    bool ok = true;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t g = 0; g < m; ++g) {
        if (g != md.e) ok = ok && image.contains(outer(basis({n}, {x}), md.plus(g)).v);
      }
    }
    set("descent/ver-surjective", ok);
  }
  {
    bool ok = true;
    for (auto g : reps) {
      T diff = md.can(md.tau_of(md.plus(g)));
      add(diff, outer(one_a, md.plus(g)), Q(-1));
      ok = ok && in_ai(diff);
    }
    for (auto g : support) ok = ok && in_ai(md.can(md.tau[g]));
    set("descent/ver-section", ok);
  }
  {
    bool ok = true;
    Span classes = balanced;
    const std::size_t base = classes.dim();
    for (auto g : reps) {
      const Vec t = md.tau_of(md.plus(g)).v;
      ok = ok && k_plus_r.contains(t);
      classes.insert(t);
    }
    out.omega_injective = classes.dim() - base == reps.size();
    set("descent/omega-bar", ok);
  }
  out.statuses["descent/bimodule"] = "NOT-EVALUATED";
  out.statuses["descent/exactness"] = "NOT-EVALUATED";

  // obstructions
  {
    bool ok = true;
    for (auto g : support) ok = ok && md.can(md.tau[g]) == outer(one_a, basis({m}, {g}));
    set("obstructions/omega-translation", ok);
  }
  {
    // Seed through can⁻¹(1⊗I) rather than the stored τ values.
    Eliminator e(n * m, nn);
    for (std::size_t i = 0; i < nn; ++i) e.add(md.can(pair(unit_vector(nn, i))).v, unit_vector(nn, i));
    std::vector<Vec> again;
    for (auto g : support) again.push_back(*e.solve(outer(one_a, basis({m}, {g})).v));
    set("obstructions/translation-closure", closure(with_r(again), nullptr) == balanced);
  }
  set("obstructions/vertical-generation",
      closure(sum_of(intersect(seed, vertical), md.relations), nullptr).contains(balanced));
  return out;
}

}  // namespace oracle

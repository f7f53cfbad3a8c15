#include "zjkit/functors.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "zjkit/error.hpp"
#include "zjkit/numeric.hpp"
#include "zjkit/sylow.hpp"

namespace zjkit {

namespace {

const char* op_prefix(BaseFunctor::Op op) {
  switch (op) {
    case BaseFunctor::Op::J: return "J_";
    case BaseFunctor::Op::ZJ: return "ZJ_";
    case BaseFunctor::Op::OmegaZJ: return "OmegaZJ_";
  }
  return "?";
}

void record(AxiomReport& rep, std::size_t cap, AxiomFailure f) {
  if (rep.failures.size() < cap) rep.failures.push_back(std::move(f));
}

bool is_p_power(std::uint64_t n, std::uint64_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

struct PairKey {
  ElementSet a, b;
  friend bool operator==(const PairKey&, const PairKey&) = default;
};
struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const noexcept { return k.a.hash() * 31u ^ k.b.hash(); }
};

}  // namespace

std::string BaseFunctor::name() const { return std::string(op_prefix(op)) + kind_letter(kind); }

std::array<BaseFunctor, 9> all_base_functors() {
  std::array<BaseFunctor, 9> out{};
  std::size_t i = 0;
  for (auto op : {BaseFunctor::Op::J, BaseFunctor::Op::ZJ, BaseFunctor::Op::OmegaZJ})
    for (AbelianKind k : kAllKinds) out[i++] = BaseFunctor{op, k};
  return out;
}

std::optional<BaseFunctor> parse_base_functor(std::string_view name) {
  for (const BaseFunctor& w : all_base_functors())
    if (w.name() == name) return w;
  return std::nullopt;
}

std::array<BaseFunctor, 3> center_functors() {
  return {BaseFunctor{BaseFunctor::Op::ZJ, AbelianKind::Order},
          BaseFunctor{BaseFunctor::Op::OmegaZJ, AbelianKind::Rank},
          BaseFunctor{BaseFunctor::Op::OmegaZJ, AbelianKind::Elementary}};
}

Subgroup apply_base(const BaseFunctor& w, const Subgroup& u) {
  if (u.is_trivial()) return u;
  const Subgroup j = thompson_subgroup(u, w.kind);
  switch (w.op) {
    case BaseFunctor::Op::J: return j;
    case BaseFunctor::Op::ZJ: return center(j);
    case BaseFunctor::Op::OmegaZJ: return omega(center(j));
  }
  throw InternalError("unknown base functor");
}

Subgroup apply_base(const BaseFunctor& w, const Section& s) {
  return s.preimage(apply_base(w, Subgroup::whole(s.quotient())));
}

const char* case_name(CaseTag tag) { return tag == CaseTag::Whole ? "whole" : "restricted"; }

// W_D

DFunctor::DFunctor(BaseFunctor w, PrimeContext ctx, ElementSet d)
    : w_(w), ctx_(std::move(ctx)), d_(std::move(d)) {
  if (d_.universe() == 0) d_ = ElementSet(ctx_.table().order());
  if (!d_.empty() && !is_strongly_closed(ctx_, d_).holds)
    throw HypothesisFailure("D not strongly closed", "D is not strongly closed in P");
}

FunctorValue DFunctor::on_sylow(const Subgroup& u) const {
  ElementSet meet = u.mask() & d_;
  meet.erase(0);
  if (meet.empty()) return {apply_base(w_, u), 0, CaseTag::Whole};
  return {apply_base(w_, closure(u.parent(), meet)), 0, CaseTag::Restricted};
}

FunctorValue DFunctor::evaluate(const Subgroup& v) const {
  if (auto it = memo_.find(v.mask()); it != memo_.end()) return it->second;
  if (!v.is_subgroup_of(ctx_.ambient()) || !is_p_group(v, ctx_.p()))
    throw NotPSubgroup("W_D is defined on p-subgroups of G only");
  FunctorValue val;
  if (v.is_subgroup_of(ctx_.sylow())) {
    val = on_sylow(v);
  } else {
    const auto xs = all_conjugators_into(ctx_.ambient(), v, ctx_.sylow());
    const Elem x = xs.front();
    const Subgroup u = conjugate(v, x);
    const FunctorValue inner = evaluate(u);
    val = {conjugate(inner.output, ctx_.table().inv(x)), x, inner.tag};
    if (xs.size() > 1 && through(v, xs.back()) != val.output)
      throw InternalError("W_D depends on the conjugator into P");
  }
  memo_.emplace(v.mask(), val);
  return val;
}

Subgroup DFunctor::through(const Subgroup& v, Elem x) const {
  const Subgroup u = conjugate(v, x);
  if (!u.is_subgroup_of(ctx_.sylow())) throw Error("conjugator does not move V into P");
  return conjugate(evaluate(u).output, ctx_.table().inv(x));
}

// W*_D

StarFunctor::StarFunctor(BaseFunctor w, PrimeContext ctx, ElementSet d)
    : w_(w), ctx_(std::move(ctx)), d_(std::move(d)) {
  if (d_.universe() == 0) d_ = ElementSet(ctx_.table().order());
  if (!d_.empty() && !is_strongly_closed(ctx_, d_).holds)
    throw HypothesisFailure("D not strongly closed", "D is not strongly closed in P");
}

FunctorValue StarFunctor::with(const Subgroup& h, const Subgroup& k, Elem g) const {
  const GroupTable& t = ctx_.table();
  const ElementSet e = conjugate_set(t, d_, g) & h.mask();
  if (e.empty() || e.is_subset_of(k.mask()))
    return {apply_base(w_, quotient(h, k)), g, CaseTag::Whole};
  const Subgroup x = join(closure(h.parent(), e), k);
  return {apply_base(w_, quotient(x, k)), g, CaseTag::Restricted};
}

FunctorValue StarFunctor::evaluate(const Subgroup& h, const Subgroup& k) const {
  Key key{h.mask(), k.mask()};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (!is_p_power(h.size() / k.size(), ctx_.p()))
    throw NotPSubgroup("W*_D is defined on p-group sections only");
  const std::size_t sylow_order = p_part(h.size(), ctx_.p());
  const GroupTable& t = ctx_.table();
  std::optional<Elem> least, greatest;
  for (Elem g : ctx_.ambient().elements()) {
    if ((conjugate_set(t, ctx_.sylow().mask(), g) & h.mask()).count() != sylow_order) continue;
    if (!least) least = g;
    greatest = g;
  }
  if (!least) throw InternalError("no Sylow positioning element");
  FunctorValue val = with(h, k, *least);
  if (*greatest != *least && with(h, k, *greatest).output != val.output)
    throw InternalError("W*_D depends on the positioning element");
  memo_.emplace(std::move(key), val);
  return val;
}

// verification

void AxiomReport::merge(const AxiomReport& o) {
  checked += o.checked;
  failures.insert(failures.end(), o.failures.begin(), o.failures.end());
}

std::vector<Subgroup> p_subgroups_of(const Subgroup& g, std::uint64_t p) {
  std::vector<Subgroup> out;
  for (const Subgroup& s : *subgroups_of(g))
    if (is_p_group(s, p)) out.push_back(s);
  return out;
}

AxiomReport verify_conjugacy_axioms(const SubgroupMap& w, const Subgroup& g, std::uint64_t p,
                                    std::size_t max_failures) {
  AxiomReport rep;
  const GroupTable& t = g.table();
  const auto subs = p_subgroups_of(g, p);
  std::unordered_map<ElementSet, ElementSet, ElementSetHash> values;
  for (const Subgroup& u : subs) {
    const Subgroup wu = w(u);
    ++rep.checked;
    if (!wu.is_subgroup_of(u)) record(rep, max_failures, {"i", u, std::nullopt, 0});
    if (!u.is_trivial() && wu.is_trivial()) record(rep, max_failures, {"ii", u, std::nullopt, 0});
    values.emplace(u.mask(), wu.mask());
  }
  for (const Subgroup& u : subs) {
    const ElementSet& wu = values.at(u.mask());
    for (Elem x : g.elements()) {
      ++rep.checked;
      const ElementSet ux = conjugate_set(t, u.mask(), x);
      if (conjugate_set(t, wu, x) != values.at(ux)) record(rep, max_failures, {"iii", u, std::nullopt, x});
    }
  }
  return rep;
}

AxiomReport verify_d_functor(const DFunctor& f, std::size_t max_failures) {
  AxiomReport rep;
  const PrimeContext& ctx = f.context();
  const Subgroup& g = ctx.ambient();
  const GroupTable& t = ctx.table();
  const auto subs = p_subgroups_of(g, ctx.p());
  for (const Subgroup& v : subs) {
    const Subgroup val = f(v);
    for (Elem x : all_conjugators_into(g, v, ctx.sylow())) {
      ++rep.checked;
      if (f.through(v, x) != val) record(rep, max_failures, {"well-defined", v, std::nullopt, x});
    }
  }
  std::unordered_set<PairKey, PairKeyHash> seen;
  for (Elem y : g.elements()) {
    PairKey key{conjugate_set(t, ctx.sylow().mask(), y), conjugate_set(t, f.d(), y)};
    if (!seen.insert(key).second) continue;
    const DFunctor fy(f.base(), PrimeContext(g, ctx.p(), conjugate(ctx.sylow(), y)), key.b);
    for (const Subgroup& v : subs) {
      ++rep.checked;
      if (fy(v) != f(v)) record(rep, max_failures, {"D-conjugate", v, std::nullopt, y});
    }
  }
  return rep;
}

std::vector<std::pair<Subgroup, Subgroup>> p_sections(const Subgroup& g, std::uint64_t p,
                                                      std::size_t max_order) {
  std::vector<std::pair<Subgroup, Subgroup>> out;
  for (const Subgroup& h : *subgroups_of(g)) {
    for (const Subgroup& k : normal_subgroups_of(h)) {
      const std::size_t idx = h.size() / k.size();
      if (idx <= max_order && is_p_power(idx, p)) out.emplace_back(h, k);
    }
  }
  return out;
}

AxiomReport verify_section_axioms(const SectionMap& w, const Subgroup& g, std::uint64_t p,
                                  std::size_t max_order, std::size_t max_failures) {
  AxiomReport rep;
  const GroupTable& t = g.table();
  const auto secs = p_sections(g, p, max_order);
  std::unordered_map<PairKey, Subgroup, PairKeyHash> values;
  for (const auto& [h, k] : secs) {
    const Subgroup l = w(h, k);
    ++rep.checked;
    if (!k.is_subgroup_of(l) || !l.is_subgroup_of(h)) record(rep, max_failures, {"i", h, k, 0});
    if (h != k && l == k) record(rep, max_failures, {"ii", h, k, 0});
    values.emplace(PairKey{h.mask(), k.mask()}, l);
  }
  auto value_of = [&](const Subgroup& h, const Subgroup& k) {
    if (auto it = values.find(PairKey{h.mask(), k.mask()}); it != values.end()) return it->second;
    return values.emplace(PairKey{h.mask(), k.mask()}, w(h, k)).first->second;
  };
  for (const auto& [h, k] : secs) {
    const Subgroup& l = values.at(PairKey{h.mask(), k.mask()});
    for (Elem x : g.elements()) {
      ++rep.checked;
      const PairKey ck{conjugate_set(t, h.mask(), x), conjugate_set(t, k.mask(), x)};
      if (conjugate_set(t, l.mask(), x) != values.at(ck).mask()) record(rep, max_failures, {"iii", h, k, x});
    }
    const auto sylows = all_sylows(h, p);
    for (const Subgroup& n : normal_subgroups_of(h)) {
      if (!n.is_subgroup_of(k) || std::gcd<std::uint64_t>(k.size() / n.size(), p) != 1) continue;
      std::unordered_set<ElementSet, ElementSetHash> tops;
      for (const Subgroup& s : sylows) {
        const Subgroup p0 = product_subgroup(s, n);
        if (!tops.insert(p0.mask()).second) continue;
        ++rep.checked;
        if (join(value_of(p0, n), k) != l) record(rep, max_failures, {"iv", h, k, 0});
      }
    }
  }
  return rep;
}

AxiomReport star_specializes_check(const StarFunctor& star, const DFunctor& wd) {
  AxiomReport rep;
  const Subgroup& g = wd.context().ambient();
  const Subgroup one = Subgroup::trivial(g.parent());
  for (const Subgroup& h : p_subgroups_of(g, wd.context().p())) {
    ++rep.checked;
    if (star(h, one) != wd(h)) record(rep, 16, {"specialization", h, one, 0});
  }
  return rep;
}

AxiomReport restriction_consistency_check(const DFunctor& wd, const Subgroup& h, Elem g) {
  const PrimeContext& ctx = wd.context();
  const GroupTable& t = ctx.table();
  const Subgroup q = intersection(conjugate(ctx.sylow(), g), h);
  if (q.size() != p_part(h.size(), ctx.p())) throw SylowMismatch("P^g cap H is not a Sylow subgroup of H");
  const ElementSet e = conjugate_set(t, wd.d(), g) & h.mask();
  const DFunctor local(wd.base(), PrimeContext(h, ctx.p(), q), e);
  AxiomReport rep;
  for (const Subgroup& u : p_subgroups_of(h, ctx.p())) {
    ++rep.checked;
    if (local(u) != wd(u)) record(rep, 16, {"restriction", u, std::nullopt, g});
  }
  return rep;
}

Subgroup broken_functor(const Subgroup& u) {
  if (u.is_trivial()) return u;
  ElementSet rest = u.mask();
  rest.erase(0);
  const Elem x = rest.first();
  return closure(u.parent(), std::span<const Elem>(&x, 1));
}

}  // namespace zjkit

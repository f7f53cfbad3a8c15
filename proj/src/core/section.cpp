#include "zjkit/section.hpp"

#include "zjkit/error.hpp"

namespace zjkit {

bool GroupMap::is_homomorphism() const {
  const auto n = source->order();
  if (images.size() != n) return false;
  for (Elem a = 0; a < n; ++a) {
    if (images[a] >= target->order()) return false;
    for (Elem b = 0; b < n; ++b)
      if (images[source->mul(a, b)] != target->mul(images[a], images[b])) return false;
  }
  return true;
}

bool GroupMap::is_bijective() const {
  if (source->order() != target->order() || images.size() != source->order()) return false;
  ElementSet hit(target->order());
  for (Elem y : images) {
    if (y >= target->order() || hit.contains(y)) return false;
    hit.insert(y);
  }
  return true;
}

Section quotient(const Subgroup& h, const Subgroup& k) {
  if (!k.is_subgroup_of(h) || !is_normal_in(k, h))
    throw NotNormal("quotient: bottom is not a normal subgroup of top");
  const GroupTable& t = h.table();
  Section s;
  s.top_ = h;
  s.bottom_ = k;
  s.projection_.assign(t.order(), kNoImage);
  for (Elem x : h.elements()) {
    if (s.projection_[x] != kNoImage) continue;
    const auto q = static_cast<Elem>(s.reps_.size());
    s.reps_.push_back(x);
    for (Elem c : k.elements()) s.projection_[t.mul(x, c)] = q;
  }
  const std::size_t n = s.reps_.size();
  std::vector<Elem> mul(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      mul[i * n + j] = s.projection_[t.mul(s.reps_[i], s.reps_[j])];
  std::vector<Elem> gens;
  for (Elem g : h.generators()) {
    const Elem q = s.projection_[g];
    if (q != 0) gens.push_back(q);
  }
  s.quotient_ = std::make_shared<const GroupTable>(
      t.name() + "/" + std::to_string(k.size()), n, std::move(mul), std::move(gens));
  return s;
}

Section induced(const Subgroup& h) { return quotient(h, Subgroup::trivial(h.parent())); }

Subgroup Section::image(const Subgroup& l) const { return Subgroup::from_closed(quotient_, image(l.mask())); }

ElementSet Section::image(const ElementSet& s) const {
  ElementSet out(quotient_->order());
  s.for_each([&](Elem x) {
    const Elem q = projection_[x];
    if (q == kNoImage) throw Error("section image: element outside the top group");
    out.insert(q);
  });
  return out;
}

Subgroup Section::preimage(const Subgroup& q) const {
  ElementSet mask(top_.table().order());
  for (Elem x : top_.elements())
    if (q.contains(projection_[x])) mask.insert(x);
  return Subgroup::from_closed(top_.parent(), std::move(mask));
}

}  // namespace zjkit

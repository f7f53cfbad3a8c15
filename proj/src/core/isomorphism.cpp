#include "zjkit/isomorphism.hpp"

#include <algorithm>

namespace zjkit {
namespace {

std::size_t closure_size(const GroupTable& t, const std::vector<Elem>& seed) {
  ElementSet mask(t.order());
  std::vector<Elem> elems{0};
  mask.insert(0);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (Elem s : seed) {
      const Elem v = t.mul(elems[i], s);
      if (!mask.contains(v)) {
        mask.insert(v);
        elems.push_back(v);
      }
    }
  return elems.size();
}

std::vector<std::size_t> centralizer_sizes(const GroupTable& t) {
  const auto n = t.order();
  std::vector<std::size_t> out(n, 0);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (t.mul(x, y) == t.mul(y, x)) ++out[x];
  return out;
}

class Search {
 public:
  Search(const GroupPtr& g1, const GroupPtr& g2)
      : a_(*g1), b_(*g2) {
    const Subgroup whole = Subgroup::whole(g1);
    gens_.assign(whole.generators().begin(), whole.generators().end());
    ca_ = centralizer_sizes(a_);
    cb_ = centralizer_sizes(b_);
  }

  std::optional<std::vector<Elem>> run() {
    images_.clear();
    if (extend(0)) return map_;
    return std::nullopt;
  }

 private:
  // Extend the partial map defined by images_ (images of gens_[0..k)) to
  // the subgroup they generate; false on any conflict.
  bool propagate(std::size_t k) {
    map_.assign(a_.order(), kNoImage);
    used_.assign(b_.order(), 0);
    map_[0] = 0;
    used_[0] = 1;
    std::vector<Elem> queue{0};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const Elem e = queue[i];
      for (std::size_t j = 0; j < k; ++j) {
        const Elem v = a_.mul(e, gens_[j]);
        const Elem w = b_.mul(map_[e], images_[j]);
        if (map_[v] == kNoImage) {
          if (used_[w]) return false;
          map_[v] = w;
          used_[w] = 1;
          queue.push_back(v);
        } else if (map_[v] != w) {
          return false;
        }
      }
    }
    return true;
  }

  bool extend(std::size_t k) {
    if (k == gens_.size()) return propagate(k);
    const Elem g = gens_[k];
    for (Elem y = 1; y < b_.order(); ++y) {
      if (b_.element_order(y) != a_.element_order(g) || cb_[y] != ca_[g]) continue;
      images_.push_back(y);
      if (propagate(k + 1) && extend(k + 1)) return true;
      images_.pop_back();
    }
    return false;
  }

  const GroupTable& a_;
  const GroupTable& b_;
  std::vector<Elem> gens_;
  std::vector<std::size_t> ca_, cb_;
  std::vector<Elem> images_;
  std::vector<Elem> map_;
  std::vector<char> used_;
};

}  // namespace

Fingerprint fingerprint(const GroupTable& t) {
  Fingerprint f;
  const auto n = t.order();
  f.order = n;
  f.order_histogram.assign(n + 1, 0);
  for (Elem x = 0; x < n; ++x) ++f.order_histogram[t.element_order(x)];
  std::vector<Elem> comms;
  ElementSet seen(n);
  for (Elem x = 0; x < n; ++x) {
    bool central = true;
    for (Elem y = 0; y < n; ++y) {
      const Elem c = t.comm(x, y);
      if (c != 0) central = false;
      if (!seen.contains(c)) {
        seen.insert(c);
        comms.push_back(c);
      }
    }
    if (central) ++f.center_size;
  }
  f.derived_size = closure_size(t, comms);
  return f;
}

std::optional<GroupMap> find_isomorphism(const GroupPtr& g1, const GroupPtr& g2) {
  if (g1->order() != g2->order() || fingerprint(*g1) != fingerprint(*g2)) return std::nullopt;
  Search search(g1, g2);
  auto images = search.run();
  if (!images) return std::nullopt;
  return GroupMap{g1, g2, std::move(*images)};
}

bool is_isomorphic(const GroupPtr& g1, const GroupPtr& g2) {
  return find_isomorphism(g1, g2).has_value();
}

}  // namespace zjkit

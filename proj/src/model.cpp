// SPDX-License-Identifier: MIT

#include "cistruct/model.hpp"

#include <algorithm>
#include <string>

namespace cistruct {

Model::Model(GroundPtr g, Bitset bits) : ground_(std::move(g)), bits_(std::move(bits)) {
  if (bits_.size() != ground_->sta_size())
    throw InvalidArgument("model bitset width does not match the ground set");
}

std::vector<Statement> Model::statements() const {
  std::vector<Statement> out;
  out.reserve(size());
  bits_.for_each_set([&](int k) { out.push_back(ground_->statement_at(k)); });
  return out;
}

bool Model::operator==(const Model& o) const {
  return ground_->same_labels(*o.ground_) && bits_ == o.bits_;
}

void require_same_ground(const Model& a, const Model& b) {
  if (!a.ground()->same_labels(*b.ground()))
    throw InvalidArgument("models are over different ground sets");
}

Model copy_model(const Model& m, const GroundPtr& target,
                 const std::vector<uint8_t>& perm) {
  const GroundSet& g = *m.ground();
  if (int(perm.size()) != g.size())
    throw InvalidArgument("copy_model: bijection has wrong arity");
  Model out(target);
  m.bits().for_each_set([&](int k) {
    Statement s = g.statement_at(k);
    uint16_t cond = 0;
    for (int v = 0; v < g.size(); ++v)
      if (s.cond & (1u << v)) cond |= uint16_t(1) << perm[v];
    int i = perm[s.i], j = perm[s.j];
    if (i > j) std::swap(i, j);
    out.insert(i, j, cond);
  });
  return out;
}

Model permute_model(const Model& m, const std::vector<uint8_t>& perm) {
  return copy_model(m, m.ground(), perm);
}

Model marginal(const Model& m, uint16_t s_mask) {
  const GroundSet& g = *m.ground();
  std::vector<std::string> labels;
  std::vector<int> to_sub(g.size(), -1);
  for (int v = 0; v < g.size(); ++v)
    if (s_mask & (1u << v)) {
      to_sub[v] = int(labels.size());
      labels.push_back(g.label(v));
    }
  Model out(GroundSet::make(std::move(labels)));
  m.bits().for_each_set([&](int k) {
    Statement s = g.statement_at(k);
    uint16_t vars = uint16_t(s.cond | (1u << s.i) | (1u << s.j));
    if (vars & ~s_mask) return;
    uint16_t cond = 0;
    for (int v = 0; v < g.size(); ++v)
      if (s.cond & (1u << v)) cond |= uint16_t(1) << to_sub[v];
    out.insert(to_sub[s.i], to_sub[s.j], cond);
  });
  return out;
}

Model intersect(const Model& a, const Model& b) {
  require_same_ground(a, b);
  return Model(a.ground(), a.bits() & b.bits());
}

Model dual(const Model& m) {
  const GroundSet& g = *m.ground();
  Model out(m.ground());
  m.bits().for_each_set([&](int k) {
    Statement s = g.statement_at(k);
    uint16_t pair = uint16_t((1u << s.i) | (1u << s.j));
    out.insert(s.i, s.j, uint16_t(g.full_mask() & ~(s.cond | pair)));
  });
  return out;
}

Model ascetic_extend(const Model& m, const GroundPtr& big,
                     const std::vector<uint8_t>& embedding) {
  const GroundSet& g = *m.ground();
  if (int(embedding.size()) != g.size())
    throw InvalidArgument("ascetic_extend: embedding has wrong arity");
  Model out(big);
  m.bits().for_each_set([&](int k) {
    Statement s = g.statement_at(k);
    uint16_t cond = 0;
    for (int v = 0; v < g.size(); ++v)
      if (s.cond & (1u << v)) cond |= uint16_t(1) << embedding[v];
    int i = embedding[s.i], j = embedding[s.j];
    if (i > j) std::swap(i, j);
    out.insert(i, j, cond);
  });
  return out;
}

uint16_t support_set(const Model& m) {
  const GroundSet& g = *m.ground();
  uint16_t sup = 0;
  m.bits().for_each_set([&](int k) {
    Statement s = g.statement_at(k);
    sup |= uint16_t(s.cond | (1u << s.i) | (1u << s.j));
  });
  return sup;
}

Model expand_global(const GroundPtr& g, uint16_t I, uint16_t J, uint16_t K) {
  if ((I & J) || (I & K) || (J & K))
    throw InvalidArgument("expand_global: arguments must be pairwise disjoint");
  uint16_t all = uint16_t(I | J | K);
  if (all & ~g->full_mask())
    throw InvalidArgument("expand_global: variables out of range");
  Model out(g);
  for (int i = 0; i < g->size(); ++i) {
    if (!(I & (1u << i))) continue;
    for (int j = 0; j < g->size(); ++j) {
      if (!(J & (1u << j))) continue;
      uint16_t free = uint16_t(all & ~K & ~(1u << i) & ~(1u << j));
      for (uint16_t s : submasks_of(free)) {
        int a = i, b = j;
        if (a > b) std::swap(a, b);
        out.insert(a, b, uint16_t(K | s));
      }
    }
  }
  return out;
}

bool contains_global(const Model& m, uint16_t I, uint16_t J, uint16_t K) {
  Model e = expand_global(m.ground(), I, J, K);
  return e.bits().is_subset_of(m.bits());
}

Model lift_model(const Model& m, const GroundPtr& big,
                 const std::vector<uint8_t>& embedding) {
  const GroundSet& g = *m.ground();
  uint16_t n_mask = 0;
  std::vector<int> back(big->size(), -1);
  for (int v = 0; v < g.size(); ++v) {
    n_mask |= uint16_t(1) << embedding[v];
    back[embedding[v]] = v;
  }
  Model out(big);
  for (int k = 0; k < big->sta_size(); ++k) {
    Statement s = big->statement_at(k);
    uint16_t pair = uint16_t((1u << s.i) | (1u << s.j));
    if (pair & ~n_mask) {
      out.bits().set(k);
      continue;
    }
    uint16_t cond = 0;
    for (int v = 0; v < big->size(); ++v)
      if ((s.cond & (1u << v)) && (n_mask & (1u << v)))
        cond |= uint16_t(1) << back[v];
    int i = back[s.i], j = back[s.j];
    if (i > j) std::swap(i, j);
    if (m.contains(i, j, cond)) out.bits().set(k);
  }
  return out;
}

Model tight_replicate(const Model& m, int u, const std::string& v_label) {
  const GroundSet& g = *m.ground();
  if (u < 0 || u >= g.size())
    throw InvalidArgument("tight_replicate: variable out of range");
  std::vector<std::string> labels = g.labels();
  std::string fresh =
      v_label.empty() ? fresh_primed_label(g.label(u), labels) : v_label;
  labels.push_back(fresh);
  GroundPtr big = GroundSet::make(std::move(labels));
  const int v = g.size();  // index of the fresh copy
  const uint16_t l_mask = uint16_t(g.full_mask() & ~(1u << u));

  Model out(big);
  for (int k = 0; k < big->sta_size(); ++k) {
    Statement s = big->statement_at(k);
    bool in = false;
    if (s.j != v) {  // v not involved in the pair (v is the largest index)
      if (!(s.cond & (1u << v))) {
        in = m.contains(s.i, s.j, s.cond);
      } else if (s.i == u || s.j == u) {
        in = true;  // the pair meets the retracted condition
      } else {
        uint16_t cond = uint16_t((s.cond & ~(1u << v)) | (1u << u));
        in = m.contains(s.i, s.j, cond);
      }
    } else if (s.i == u) {
      // Diagonal u | u | C: holds iff [ {u}, L\C | C ] holds in m.
      uint16_t c = s.cond;
      in = contains_global(m, uint16_t(1u << u), uint16_t(l_mask & ~c), c);
    } else if (s.cond & (1u << u)) {
      in = true;  // retracted pair {i, u} meets the condition
    } else {
      int a = s.i, b = u;
      if (a > b) std::swap(a, b);
      in = m.contains(a, b, s.cond);
    }
    if (in) out.bits().set(k);
  }
  return out;
}

Model least_adhesion(const Model& m, const Model& m2) {
  const GroundSet& g = *m.ground();
  const GroundSet& g2 = *m2.ground();
  // Shared variables by label; the combined ground lists N first, then the
  // new variables of the second ground set in their own order.
  uint16_t l_in_n = 0, l_in_n2 = 0;
  std::vector<std::string> labels = g.labels();
  std::vector<uint8_t> embed2(g2.size());
  for (int v = 0; v < g2.size(); ++v) {
    int w = g.index_of(g2.label(v));
    if (w >= 0) {
      l_in_n |= uint16_t(1) << w;
      l_in_n2 |= uint16_t(1) << v;
      embed2[v] = uint8_t(w);
    } else {
      embed2[v] = uint8_t(labels.size());
      labels.push_back(g2.label(v));
    }
  }
  if (int(labels.size()) > kMaxGround)
    throw CapError("least_adhesion: combined ground set exceeds the cap");

  // Consonance: the two marginals over the shared part must agree.
  Model ml = marginal(m, l_in_n);
  Model m2l = marginal(m2, l_in_n2);
  std::vector<uint8_t> align(m2l.ground()->size());
  for (int v = 0; v < m2l.ground()->size(); ++v) {
    int w = ml.ground()->index_of(m2l.ground()->label(v));
    if (w < 0) throw InvalidArgument("least_adhesion: internal label mismatch");
    align[v] = uint8_t(w);
  }
  if (copy_model(m2l, ml.ground(), align) != ml)
    throw InvalidArgument("least_adhesion: models are not consonant");

  GroundPtr big = GroundSet::make(std::move(labels));
  std::vector<uint8_t> embed(g.size());
  for (int v = 0; v < g.size(); ++v) embed[v] = uint8_t(v);
  uint16_t n_mask = g.full_mask();
  uint16_t n2_mask = 0;
  for (int v = 0; v < g2.size(); ++v) n2_mask |= uint16_t(1) << embed2[v];
  uint16_t l_mask = uint16_t(n_mask & n2_mask);

  Model out = ascetic_extend(m, big, embed);
  out.bits() |= ascetic_extend(m2, big, embed2).bits();
  out.bits() |= expand_global(big, uint16_t(n_mask & ~l_mask),
                              uint16_t(n2_mask & ~l_mask), l_mask)
                    .bits();
  return out;
}

Model graph_separation_model(const GroundPtr& g,
                             const std::vector<std::pair<int, int>>& edges) {
  std::vector<uint16_t> adj(g->size(), 0);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= g->size() || b >= g->size() || a == b)
      throw InvalidArgument("graph edge out of range");
    adj[a] |= uint16_t(1) << b;
    adj[b] |= uint16_t(1) << a;
  }
  Model out(g);
  for (int k = 0; k < g->sta_size(); ++k) {
    Statement s = g->statement_at(k);
    // Reachability from i avoiding the conditioning set.
    uint16_t allowed = uint16_t(g->full_mask() & ~s.cond);
    uint16_t reach = uint16_t(1) << s.i, frontier = reach;
    while (frontier) {
      uint16_t next = 0;
      for (int v = 0; v < g->size(); ++v)
        if (frontier & (1u << v)) next |= adj[v];
      next &= uint16_t(allowed & ~reach);
      reach |= next;
      frontier = next;
    }
    if (!(reach & (1u << s.j))) out.bits().set(k);
  }
  return out;
}

std::string fresh_primed_label(const std::string& base,
                               const std::vector<std::string>& taken) {
  std::string label = base + "'";
  while (std::find(taken.begin(), taken.end(), label) != taken.end())
    label += "'";
  return label;
}

DoubledGround doubled_ground(const GroundSet& g, uint16_t l_mask) {
  if (l_mask & ~g.full_mask())
    throw InvalidArgument("doubled_ground: L out of range");
  int outside = g.size() - __builtin_popcount(l_mask);
  if (g.size() + outside > kMaxGround)
    throw CapError("doubled ground set would exceed the cap of " +
                   std::to_string(kMaxGround) + " variables");
  DoubledGround dg;
  std::vector<std::string> labels = g.labels();
  dg.copy_of.assign(g.size(), -1);
  for (int v = 0; v < g.size(); ++v) {
    if (l_mask & (1u << v)) continue;
    dg.copy_of[v] = int(labels.size());
    labels.push_back(fresh_primed_label(g.label(v), labels));
  }
  dg.big = GroundSet::make(std::move(labels));
  dg.embed_n.resize(g.size());
  dg.bijection.resize(g.size());
  for (int v = 0; v < g.size(); ++v) {
    dg.embed_n[v] = uint8_t(v);
    dg.bijection[v] =
        uint8_t((l_mask & (1u << v)) ? v : dg.copy_of[v]);
    dg.n_mask_big |= uint16_t(1) << v;
    if (l_mask & (1u << v))
      dg.l_mask_big |= uint16_t(1) << v;
    else
      dg.copies_mask_big |= uint16_t(1) << dg.copy_of[v];
  }
  return dg;
}

ReplicatedGround replicated_ground(const GroundSet& g, uint16_t l_mask,
                                   int k) {
  if (l_mask & ~g.full_mask())
    throw InvalidArgument("replicated_ground: L out of range");
  if (k < 1) throw InvalidArgument("replicated_ground: k must be positive");
  int outside = g.size() - __builtin_popcount(l_mask);
  if (g.size() + k * outside > kMaxGround)
    throw CapError("replicated ground set would exceed the cap of " +
                   std::to_string(kMaxGround) + " variables");
  ReplicatedGround rg;
  std::vector<std::string> labels = g.labels();
  rg.bijections.assign(k + 1, {});
  rg.copy_masks.assign(k + 1, 0);
  rg.l_mask_big = l_mask;
  for (int v = 0; v < g.size(); ++v) {
    rg.embed_n.push_back(uint8_t(v));
    rg.copy_masks[0] |= uint16_t(1) << v;
  }
  rg.bijections[0] = rg.embed_n;
  for (int c = 1; c <= k; ++c) {
    rg.bijections[c].resize(g.size());
    rg.copy_masks[c] = l_mask;
    for (int v = 0; v < g.size(); ++v) {
      if (l_mask & (1u << v)) {
        rg.bijections[c][v] = uint8_t(v);
        continue;
      }
      std::string base = g.label(v) + "'" + std::to_string(c);
      while (std::find(labels.begin(), labels.end(), base) != labels.end())
        base += "'";
      rg.bijections[c][v] = uint8_t(labels.size());
      rg.copy_masks[c] |= uint16_t(1) << labels.size();
      labels.push_back(std::move(base));
    }
  }
  rg.big = GroundSet::make(std::move(labels));
  return rg;
}

}  // namespace cistruct

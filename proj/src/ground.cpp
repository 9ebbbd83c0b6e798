// SPDX-License-Identifier: MIT

#include "cistruct/ground.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace cistruct {

namespace {

bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    if (c == '#' || c == ',' || c == ';' || c == '|') return false;
  }
  return s != "ground:" && s != "=>";
}

}  // namespace

GroundSet::GroundSet(std::vector<std::string> labels)
    : labels_(std::move(labels)), n_(int(labels_.size())) {
  if (n_ < 2)
    throw InvalidArgument("ground set needs at least 2 variables");
  if (n_ > kMaxGround)
    throw InvalidArgument("ground set exceeds the cap of " +
                          std::to_string(kMaxGround) + " variables");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!valid_label(l))
      throw InvalidArgument("invalid ground label '" + l + "'");
    if (!seen.insert(l).second)
      throw InvalidArgument("duplicate ground label '" + l + "'");
  }
  cond_count_ = 1 << (n_ - 2);
  pair_offset_.assign(n_, 0);
  for (int i = 0; i + 1 < n_; ++i)
    pair_offset_[i + 1] = pair_offset_[i] + (n_ - 1 - i);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      pair_at_.emplace_back(uint8_t(i), uint8_t(j));
  sta_size_ = int(pair_at_.size()) * cond_count_;
}

GroundPtr GroundSet::alphabetic(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.emplace_back(1, char('a' + i));
  return make(std::move(labels));
}

int GroundSet::index_of(const std::string& label) const {
  for (int i = 0; i < n_; ++i)
    if (labels_[i] == label) return i;
  return -1;
}

int GroundSet::pair_rank(int i, int j) const { return pair_offset_[i] + (j - i - 1); }

int GroundSet::statement_index(const Statement& s) const {
  return statement_index(s.i, s.j, s.cond);
}

int GroundSet::statement_index(int i, int j, uint16_t cond) const {
  if (i > j) std::swap(i, j);
  if (i == j || j >= n_)
    throw InvalidArgument("statement pair out of range");
  if (cond & ((1u << i) | (1u << j)))
    throw InvalidArgument("statement condition meets its own pair");
  if (cond & ~full_mask())
    throw InvalidArgument("statement condition out of range");
  // cond_rank: little-endian over the ascending variables other than i, j.
  int rank = 0, bit = 0;
  for (int v = 0; v < n_; ++v) {
    if (v == i || v == j) continue;
    if (cond & (1u << v)) rank |= 1 << bit;
    ++bit;
  }
  return pair_rank(i, j) * cond_count_ + rank;
}

Statement GroundSet::statement_at(int index) const {
  if (index < 0 || index >= sta_size_)
    throw InvalidArgument("statement index out of range");
  auto [i, j] = pair_at_[index / cond_count_];
  int rank = index % cond_count_;
  uint16_t cond = 0;
  int bit = 0;
  for (int v = 0; v < n_; ++v) {
    if (v == i || v == j) continue;
    if (rank & (1 << bit)) cond |= uint16_t(1) << v;
    ++bit;
  }
  return Statement{i, j, cond};
}

std::string GroundSet::statement_text(const Statement& s) const {
  std::ostringstream os;
  os << labels_[s.i] << ' ' << labels_[s.j] << " |";
  for (int v = 0; v < n_; ++v)
    if (s.cond & (1u << v)) os << ' ' << labels_[v];
  return os.str();
}

std::vector<Statement> all_statements(const GroundSet& g) {
  std::vector<Statement> out;
  out.reserve(g.sta_size());
  for (int k = 0; k < g.sta_size(); ++k) out.push_back(g.statement_at(k));
  return out;
}

std::vector<uint16_t> submasks_of(uint16_t mask) {
  std::vector<uint16_t> out;
  uint16_t s = 0;
  for (;;) {
    out.push_back(s);
    if (s == mask) break;
    s = uint16_t((s - mask) & mask);  // next submask in ascending order
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint16_t> subsets_by_size(int n, int min_size, int max_size) {
  std::vector<uint16_t> out;
  max_size = std::min(max_size, n);
  for (int size = std::max(0, min_size); size <= max_size; ++size) {
    // Combinations in lexicographic order of the ascending element tuple.
    std::vector<int> comb(size);
    std::iota(comb.begin(), comb.end(), 0);
    for (;;) {
      uint16_t mask = 0;
      for (int v : comb) mask |= uint16_t(1) << v;
      out.push_back(mask);
      if (size == 0) break;
      int k = size - 1;
      while (k >= 0 && comb[k] == n - size + k) --k;
      if (k < 0) break;
      ++comb[k];
      for (int t = k + 1; t < size; ++t) comb[t] = comb[t - 1] + 1;
    }
  }
  return out;
}

std::vector<std::vector<uint8_t>> all_permutations(int n) {
  std::vector<uint8_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<uint8_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<int> statement_permutation(const GroundSet& g,
                                       const std::vector<uint8_t>& perm) {
  std::vector<int> map(g.sta_size());
  for (int k = 0; k < g.sta_size(); ++k) {
    Statement s = g.statement_at(k);
    uint16_t cond = 0;
    for (int v = 0; v < g.size(); ++v)
      if (s.cond & (1u << v)) cond |= uint16_t(1) << perm[v];
    int i = perm[s.i], j = perm[s.j];
    if (i > j) std::swap(i, j);
    map[k] = g.statement_index(i, j, cond);
  }
  return map;
}

const FrameSpec& frame_spec(Frame f) {
  static const FrameSpec specs[] = {
      {Frame::Semigraphoid, "semigraphoid", true, true},
      {Frame::Graphoid, "graphoid", false, false},
      {Frame::CompSemigraphoid, "comp-semigraphoid", false, false},
      {Frame::CompGraphoid, "comp-graphoid", false, false},
      {Frame::Structural, "structural", true, true},
  };
  return specs[static_cast<int>(f)];
}

const FrameSpec* frame_by_name(const std::string& name) {
  for (Frame f : {Frame::Semigraphoid, Frame::Graphoid, Frame::CompSemigraphoid,
                  Frame::CompGraphoid, Frame::Structural}) {
    const FrameSpec& s = frame_spec(f);
    if (name == s.name) return &s;
  }
  return nullptr;
}

}  // namespace cistruct

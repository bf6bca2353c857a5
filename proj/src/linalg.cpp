#include "mcmlab/linalg.hpp"

#include <map>

namespace mcmlab {

template <class K>
SparseVec<K> add_scaled(const SparseVec<K>& a, const SparseVec<K>& b, const K& c) {
  SparseVec<K> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin(), j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      K v = j->second * c;
      if (!v.is_zero()) out.emplace_back(j->first, v);
      ++j;
    } else {
      K v = i->second + j->second * c;
      if (!v.is_zero()) out.emplace_back(i->first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

template <class K>
Echelon<K>::Echelon(std::size_t dim, bool track) : pivot_of_(dim, -1), track_(track) {}

namespace {

template <class K>
void accumulate(std::map<std::uint32_t, K>& acc, const SparseVec<K>& v, const K& c) {
  for (const auto& [j, a] : v) {
    auto [it, fresh] = acc.try_emplace(j, a * c);
    if (!fresh) {
      it->second += a * c;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

template <class K>
SparseVec<K> to_vec(const std::map<std::uint32_t, K>& acc) {
  return SparseVec<K>(acc.begin(), acc.end());
}

}  // namespace

template <class K>
bool Echelon<K>::insert(const SparseVec<K>& v, std::uint32_t tag, SparseVec<K>* relation) {
  std::map<std::uint32_t, K> acc(v.begin(), v.end());
  std::map<std::uint32_t, K> combo;
  if (track_ && tag != kNoTag && !v.empty()) combo.emplace(tag, v.front().second / v.front().second);
  while (!acc.empty()) {
    auto it = acc.begin();
    int p = pivot_of_[it->first];
    if (p < 0) break;
    K c = -it->second;
    acc.erase(it);
    const auto& row = rows_[p];
    accumulate(acc, SparseVec<K>(row.begin() + 1, row.end()), c);
    if (track_) accumulate(combo, combos_[p], c);
  }
  if (acc.empty()) {
    if (relation) *relation = to_vec(combo);
    return false;
  }
  K inv = acc.begin()->second.inverse();
  SparseVec<K> row;
  row.reserve(acc.size());
  for (const auto& [j, a] : acc) row.emplace_back(j, a * inv);
  pivot_of_[row.front().first] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(row));
  if (track_) {
    SparseVec<K> cv;
    for (const auto& [t, a] : combo) cv.emplace_back(t, a * inv);
    combos_.push_back(std::move(cv));
  }
  return true;
}

template <class K>
SparseVec<K> Echelon<K>::reduce(const SparseVec<K>& v) const {
  std::map<std::uint32_t, K> acc(v.begin(), v.end());
  auto it = acc.begin();
  while (it != acc.end()) {
    int p = pivot_of_[it->first];
    if (p < 0) {
      ++it;
      continue;
    }
    std::uint32_t key = it->first;
    K c = -it->second;
    acc.erase(it);
    const auto& row = rows_[p];
    accumulate(acc, SparseVec<K>(row.begin() + 1, row.end()), c);
    it = acc.upper_bound(key);
  }
  return to_vec(acc);
}

template <class K>
SparseVec<K> Echelon<K>::reduce_tracked(const SparseVec<K>& v, SparseVec<K>& combo_out) const {
  std::map<std::uint32_t, K> acc(v.begin(), v.end());
  std::map<std::uint32_t, K> combo;
  auto it = acc.begin();
  while (it != acc.end()) {
    int p = pivot_of_[it->first];
    if (p < 0) {
      ++it;
      continue;
    }
    std::uint32_t key = it->first;
    K c = it->second;
    acc.erase(it);
    const auto& row = rows_[p];
    accumulate(acc, SparseVec<K>(row.begin() + 1, row.end()), -c);
    if (track_) accumulate(combo, combos_[p], c);
    it = acc.upper_bound(key);
  }
  combo_out = to_vec(combo);
  return to_vec(acc);
}

template <class K>
std::size_t rank_of(const std::vector<SparseVec<K>>& vecs, std::size_t dim) {
  Echelon<K> e(dim);
  for (const auto& v : vecs) e.insert(v);
  return e.rank();
}

template <class K>
std::vector<SparseVec<K>> nullspace(const std::vector<SparseVec<K>>& cols, std::size_t dim,
                                    const K& one) {
  Echelon<K> e(dim, true);
  std::vector<SparseVec<K>> out;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    SparseVec<K> rel;
    if (cols[j].empty()) {
      out.push_back({{static_cast<std::uint32_t>(j), one}});
      continue;
    }
    if (!e.insert(cols[j], static_cast<std::uint32_t>(j), &rel)) out.push_back(std::move(rel));
  }
  return out;
}

template SparseVec<Fp> add_scaled<Fp>(const SparseVec<Fp>&, const SparseVec<Fp>&, const Fp&);
template SparseVec<Rational> add_scaled<Rational>(const SparseVec<Rational>&,
                                                  const SparseVec<Rational>&, const Rational&);
template class Echelon<Fp>;
template class Echelon<Rational>;
template std::size_t rank_of<Fp>(const std::vector<SparseVec<Fp>>&, std::size_t);
template std::size_t rank_of<Rational>(const std::vector<SparseVec<Rational>>&, std::size_t);
template std::vector<SparseVec<Fp>> nullspace<Fp>(const std::vector<SparseVec<Fp>>&, std::size_t,
                                                           const Fp&);
template std::vector<SparseVec<Rational>> nullspace<Rational>(
    const std::vector<SparseVec<Rational>>&, std::size_t, const Rational&);

}  // namespace mcmlab

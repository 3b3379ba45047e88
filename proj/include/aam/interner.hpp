// Copyright 2026 The aam authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef AAM_INTERNER_HPP_
#define AAM_INTERNER_HPP_

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace aam {

inline void hash_mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

template <typename It>
std::size_t hash_range(It begin, It end) {
  std::size_t seed = 0xcbf29ce484222325ULL;
  for (It i = begin; i != end; ++i) hash_mix(seed, std::hash<typename std::iterator_traits<It>::value_type>{}(*i));
  return seed;
}

// Hash-consing table: every distinct value gets a dense uint32 id, so
// equality downstream is an integer compare.
template <typename T, typename Hash = std::hash<T>>
class Interner {
 public:
  uint32_t intern(const T& v) {
    auto it = index_.find(v);
    if (it != index_.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(items_.size());
    items_.push_back(v);
    index_.emplace(items_.back(), id);
    return id;
  }
  const T& at(uint32_t id) const { return items_[id]; }
  std::size_t size() const { return items_.size(); }
  const std::vector<T>& items() const { return items_; }

 private:
  std::vector<T> items_;
  std::unordered_map<T, uint32_t, Hash> index_;
};

struct U32VecHash {
  std::size_t operator()(const std::vector<uint32_t>& v) const {
    return hash_range(v.begin(), v.end());
  }
};

}  // namespace aam

#endif  // AAM_INTERNER_HPP_

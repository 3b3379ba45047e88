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

#ifndef AAM_DOMAINS_HPP_
#define AAM_DOMAINS_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "aam/interner.hpp"
#include "aam/syntax.hpp"

namespace aam {

using AddrId = uint32_t;
using TimeId = uint32_t;
using EnvId = uint32_t;
using ValId = uint32_t;
using ValListId = uint32_t;
using ItemSetId = uint32_t;
using StoreId = uint32_t;
using MarkId = uint32_t;
using FrameId = uint32_t;
using CKontId = uint32_t;
using MetaId = uint32_t;
using BKontId = uint32_t;
using AKontId = uint32_t;
using CtxId = uint32_t;
using SKId = uint32_t;
using ChiId = uint32_t;
using LKontId = uint32_t;

constexpr uint32_t kNone = 0xffffffffu;

// A store item is a tagged id: values have tag bit 0, stored continuations
// (the pre-pushdown baseline machine keeps its stack in the store) tag bit 1.
using StoreItem = uint32_t;
inline StoreItem item_of_val(ValId v) { return v << 1; }
inline StoreItem item_of_bkont(BKontId k) { return (k << 1) | 1u; }
inline bool item_is_val(StoreItem i) { return (i & 1u) == 0; }
inline ValId item_val(StoreItem i) { return i >> 1; }
inline BKontId item_bkont(StoreItem i) { return i >> 1; }

enum class AddrKind : uint8_t {
  Var,        // variable name (monovariant)
  VarTime,    // (variable, call history)
  KLabel,     // continuation slot of the application at a label (baseline)
  KLabelTime,
  Chi,        // continuation-closure slot at a shift label
  ChiTime,
  Fresh,      // (counter, shadow finite address)
};

struct Addr {
  AddrKind kind;
  uint32_t x = 0;  // sym / label / counter
  uint32_t y = 0;  // TimeId / shadow AddrId
  bool operator==(const Addr& o) const { return kind == o.kind && x == o.x && y == o.y; }
};
struct AddrHash {
  std::size_t operator()(const Addr& a) const {
    std::size_t s = static_cast<std::size_t>(a.kind);
    hash_mix(s, a.x);
    hash_mix(s, a.y);
    return s;
  }
};

struct Time {
  bool counter = false;
  uint64_t n = 0;
  std::vector<int32_t> hist;  // newest call label first, length <= k
  bool operator==(const Time& o) const {
    return counter == o.counter && n == o.n && hist == o.hist;
  }
};
struct TimeHash {
  std::size_t operator()(const Time& t) const {
    std::size_t s = t.counter ? 0x9e37 : 0x1234;
    hash_mix(s, t.n);
    for (int32_t l : t.hist) hash_mix(s, static_cast<uint32_t>(l));
    return s;
  }
};

// Environments are sorted (symbol, address) vectors.
struct EnvData {
  std::vector<std::pair<Sym, AddrId>> binds;
  bool operator==(const EnvData& o) const { return binds == o.binds; }
};
struct EnvHash {
  std::size_t operator()(const EnvData& e) const {
    std::size_t s = 0x77;
    for (auto& [k, v] : e.binds) {
      hash_mix(s, k);
      hash_mix(s, v);
    }
    return s;
  }
};

enum class ValKind : uint8_t { Closure, Int, Bool, Comp, Tilde };

struct ValData {
  ValKind kind;
  int32_t lam = -1;     // Closure
  EnvId env = kNone;    // Closure
  int64_t i = 0;        // Int / Bool
  CKontId ck = kNone;   // Comp (concrete captured continuation)
  SKId sk = kNone;      // Tilde (flattened storeable continuation)
  bool operator==(const ValData& o) const {
    return kind == o.kind && lam == o.lam && env == o.env && i == o.i && ck == o.ck &&
           sk == o.sk;
  }
};
struct ValHash {
  std::size_t operator()(const ValData& v) const {
    std::size_t s = static_cast<std::size_t>(v.kind);
    hash_mix(s, static_cast<uint32_t>(v.lam));
    hash_mix(s, v.env);
    hash_mix(s, static_cast<std::size_t>(v.i));
    hash_mix(s, v.ck);
    hash_mix(s, v.sk);
    return s;
  }
};

// Permission map: sorted (permission, Grant|Deny) pairs; absent = unset.
enum class GD : uint8_t { Grant, Deny };
struct MarkData {
  std::vector<std::pair<Sym, GD>> m;
  bool operator==(const MarkData& o) const { return m == o.m; }
};
struct MarkHash {
  std::size_t operator()(const MarkData& d) const {
    std::size_t s = 0x51;
    for (auto& [k, v] : d.m) {
      hash_mix(s, k);
      hash_mix(s, static_cast<uint32_t>(v));
    }
    return s;
  }
};

enum class FrameKind : uint8_t { AppL, AppR, PrimArg };

struct FrameData {
  FrameKind kind;
  int32_t e = -1;        // AppL: argument expression
  EnvId env = kNone;     // AppL / PrimArg
  ValId v = kNone;       // AppR
  int32_t prim = -1;     // PrimArg: the Prim node
  ValListId done = kNone;
  uint16_t idx = 0;      // index of the argument currently being evaluated
  bool operator==(const FrameData& o) const {
    return kind == o.kind && e == o.e && env == o.env && v == o.v && prim == o.prim &&
           done == o.done && idx == o.idx;
  }
};
struct FrameHash {
  std::size_t operator()(const FrameData& f) const {
    std::size_t s = static_cast<std::size_t>(f.kind);
    hash_mix(s, static_cast<uint32_t>(f.e));
    hash_mix(s, f.env);
    hash_mix(s, f.v);
    hash_mix(s, static_cast<uint32_t>(f.prim));
    hash_mix(s, f.done);
    hash_mix(s, f.idx);
    return s;
  }
};

// Concrete continuation: a marked frame list ending in a marked empty.
struct CKontData {
  bool empty;
  FrameId f = kNone;
  MarkId m = 0;
  CKontId next = kNone;
  bool operator==(const CKontData& o) const {
    return empty == o.empty && f == o.f && m == o.m && next == o.next;
  }
};
struct CKontHash {
  std::size_t operator()(const CKontData& k) const {
    std::size_t s = k.empty ? 3 : 5;
    hash_mix(s, k.f);
    hash_mix(s, k.m);
    hash_mix(s, k.next);
    return s;
  }
};

struct MetaData {
  bool nil;
  CKontId k = kNone;
  MetaId next = kNone;
  bool operator==(const MetaData& o) const {
    return nil == o.nil && k == o.k && next == o.next;
  }
};
struct MetaHash {
  std::size_t operator()(const MetaData& m) const {
    std::size_t s = m.nil ? 7 : 11;
    hash_mix(s, m.k);
    hash_mix(s, m.next);
    return s;
  }
};

// Baseline machine continuation: empty or one frame over a store address.
struct BKontData {
  bool empty;
  FrameId f = kNone;
  MarkId m = 0;
  AddrId tail = kNone;
  bool operator==(const BKontData& o) const {
    return empty == o.empty && f == o.f && m == o.m && tail == o.tail;
  }
};
struct BKontHash {
  std::size_t operator()(const BKontData& k) const {
    std::size_t s = k.empty ? 13 : 17;
    hash_mix(s, k.f);
    hash_mix(s, k.m);
    hash_mix(s, k.tail);
    return s;
  }
};

enum class CtxKind : uint8_t {
  App,     // <e, rho, sigma>_t : application/primitive site
  Entry,   // (<lam, rho>, v, sigma) : function boundary
  Exact,   // <e, rho, sigma, chi>
  Approx,  // <e, rho, a>
  Reset,   // <e, rho, sigma, chi> meta-context
  Invoke,  // <ktilde, v, sigma, chi> meta-context
};

struct CtxData {
  CtxKind kind;
  int32_t e = -1;
  EnvId env = kNone;
  StoreId store = kNone;
  TimeId t = kNone;
  ValId fn = kNone;
  ValId arg = kNone;
  ChiId chi = kNone;
  AddrId a = kNone;
  SKId sk = kNone;
  bool operator==(const CtxData& o) const {
    return kind == o.kind && e == o.e && env == o.env && store == o.store && t == o.t &&
           fn == o.fn && arg == o.arg && chi == o.chi && a == o.a && sk == o.sk;
  }
};
struct CtxHash {
  std::size_t operator()(const CtxData& c) const {
    std::size_t s = static_cast<std::size_t>(c.kind);
    hash_mix(s, static_cast<uint32_t>(c.e));
    hash_mix(s, c.env);
    hash_mix(s, c.store);
    hash_mix(s, c.t);
    hash_mix(s, c.fn);
    hash_mix(s, c.arg);
    hash_mix(s, c.chi);
    hash_mix(s, c.a);
    hash_mix(s, c.sk);
    return s;
  }
};

enum class AKShape : uint8_t { Eps, Push, Ctx };

// Table-chunked continuation: empty, one frame over a context, or (in the
// delimited-control machine) a bare context resolved lazily by pop.
struct AKontData {
  AKShape shape;
  MarkId m = 0;
  FrameId f = kNone;
  CtxId ctx = kNone;
  bool operator==(const AKontData& o) const {
    return shape == o.shape && m == o.m && f == o.f && ctx == o.ctx;
  }
};
struct AKontHash {
  std::size_t operator()(const AKontData& k) const {
    std::size_t s = static_cast<std::size_t>(k.shape);
    hash_mix(s, k.m);
    hash_mix(s, k.f);
    hash_mix(s, k.ctx);
    return s;
  }
};

enum class SKShape : uint8_t { Eps, Ctx, FrameCtx };

// Storeable continuation: flat, no store components anywhere inside.
struct SKData {
  SKShape shape;
  FrameId f = kNone;
  CtxId end = kNone;  // always an Approx context
  bool operator==(const SKData& o) const {
    return shape == o.shape && f == o.f && end == o.end;
  }
};
struct SKHash {
  std::size_t operator()(const SKData& k) const {
    std::size_t s = static_cast<std::size_t>(k.shape);
    hash_mix(s, k.f);
    hash_mix(s, k.end);
    return s;
  }
};

struct SortedU32s {
  std::vector<uint32_t> v;  // sorted, unique
  bool operator==(const SortedU32s& o) const { return v == o.v; }
};
struct SortedU32sHash {
  std::size_t operator()(const SortedU32s& s) const { return hash_range(s.v.begin(), s.v.end()); }
};

struct StoreData {
  std::vector<std::pair<AddrId, ItemSetId>> binds;  // sorted by address id
  bool operator==(const StoreData& o) const { return binds == o.binds; }
};
struct StoreHash {
  std::size_t operator()(const StoreData& s) const {
    std::size_t h = 0x1f;
    for (auto& [a, i] : s.binds) {
      hash_mix(h, a);
      hash_mix(h, i);
    }
    return h;
  }
};

// KClosure: address -> set of store ids.
struct ChiData {
  std::vector<std::pair<AddrId, uint32_t>> binds;  // value: SortedU32s id of StoreIds
  bool operator==(const ChiData& o) const { return binds == o.binds; }
};
struct ChiHash {
  std::size_t operator()(const ChiData& c) const {
    std::size_t h = 0x2f;
    for (auto& [a, i] : c.binds) {
      hash_mix(h, a);
      hash_mix(h, i);
    }
    return h;
  }
};

struct VecU32 {
  std::vector<uint32_t> v;  // order-significant
  bool operator==(const VecU32& o) const { return v == o.v; }
};
struct VecU32Hash {
  std::size_t operator()(const VecU32& s) const { return hash_range(s.v.begin(), s.v.end()); }
};

// All interned domains for one analysis universe (one program).
class Universe {
 public:
  explicit Universe(const Program& p) : prog(p) {
    // Canonical small ids.
    empty_mark = marks.intern(MarkData{});
    empty_env = envs.intern(EnvData{});
    empty_store = stores.intern(StoreData{});
    empty_chi = chis.intern(ChiData{});
    t_zero = times.intern(Time{});
    CKontData ce{true, kNone, empty_mark, kNone};
    ckont_empty = ckonts.intern(ce);
    MetaData mn{true, kNone, kNone};
    meta_nil = metas.intern(mn);
    AKontData ae{AKShape::Eps, empty_mark, kNone, kNone};
    akont_empty = akonts.intern(ae);
    BKontData be{true, kNone, empty_mark, kNone};
    bkont_empty = bkonts.intern(be);
    SKData se{SKShape::Eps, kNone, kNone};
    sk_empty = sks.intern(se);
    lkont_empty = lkonts.intern(VecU32{});
    empty_set = usets.intern(SortedU32s{});
  }

  const Program& prog;

  Interner<Addr, AddrHash> addrs;
  Interner<Time, TimeHash> times;
  Interner<EnvData, EnvHash> envs;
  Interner<ValData, ValHash> vals;
  Interner<MarkData, MarkHash> marks;
  Interner<FrameData, FrameHash> frames;
  Interner<CKontData, CKontHash> ckonts;
  Interner<MetaData, MetaHash> metas;
  Interner<BKontData, BKontHash> bkonts;
  Interner<AKontData, AKontHash> akonts;
  Interner<SKData, SKHash> sks;
  Interner<CtxData, CtxHash> ctxs;
  Interner<SortedU32s, SortedU32sHash> usets;  // item sets, store-id sets, value lists
  Interner<StoreData, StoreHash> stores;
  Interner<ChiData, ChiHash> chis;
  Interner<VecU32, VecU32Hash> lkonts;  // CESIK local continuations (frame ids)

  MarkId empty_mark;
  EnvId empty_env;
  StoreId empty_store;
  ChiId empty_chi;
  TimeId t_zero;
  CKontId ckont_empty;
  MetaId meta_nil;
  AKontId akont_empty;
  BKontId bkont_empty;
  SKId sk_empty;
  LKontId lkont_empty;
  ItemSetId empty_set;

  // ---- sets ----
  ItemSetId set_add(ItemSetId s, uint32_t x) {
    const auto& cur = usets.at(s).v;
    auto it = std::lower_bound(cur.begin(), cur.end(), x);
    if (it != cur.end() && *it == x) return s;
    SortedU32s out;
    out.v.reserve(cur.size() + 1);
    out.v.insert(out.v.end(), cur.begin(), it);
    out.v.push_back(x);
    out.v.insert(out.v.end(), it, cur.end());
    return usets.intern(out);
  }
  ItemSetId set_union(ItemSetId a, ItemSetId b) {
    if (a == b) return a;
    SortedU32s out;
    const auto& va = usets.at(a).v;
    const auto& vb = usets.at(b).v;
    std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(out.v));
    return usets.intern(out);
  }
  bool set_contains(ItemSetId s, uint32_t x) const {
    const auto& v = usets.at(s).v;
    return std::binary_search(v.begin(), v.end(), x);
  }
  bool set_subset(ItemSetId a, ItemSetId b) const {
    const auto& va = usets.at(a).v;
    const auto& vb = usets.at(b).v;
    return std::includes(vb.begin(), vb.end(), va.begin(), va.end());
  }

  // ---- environments ----
  EnvId env_extend(EnvId e, Sym x, AddrId a) {
    EnvData d = envs.at(e);
    auto it = std::lower_bound(d.binds.begin(), d.binds.end(), std::make_pair(x, AddrId(0)),
                               [](const auto& p, const auto& q) { return p.first < q.first; });
    if (it != d.binds.end() && it->first == x)
      it->second = a;
    else
      d.binds.insert(it, {x, a});
    return envs.intern(d);
  }
  bool env_lookup(EnvId e, Sym x, AddrId* out) const {
    const auto& b = envs.at(e).binds;
    auto it = std::lower_bound(b.begin(), b.end(), std::make_pair(x, AddrId(0)),
                               [](const auto& p, const auto& q) { return p.first < q.first; });
    if (it == b.end() || it->first != x) return false;
    *out = it->second;
    return true;
  }

  // ---- stores ----
  ItemSetId store_get(StoreId s, AddrId a) const {
    const auto& b = stores.at(s).binds;
    auto it = std::lower_bound(b.begin(), b.end(), std::make_pair(a, ItemSetId(0)),
                               [](const auto& p, const auto& q) { return p.first < q.first; });
    if (it == b.end() || it->first != a) return empty_set;
    return it->second;
  }
  bool store_has(StoreId s, AddrId a) const {
    const auto& b = stores.at(s).binds;
    auto it = std::lower_bound(b.begin(), b.end(), std::make_pair(a, ItemSetId(0)),
                               [](const auto& p, const auto& q) { return p.first < q.first; });
    return it != b.end() && it->first == a;
  }
  StoreId store_join_item(StoreId s, AddrId a, StoreItem item) {
    StoreData d = stores.at(s);
    auto it = std::lower_bound(d.binds.begin(), d.binds.end(), std::make_pair(a, ItemSetId(0)),
                               [](const auto& p, const auto& q) { return p.first < q.first; });
    if (it != d.binds.end() && it->first == a) {
      ItemSetId ns = set_add(it->second, item);
      if (ns == it->second) return s;
      it->second = ns;
    } else {
      SortedU32s single;
      single.v.push_back(item);
      d.binds.insert(it, {a, usets.intern(single)});
    }
    return stores.intern(d);
  }
  StoreId store_join_val(StoreId s, AddrId a, ValId v) {
    return store_join_item(s, a, item_of_val(v));
  }
  StoreId store_join(StoreId s1, StoreId s2) {
    if (s1 == s2) return s1;
    StoreData out;
    const auto& a = stores.at(s1).binds;
    const auto& b = stores.at(s2).binds;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j >= b.size() || (i < a.size() && a[i].first < b[j].first))
        out.binds.push_back(a[i++]);
      else if (i >= a.size() || b[j].first < a[i].first)
        out.binds.push_back(b[j++]);
      else {
        out.binds.push_back({a[i].first, set_union(a[i].second, b[j].second)});
        i++;
        j++;
      }
    }
    return stores.intern(out);
  }
  // Keeps only the listed addresses (GC restriction).
  StoreId store_restrict(StoreId s, const std::vector<AddrId>& live_sorted) {
    StoreData out;
    for (const auto& [a, is] : stores.at(s).binds)
      if (std::binary_search(live_sorted.begin(), live_sorted.end(), a))
        out.binds.push_back({a, is});
    return stores.intern(out);
  }
  bool store_leq(StoreId a, StoreId b) const {
    for (const auto& [addr, is] : stores.at(a).binds)
      if (!set_subset(is, store_get(b, addr))) return false;
    return true;
  }

  // ---- chi (KClosure) ----
  uint32_t chi_get(ChiId c, AddrId a) const {
    const auto& b = chis.at(c).binds;
    auto it = std::lower_bound(b.begin(), b.end(), std::make_pair(a, uint32_t(0)),
                               [](const auto& p, const auto& q) { return p.first < q.first; });
    if (it == b.end() || it->first != a) return empty_set;
    return it->second;
  }
  ChiId chi_join_set(ChiId c, AddrId a, uint32_t storeSet) {
    if (storeSet == empty_set) return c;
    ChiData d = chis.at(c);
    auto it = std::lower_bound(d.binds.begin(), d.binds.end(), std::make_pair(a, uint32_t(0)),
                               [](const auto& p, const auto& q) { return p.first < q.first; });
    if (it != d.binds.end() && it->first == a) {
      uint32_t ns = set_union(it->second, storeSet);
      if (ns == it->second) return c;
      it->second = ns;
    } else {
      d.binds.insert(it, {a, storeSet});
    }
    return chis.intern(d);
  }
  ChiId chi_join_store(ChiId c, AddrId a, StoreId s) {
    SortedU32s single;
    single.v.push_back(s);
    return chi_join_set(c, a, usets.intern(single));
  }
  ChiId chi_join(ChiId c1, ChiId c2) {
    if (c1 == c2) return c1;
    ChiId out = c1;
    for (const auto& [a, ss] : chis.at(c2).binds) out = chi_join_set(out, a, ss);
    return out;
  }
  bool chi_leq(ChiId a, ChiId b) const {
    for (const auto& [addr, ss] : chis.at(a).binds)
      if (!set_subset(ss, chi_get(b, addr))) return false;
    return true;
  }

  // ---- marks ----
  GD mark_lookup(MarkId m, Sym p, bool* found) const {
    const auto& v = marks.at(m).m;
    auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(p, GD::Grant),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it == v.end() || it->first != p) {
      *found = false;
      return GD::Grant;
    }
    *found = true;
    return it->second;
  }
  // m[P |-> gd]: listed permissions set to gd, others kept.
  MarkId mark_set_listed(MarkId m, const std::vector<Sym>& perms, GD gd) {
    MarkData d = marks.at(m);
    for (Sym p : perms) {
      auto it = std::lower_bound(d.m.begin(), d.m.end(), std::make_pair(p, GD::Grant),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
      if (it != d.m.end() && it->first == p)
        it->second = gd;
      else
        d.m.insert(it, {p, gd});
    }
    return marks.intern(d);
  }
  // m[~P |-> gd]: permissions in P keep m(x), every other permission maps to
  // gd. The permission alphabet is the program's textually present set.
  MarkId mark_set_complement(MarkId m, const std::vector<Sym>& keep, GD gd,
                             const std::vector<Sym>& alphabet) {
    MarkData d;
    for (Sym p : alphabet) {
      if (std::binary_search(keep.begin(), keep.end(), p)) {
        bool found;
        GD cur = mark_lookup(m, p, &found);
        if (found) d.m.push_back({p, cur});
      } else {
        d.m.push_back({p, gd});
      }
    }
    std::sort(d.m.begin(), d.m.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return marks.intern(d);
  }
  std::vector<Sym> mark_inverse(MarkId m, GD gd) const {
    std::vector<Sym> out;
    for (const auto& [p, v] : marks.at(m).m)
      if (v == gd) out.push_back(p);
    return out;
  }

  // ---- value helpers ----
  ValId mk_closure(int32_t lam, EnvId env) {
    ValData v{ValKind::Closure};
    v.lam = lam;
    v.env = env;
    return vals.intern(v);
  }
  ValId mk_int(int64_t i) {
    ValData v{ValKind::Int};
    v.i = i;
    return vals.intern(v);
  }
  ValId mk_bool(bool b) {
    ValData v{ValKind::Bool};
    v.i = b ? 1 : 0;
    return vals.intern(v);
  }
  ValId mk_comp(CKontId k) {
    ValData v{ValKind::Comp};
    v.ck = k;
    return vals.intern(v);
  }
  ValId mk_tilde(SKId sk) {
    ValData v{ValKind::Tilde};
    v.sk = sk;
    return vals.intern(v);
  }

  FrameId mk_appl(int32_t arg, EnvId env) {
    FrameData f{FrameKind::AppL};
    f.e = arg;
    f.env = env;
    return frames.intern(f);
  }
  FrameId mk_appr(ValId v) {
    FrameData f{FrameKind::AppR};
    f.v = v;
    return frames.intern(f);
  }
  FrameId mk_primarg(int32_t prim, ValListId done, uint16_t idx, EnvId env) {
    FrameData f{FrameKind::PrimArg};
    f.prim = prim;
    f.done = done;
    f.idx = idx;
    f.env = env;
    return frames.intern(f);
  }

  std::string addr_str(AddrId a) const;
  std::string val_str(ValId v) const;
  std::string frame_str(FrameId f) const;
  std::string mark_str(MarkId m) const;
  std::string time_str(TimeId t) const;
};

}  // namespace aam

#endif  // AAM_DOMAINS_HPP_

#pragma once

#include "sptree/combinators.hpp"
#include "sptree/tree.hpp"

namespace sptree::testing {

inline FamilyVariant balanced3() { return {FamilyVariant::Tag::Balanced3, 3}; }
inline FamilyVariant countable() { return {FamilyVariant::Tag::Countable, 3}; }

/// One kind with three weight-1 self-edges.
inline TreeScheme t1b() { return balanced3().base_scheme(); }

/// Totally ordered: one kind, one weight-1 self-edge.
inline TreeScheme t1c() { return countable().base_scheme(); }

/// Two-kind graft over the balanced base: spine + inner.
inline GraftScheme graft_t1b() { return spine_graft({t1b()}, 2); }

/// Two-kind graft over the chain base.
inline GraftScheme graft_t1c() { return spine_graft({t1c()}, 2); }

/// Root of weight 3 over two kinds of weights 2 and 3 at level 1.
inline TreeScheme mixed_weights() {
  TreeScheme s;
  s.kinds = {"root", "a", "b"};
  s.root = 0;
  s.succ = {
      {{1, 1}, {2, 1}, {2, 1}},
      {{1, 1}, {1, 1}},
      {{2, 1}, {2, 1}, {2, 1}},
  };
  s.validate();
  return s;
}

/// Single kind with a weight-2 self-loop next to a weight-1 one.
inline TreeScheme heavy_loop() {
  TreeScheme s;
  s.kinds = {"a"};
  s.root = 0;
  s.succ = {{{0, 1}, {0, 2}}};
  s.validate();
  return s;
}

}  // namespace sptree::testing

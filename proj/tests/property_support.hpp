#ifndef MICHEL_TESTS_PROPERTY_SUPPORT_HPP
#define MICHEL_TESTS_PROPERTY_SUPPORT_HPP

// Sampled-postcondition generator shared by the WP suites and the
// acceptance run.

#include <cstddef>

#include "michel/gen.hpp"
#include "michel/value.hpp"
#include "michel/wp.hpp"

inline michel::Predicate gen_post(michel::Rng& r, const michel::StackTy& out_ty) {
  using namespace michel;
  switch (r.below(out_ty.empty() ? 3 : 5)) {
    case 0:
      return Predicate{[](const Stack&) { return true; }, "true"};
    case 1:
      return Predicate{[](const Stack&) { return false; }, "false"};
    case 2: {
      std::size_t depth = out_ty.size();
      return Predicate{[depth](const Stack& st) { return st.size() == depth; }, "depth"};
    }
    case 3: {
      Value probe = gen_value(r, out_ty[0]);
      return Predicate{[probe](const Stack& st) { return !st.empty() && st[0] == probe; },
                       "top-equals"};
    }
    default: {
      Ty want = out_ty[0];
      return Predicate{
          [want](const Stack& st) { return !st.empty() && value_has_type(st[0], want); },
          "top-type"};
    }
  }
}

#endif  // MICHEL_TESTS_PROPERTY_SUPPORT_HPP

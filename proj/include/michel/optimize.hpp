#ifndef MICHEL_OPTIMIZE_HPP
#define MICHEL_OPTIMIZE_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "michel/ast.hpp"

namespace michel {

// A peephole pass over one (flat) instruction sequence; `visit` takes care
// of nested sequences. After a rewrite the scan resumes one position back so
// newly adjacent patterns are caught in the same application.
using Pass = std::function<USeq(USeq)>;

namespace detail {

inline void rescan(std::size_t& i) { i = (i == 0) ? 0 : i - 1; }

}  // namespace detail

// Removes DROP 0, DIG 0 and DUG 0, splices DIP 0 bodies inline (the scan
// resumes at the start of the spliced material) and turns DIG 1 / DUG 1
// into SWAP.
inline USeq pass_dig0dug0(USeq s) {
  for (std::size_t i = 0; i < s.size();) {
    UInstr& x = s[i];
    if ((x.op == Op::Drop || x.op == Op::Dig || x.op == Op::Dug) && x.n == 0) {
      s.erase(s.begin() + i);
      detail::rescan(i);
      continue;
    }
    if ((x.op == Op::Dig || x.op == Op::Dug) && x.n == 1) {
      UInstr sw = UInstr::simple(Op::Swap);
      sw.pos = x.pos;
      s[i] = std::move(sw);
      detail::rescan(i);
      continue;
    }
    if (x.op == Op::Dip && x.n == 0) {
      USeq body = std::move(x.body_a);
      s.erase(s.begin() + i);
      s.insert(s.begin() + i, std::make_move_iterator(body.begin()),
               std::make_move_iterator(body.end()));
      detail::rescan(i);
      continue;
    }
    ++i;
  }
  return s;
}

// Removes adjacent DIG n; DUG n with equal n.
inline USeq pass_digndugn(USeq s) {
  for (std::size_t i = 0; i + 1 < s.size();) {
    if (s[i].op == Op::Dig && s[i + 1].op == Op::Dug && s[i].n == s[i + 1].n) {
      s.erase(s.begin() + i, s.begin() + i + 2);
      detail::rescan(i);
      continue;
    }
    ++i;
  }
  return s;
}

// Removes adjacent SWAP; SWAP (left-to-right, so SWAP;SWAP;SWAP keeps one).
inline USeq pass_swapswap(USeq s) {
  for (std::size_t i = 0; i + 1 < s.size();) {
    if (s[i].op == Op::Swap && s[i + 1].op == Op::Swap) {
      s.erase(s.begin() + i, s.begin() + i + 2);
      detail::rescan(i);
      continue;
    }
    ++i;
  }
  return s;
}

// PUSH; DROP 1 disappears, PUSH; DROP n+1 becomes DROP n.
inline USeq pass_push_drop(USeq s) {
  for (std::size_t i = 0; i + 1 < s.size();) {
    if (s[i].op == Op::Push && s[i + 1].op == Op::Drop && s[i + 1].n >= 1) {
      std::uint32_t n = s[i + 1].n;
      if (n == 1) {
        s.erase(s.begin() + i, s.begin() + i + 2);
      } else {
        s[i + 1].n = n - 1;
        s.erase(s.begin() + i);
      }
      detail::rescan(i);
      continue;
    }
    ++i;
  }
  return s;
}

// Applies `p` to every nested sequence bottom-up, then to the sequence
// itself.
inline USeq visit(USeq s, const Pass& p) {
  for (UInstr& i : s) {
    if (!i.body_a.empty()) i.body_a = visit(std::move(i.body_a), p);
    if (!i.body_b.empty()) i.body_b = visit(std::move(i.body_b), p);
  }
  return p(s);
}

// The four passes, once each, in presentation order.
inline USeq cleanup(USeq s) {
  s = visit(std::move(s), pass_dig0dug0);
  s = visit(std::move(s), pass_digndugn);
  s = visit(std::move(s), pass_swapswap);
  s = visit(std::move(s), pass_push_drop);
  return s;
}

// Optional: iterate cleanup to a fixed point (CLI --fixpoint).
inline USeq cleanup_fixpoint(USeq s) {
  while (true) {
    USeq next = cleanup(s);
    if (next == s) return next;
    s = std::move(next);
  }
}

}  // namespace michel

#endif  // MICHEL_OPTIMIZE_HPP

#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "michel/gen.hpp"
#include "michel/interp.hpp"
#include "michel/optimize.hpp"
#include "michel/parser.hpp"
#include "michel/printer.hpp"
#include "michel/typecheck.hpp"

using namespace michel;

namespace {

USeq seq(const char* text) { return parse_instr_seq(text); }

}  // namespace

TEST_CASE("dig0dug0 rewrite table") {
  CHECK(pass_dig0dug0(seq("{ DIG 1 }")) == seq("{ SWAP }"));
  CHECK(pass_dig0dug0(seq("{ DUG 1 }")) == seq("{ SWAP }"));
  CHECK(pass_dig0dug0(seq("{ DIP 0 { ADD } }")) == seq("{ ADD }"));
  CHECK(pass_dig0dug0(seq("{ DROP 0; PUSH int 1 }")) == seq("{ PUSH int 1 }"));
  CHECK(pass_dig0dug0(seq("{ DIG 0 }")) == USeq{});
  CHECK(pass_dig0dug0(seq("{ DUG 0 }")) == USeq{});
  // untouched forms
  CHECK(pass_dig0dug0(seq("{ DIG 2; DROP 1; DIP 1 { ADD } }")) ==
        seq("{ DIG 2; DROP 1; DIP 1 { ADD } }"));
}

TEST_CASE("dig0dug0 rescans spliced material") {
  CHECK(pass_dig0dug0(seq("{ DIP 0 { DIG 0; DIG 1 } }")) == seq("{ SWAP }"));
  CHECK(pass_dig0dug0(seq("{ DIP 0 { } }")) == USeq{});
}

TEST_CASE("digndugn rewrite table") {
  CHECK(pass_digndugn(seq("{ DIG 2; DUG 2 }")) == USeq{});
  CHECK(pass_digndugn(seq("{ DIG 2; DUG 3 }")) == seq("{ DIG 2; DUG 3 }"));
  CHECK(pass_digndugn(seq("{ SWAP; DIG 4; DUG 4; ADD }")) == seq("{ SWAP; ADD }"));
  // removal exposes a new adjacent pair in the same scan
  CHECK(pass_digndugn(seq("{ DIG 2; DIG 3; DUG 3; DUG 2 }")) == USeq{});
  // DUG n; DIG n is not in the table
  CHECK(pass_digndugn(seq("{ DUG 2; DIG 2 }")) == seq("{ DUG 2; DIG 2 }"));
}

TEST_CASE("swapswap rewrite table") {
  CHECK(pass_swapswap(seq("{ SWAP; SWAP }")) == USeq{});
  CHECK(pass_swapswap(seq("{ SWAP }")) == seq("{ SWAP }"));
  CHECK(pass_swapswap(seq("{ SWAP; SWAP; SWAP }")) == seq("{ SWAP }"));
  CHECK(pass_swapswap(seq("{ SWAP; SWAP; SWAP; SWAP }")) == USeq{});
  CHECK(pass_swapswap(seq("{ DUP; SWAP; SWAP; DUP }")) == seq("{ DUP; DUP }"));
}

TEST_CASE("push_drop rewrite table") {
  CHECK(pass_push_drop(seq("{ PUSH int 1; DROP 1 }")) == USeq{});
  CHECK(pass_push_drop(seq("{ PUSH int 1; DROP 3 }")) == seq("{ DROP 2 }"));
  CHECK(pass_push_drop(seq("{ PUSH int 1; ADD }")) == seq("{ PUSH int 1; ADD }"));
  // cascades: the shrunken DROP pairs up with the previous PUSH
  CHECK(pass_push_drop(seq("{ PUSH int 1; PUSH int 2; DROP 2 }")) == USeq{});
  // PUSH; DROP 0 is left for dig0dug0
  CHECK(pass_push_drop(seq("{ PUSH int 1; DROP 0 }")) == seq("{ PUSH int 1; DROP 0 }"));
}

TEST_CASE("visit reaches every nested sequence") {
  CHECK(visit(seq("{ IF { SWAP; SWAP } { } }"), pass_swapswap) == seq("{ IF { } { } }"));
  CHECK(visit(seq("{ DIP 1 { DIG 0 } }"), pass_dig0dug0) == seq("{ DIP 1 { } }"));
  CHECK(visit(USeq{}, pass_swapswap) == USeq{});
  CHECK(visit(seq("{ LOOP { IF_NONE { SWAP; SWAP } { DROP 1 } } }"), pass_swapswap) ==
        seq("{ LOOP { IF_NONE { } { DROP 1 } } }"));
  CHECK(visit(seq("{ { SWAP; SWAP } }"), pass_swapswap) == seq("{ { } }"));
}

TEST_CASE("cleanup composes the four passes in order") {
  CHECK(cleanup(seq("{ DIG 1; DUG 1 }")) == USeq{});
  CHECK(cleanup(seq("{ PUSH int 1; DROP 0; DROP 1 }")) == USeq{});
  CHECK(cleanup(seq("{ DIP 0 { SWAP }; SWAP }")) == USeq{});
  CHECK(cleanup(seq("{ DIG 3; DUG 3; PUSH int 1; DROP 2 }")) == seq("{ DROP 1 }"));
}

TEST_CASE("cleanup leaves the voting contract unchanged") {
  ContractSrc c = parse_contract(vote_tz_text());
  CHECK(cleanup(c.code) == c.code);
}

TEST_CASE("cleanup never grows a sequence") {
  for (const char* text :
       {"{ DIG 1; DUG 1 }", "{ SWAP; SWAP; SWAP }", "{ PUSH int 1; DROP 3 }",
        "{ IF { DIG 0 } { DIP 0 { DUP } }; DROP 1 }", "{ LOOP { DIG 2; DUG 2; PUSH bool False } }",
        "{ DUP; DUP; ADD; DROP 1 }"}) {
    USeq s = seq(text);
    CHECK(count_nodes(cleanup(s)) <= count_nodes(s));
  }
}

TEST_CASE("cleanup preserves typing and semantics on generated programs") {
  // sampled mirror of the full acceptance campaign
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng tyr(seed + 424242);
    StackTy input = gen_stack_ty(tyr, 8, 2);
    GenProgram p = gen_typed_program(seed, 4, input);
    USeq optimized = cleanup(p.code);
    CHECK(count_nodes(optimized) <= count_nodes(p.code));

    TypedSeq before = typecheck_seq(p.code, input);
    TypedSeq after = typecheck_seq(optimized, input);
    REQUIRE(before.fails == after.fails);
    if (!before.fails) REQUIRE(before.out == after.out);

    for (int k = 0; k < 3; ++k) {
      Stack st = gen_stack(seed * 31 + static_cast<std::uint64_t>(k), input);
      Env env{static_cast<std::int64_t>(tyr.below(10000000))};
      ExecResult orig = eval(before, 10000, st, env);
      ExecResult opt = eval(after, 10000, st, env);
      REQUIRE_FALSE(orig.is_out_of_fuel());
      INFO("seed " << seed << " stack " << k);
      REQUIRE(orig == opt);
    }
  }
}

TEST_CASE("cleanup_fixpoint iterates to stability") {
  // push_drop (the last pass) uncovers a SWAP;SWAP that swapswap already
  // missed, so one cleanup round is not enough
  USeq tricky = seq("{ SWAP; PUSH int 1; DROP 1; SWAP }");
  CHECK(cleanup(tricky) == seq("{ SWAP; SWAP }"));
  CHECK(cleanup_fixpoint(tricky) == USeq{});
}

#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "michel/parser.hpp"
#include "michel/typecheck.hpp"

using namespace michel;

namespace {

StackTy out_of(const char* seq_text, StackTy input) {
  TypedSeq ts = typecheck_seq(parse_instr_seq(seq_text), std::move(input));
  REQUIRE_FALSE(ts.fails);
  return ts.out;
}

}  // namespace

TEST_CASE("the amount guard of the voting contract types as bool") {
  StackTy out = out_of("{ PUSH mutez 5000000; COMPARE; GT }", {Ty::mutez()});
  CHECK(out == StackTy{Ty::boolean()});
}

TEST_CASE("ADD overload table") {
  CHECK(out_of("{ ADD }", {Ty::nat(), Ty::nat()}) == StackTy{Ty::nat()});
  CHECK(out_of("{ ADD }", {Ty::integer(), Ty::integer()}) == StackTy{Ty::integer()});
  CHECK(out_of("{ ADD }", {Ty::nat(), Ty::integer()}) == StackTy{Ty::integer()});
  CHECK(out_of("{ ADD }", {Ty::integer(), Ty::nat()}) == StackTy{Ty::integer()});
  CHECK(out_of("{ ADD }", {Ty::mutez(), Ty::mutez()}) == StackTy{Ty::mutez()});
  CHECK_THROWS_AS(typecheck_seq(parse_instr_seq("{ ADD }"), {Ty::string(), Ty::string()}),
                  TypeError);
  CHECK_THROWS_AS(typecheck_seq(parse_instr_seq("{ ADD }"), {Ty::mutez(), Ty::nat()}), TypeError);
}

TEST_CASE("SUB overload table") {
  CHECK(out_of("{ SUB }", {Ty::nat(), Ty::nat()}) == StackTy{Ty::integer()});
  CHECK(out_of("{ SUB }", {Ty::integer(), Ty::nat()}) == StackTy{Ty::integer()});
  CHECK(out_of("{ SUB }", {Ty::nat(), Ty::integer()}) == StackTy{Ty::integer()});
  CHECK(out_of("{ SUB }", {Ty::integer(), Ty::integer()}) == StackTy{Ty::integer()});
  CHECK(out_of("{ SUB }", {Ty::mutez(), Ty::mutez()}) == StackTy{Ty::mutez()});
}

TEST_CASE("comparisons, map and option opcodes resolve") {
  Ty smap = Ty::map(Ty::string(), Ty::integer());
  CHECK(out_of("{ COMPARE }", {Ty::string(), Ty::string()}) == StackTy{Ty::integer()});
  CHECK(out_of("{ GET }", {Ty::string(), smap}) == StackTy{Ty::option(Ty::integer())});
  CHECK(out_of("{ MEM }", {Ty::string(), smap}) == StackTy{Ty::boolean()});
  CHECK(out_of("{ UPDATE }", {Ty::string(), Ty::option(Ty::integer()), smap}) == StackTy{smap});
  CHECK(out_of("{ EQ }", {Ty::integer()}) == StackTy{Ty::boolean()});
  CHECK(out_of("{ NOT }", {Ty::boolean()}) == StackTy{Ty::boolean()});
  CHECK_THROWS_AS(typecheck_seq(parse_instr_seq("{ COMPARE }"), {smap, smap}), TypeError);
  CHECK_THROWS_AS(typecheck_seq(parse_instr_seq("{ GET }"), {Ty::integer(), smap}), TypeError);
  CHECK_THROWS_AS(typecheck_seq(parse_instr_seq("{ EQ }"), {Ty::nat()}), TypeError);
}

TEST_CASE("stack manipulation typing") {
  StackTy four = {Ty::nat(), Ty::integer(), Ty::string(), Ty::boolean()};
  CHECK(out_of("{ DIG 2 }", four) ==
        StackTy{Ty::string(), Ty::nat(), Ty::integer(), Ty::boolean()});
  CHECK(out_of("{ DUG 2 }", four) ==
        StackTy{Ty::integer(), Ty::string(), Ty::nat(), Ty::boolean()});
  CHECK(out_of("{ DIG 0 }", four) == four);
  CHECK(out_of("{ DROP 2 }", four) == StackTy{Ty::string(), Ty::boolean()});
  CHECK(out_of("{ DIP 2 { DROP 1 } }", four) ==
        StackTy{Ty::nat(), Ty::integer(), Ty::boolean()});
  CHECK_THROWS_AS(typecheck_seq(parse_instr_seq("{ DIG 4 }"), four), TypeError);
  CHECK_THROWS_AS(typecheck_seq(parse_instr_seq("{ DROP 5 }"), four), TypeError);
  CHECK_THROWS_AS(typecheck_seq(parse_instr_seq("{ SWAP }"), {Ty::nat()}), TypeError);
}

TEST_CASE("CAR requires a pair") {
  CHECK_THROWS_AS(typecheck_seq(parse_instr_seq("{ CAR }"), {Ty::integer()}), TypeError);
  CHECK(out_of("{ CAR }", {Ty::pair(Ty::nat(), Ty::string())}) == StackTy{Ty::nat()});
  CHECK(out_of("{ CDR }", {Ty::pair(Ty::nat(), Ty::string())}) == StackTy{Ty::string()});
}

TEST_CASE("data constructors") {
  CHECK(out_of("{ UNIT; SOME }", {}) == StackTy{Ty::option(Ty::unit())});
  CHECK(out_of("{ NONE int }", {}) == StackTy{Ty::option(Ty::integer())});
  CHECK(out_of("{ LEFT string }", {Ty::nat()}) == StackTy{Ty::sum(Ty::nat(), Ty::string())});
  CHECK(out_of("{ RIGHT string }", {Ty::nat()}) == StackTy{Ty::sum(Ty::string(), Ty::nat())});
  CHECK(out_of("{ NIL int; PUSH int 4; CONS }", {}) == StackTy{Ty::list(Ty::integer())});
  CHECK(out_of("{ EMPTY_MAP string nat }", {}) ==
        StackTy{Ty::map(Ty::string(), Ty::nat())});
  CHECK_THROWS_AS(typecheck_seq(parse_instr_seq("{ NIL int; PUSH nat 4; CONS }"), {}), TypeError);
}

TEST_CASE("PUSH literals are checked against the declared type") {
  CHECK(out_of("{ PUSH (pair string nat) (Pair \"Coq\" 5) }", {}) ==
        StackTy{Ty::pair(Ty::string(), Ty::nat())});
  CHECK_THROWS_AS(typecheck_seq(parse_instr_seq("{ PUSH nat -1 }"), {}), TypeError);
  CHECK_THROWS_AS(typecheck_seq(parse_instr_seq("{ PUSH int \"x\" }"), {}), TypeError);
}

TEST_CASE("branches must produce equal stacks") {
  CHECK(out_of("{ IF { PUSH int 1 } { PUSH int 2 } }", {Ty::boolean()}) ==
        StackTy{Ty::integer()});
  CHECK_THROWS_AS(
      typecheck_seq(parse_instr_seq("{ IF { PUSH int 1 } { PUSH nat 2 } }"), {Ty::boolean()}),
      TypeError);
  CHECK(out_of("{ IF_NONE { PUSH int 1 } { } }", {Ty::option(Ty::integer())}) ==
        StackTy{Ty::integer()});
  CHECK(out_of("{ IF_LEFT { DROP 1; UNIT } { DROP 1; UNIT } }",
               {Ty::sum(Ty::nat(), Ty::string())}) == StackTy{Ty::unit()});
}

TEST_CASE("failure polymorphism unifies with anything") {
  // Fig 1's amount guard needs this
  CHECK(out_of("{ IF { FAIL } { } }", {Ty::boolean(), Ty::nat()}) == StackTy{Ty::nat()});
  CHECK(out_of("{ IF { } { PUSH string \"no\"; FAILWITH } }", {Ty::boolean(), Ty::nat()}) ==
        StackTy{Ty::nat()});

  // both branches bottom: whole IF is bottom, and unifies with the tail
  TypedSeq both = typecheck_seq(parse_instr_seq("{ IF { FAIL } { FAIL }; CAR; CDR; DUP }"),
                                {Ty::boolean()});
  CHECK(both.fails);

  // a failing sequence typechecks regardless of what the caller expects
  TypedSeq fw = typecheck_seq(parse_instr_seq("{ UNIT; FAILWITH }"), {});
  CHECK(fw.fails);
}

TEST_CASE("LOOP typing") {
  // bool :: nat :: [] -> nat :: []
  CHECK(out_of("{ LOOP { PUSH bool False } }", {Ty::boolean(), Ty::nat()}) ==
        StackTy{Ty::nat()});
  // body must restore the loop input stack
  CHECK_THROWS_AS(
      typecheck_seq(parse_instr_seq("{ LOOP { PUSH int 1; PUSH bool False } }"),
                    {Ty::boolean()}),
      TypeError);
  // a failing body unifies
  CHECK(out_of("{ LOOP { FAIL } }", {Ty::boolean(), Ty::nat()}) == StackTy{Ty::nat()});
}

TEST_CASE("FAILWITH needs a payload on the stack") {
  CHECK_THROWS_AS(typecheck_seq({UInstr::simple(Op::FailWith)}, {}), TypeError);
}

TEST_CASE("typecheck_contract accepts the voting contract") {
  ContractSrc c = parse_contract(vote_tz_text());
  TypedContract tc = typecheck_contract(c);
  CHECK(tc.code.out == contract_output_ty(c));
}

TEST_CASE("typecheck_contract rejects a wrong final stack") {
  ContractSrc empty = parse_contract("storage unit; parameter unit; code { }");
  try {
    typecheck_contract(empty);
    FAIL("expected TypeError");
  } catch (const TypeError& e) {
    CHECK(std::string(e.what()).find("pair unit unit") != std::string::npos);
  }

  // Fig 1 without the NIL operation; PAIR epilogue ends at [map string int]
  ContractSrc mutated = parse_contract(vote_tz_text());
  mutated.code.pop_back();
  mutated.code.pop_back();
  try {
    typecheck_contract(mutated);
    FAIL("expected TypeError");
  } catch (const TypeError& e) {
    CHECK(std::string(e.what()).find("map string int") != std::string::npos);
  }
}

TEST_CASE("an always-failing contract satisfies the calling convention") {
  ContractSrc c = parse_contract("storage unit; parameter unit; code { FAIL }");
  TypedContract tc = typecheck_contract(c);
  CHECK(tc.code.fails);
}

TEST_CASE("typechecking is deterministic") {
  ContractSrc c = parse_contract(vote_tz_text());
  TypedContract a = typecheck_contract(c);
  TypedContract b = typecheck_contract(c);
  CHECK(a.code.out == b.code.out);
  CHECK(a.code.instrs.size() == b.code.instrs.size());
}

TEST_CASE("errors carry instruction positions") {
  try {
    typecheck_seq(parse_instr_seq("{ SWAP;\n  CAR }"), {Ty::nat(), Ty::nat()});
    FAIL("expected TypeError");
  } catch (const TypeError& e) {
    CHECK(e.pos().line == 2);
  }
}

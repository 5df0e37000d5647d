#include <catch2/catch_amalgamated.hpp>
#include <string>

#include "fixtures.hpp"
#include "michel/parser.hpp"
#include "michel/printer.hpp"

using namespace michel;

TEST_CASE("the voting contract parses") {
  ContractSrc c = parse_contract(vote_tz_text());
  CHECK(c.storage_ty == Ty::map(Ty::string(), Ty::integer()));
  CHECK(c.parameter_ty == Ty::string());

  // Top-level shape after macro expansion: AMOUNT; PUSH; COMPARE; GT; IF;
  // DUP; DIP; CAR; DUP; DIP; UPDATE; NIL; PAIR.
  REQUIRE(c.code.size() == 13);
  CHECK(c.code[0].op == Op::Amount);
  CHECK(c.code[1] == UInstr::push(Ty::mutez(), Literal::intlit(5000000)));
  CHECK(c.code[2].op == Op::Compare);
  CHECK(c.code[3].op == Op::Gt);

  // IF { FAIL } {} expands the macro in the then-branch.
  const UInstr& fail_if = c.code[4];
  REQUIRE(fail_if.op == Op::If);
  REQUIRE(fail_if.body_a.size() == 2);
  CHECK(fail_if.body_a[0].op == Op::Unit);
  CHECK(fail_if.body_a[1].op == Op::FailWith);
  CHECK(fail_if.body_b.empty());

  // ASSERT_SOME expands inside the second DIP body.
  const UInstr& dip2 = c.code[9];
  REQUIRE(dip2.op == Op::Dip);
  CHECK(dip2.n == 1);
  REQUIRE(dip2.body_a.size() == 5);
  CHECK(dip2.body_a[0].op == Op::Get);
  const UInstr& assorted = dip2.body_a[1];
  REQUIRE(assorted.op == Op::IfNone);
  REQUIRE(assorted.body_a.size() == 2);
  CHECK(assorted.body_a[0].op == Op::Unit);
  CHECK(assorted.body_a[1].op == Op::FailWith);
  CHECK(assorted.body_b.empty());
  CHECK(dip2.body_a[2] == UInstr::push(Ty::integer(), Literal::intlit(1)));
  CHECK(dip2.body_a[3].op == Op::Add);
  CHECK(dip2.body_a[4].op == Op::Some);

  CHECK(count_nodes(c.code) == 24);
}

TEST_CASE("minimal and malformed contracts") {
  ContractSrc c = parse_contract("storage unit; parameter unit; code { }");
  CHECK(c.storage_ty == Ty::unit());
  CHECK(c.parameter_ty == Ty::unit());
  CHECK(c.code.empty());

  CHECK_THROWS_AS(parse_contract("code { SWAP SWAP }"), ParseError);
  CHECK_THROWS_AS(parse_contract("storage unit; parameter unit"), ParseError);
  CHECK_THROWS_AS(parse_contract("storage unit; storage unit; parameter unit; code { }"),
                  ParseError);
  CHECK_THROWS_AS(parse_contract("storage unit; parameter unit; code { BOGUS }"), ParseError);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_contract("storage unit;\nparameter unit;\ncode { SWAP SWAP }");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.pos().line == 3);
    CHECK(std::string(e.what()).find("3:") != std::string::npos);
  }
}

TEST_CASE("expand_macros on the documented cases") {
  USeq assert_some = {UInstr::simple(Op::MacroAssertSome)};
  USeq expanded = expand_macros(assert_some);
  REQUIRE(expanded.size() == 1);
  CHECK(expanded[0] ==
        UInstr::branch(Op::IfNone, {UInstr::simple(Op::Unit), UInstr::simple(Op::FailWith)}, {}));

  USeq fail = {UInstr::simple(Op::MacroFail)};
  USeq fail_exp = expand_macros(fail);
  REQUIRE(fail_exp.size() == 2);
  CHECK(fail_exp[0].op == Op::Unit);
  CHECK(fail_exp[1].op == Op::FailWith);

  USeq swap = {UInstr::simple(Op::Swap)};
  CHECK(expand_macros(swap) == swap);
}

TEST_CASE("expand_macros is idempotent") {
  USeq mixed = {
      UInstr::simple(Op::MacroFail),
      UInstr::branch(Op::If, {UInstr::simple(Op::MacroAssertSome)},
                     {UInstr::dip(1, {UInstr::simple(Op::MacroFail)})}),
      UInstr::simple(Op::Swap),
  };
  USeq once = expand_macros(mixed);
  CHECK(expand_macros(once) == once);
}

TEST_CASE("macro defaults for DIP and DROP") {
  USeq s = parse_instr_seq("{ DIP { SWAP }; DROP }");
  REQUIRE(s.size() == 2);
  CHECK(s[0].op == Op::Dip);
  CHECK(s[0].n == 1);
  CHECK(s[1].op == Op::Drop);
  CHECK(s[1].n == 1);

  USeq counted = parse_instr_seq("{ DIP 2 { SWAP }; DROP 3 }");
  CHECK(counted[0].n == 2);
  CHECK(counted[1].n == 3);
}

TEST_CASE("parse_value on the documented cases") {
  Value storage = parse_value(vote_storage_text(), Ty::map(Ty::string(), Ty::integer()));
  REQUIRE(storage.map_size() == 3);
  CHECK(storage.map_key(0) == Value::str("Agda"));
  CHECK(*map_find(storage, Value::str("Coq")) == Value::integer(0));

  CHECK(parse_value("Unit", Ty::unit()) == Value::unit());

  Value p = parse_value(R"((Pair "Coq" 5))", Ty::pair(Ty::string(), Ty::nat()));
  CHECK(value_has_type(p, Ty::pair(Ty::string(), Ty::nat())));
  CHECK(p == Value::pair(Value::str("Coq"), Value::nat(5)));

  // applications do not need parentheses at top level
  CHECK(parse_value(R"(Pair "Coq" 5)", Ty::pair(Ty::string(), Ty::nat())) == p);
}

TEST_CASE("parse_value rejects mismatches") {
  CHECK_THROWS_AS(parse_value("-1", Ty::nat()), TypeError);
  CHECK_THROWS_AS(parse_value("-1", Ty::mutez()), TypeError);
  CHECK_THROWS_AS(parse_value("9223372036854775808", Ty::mutez()), TypeError);  // 2^63
  CHECK(parse_value("9223372036854775807", Ty::mutez()) == Value::mutez(kMutezMax));
  CHECK_THROWS_AS(parse_value("Unit", Ty::boolean()), TypeError);
  CHECK_THROWS_AS(parse_value(R"({Elt "A" 0; Elt "A" 1})", Ty::map(Ty::string(), Ty::integer())),
                  TypeError);
  CHECK_THROWS_AS(parse_value("(Pair 1)", Ty::pair(Ty::nat(), Ty::nat())), ParseError);
}

TEST_CASE("empty braces work for lists and maps") {
  CHECK(parse_value("{}", Ty::list(Ty::integer())) == Value::list({}));
  CHECK(parse_value("{}", Ty::map(Ty::string(), Ty::integer())) == Value::empty_map());
  CHECK(parse_value("{ 1; 2; 3 }", Ty::list(Ty::nat())) ==
        Value::list({Value::nat(1), Value::nat(2), Value::nat(3)}));
}

TEST_CASE("print/parse round trip on the corpus") {
  for (const char* text : {vote_tz_text(), "storage unit; parameter unit; code { }",
                           "storage (pair (or unit string) (option (list int)));\n"
                           "parameter (map bool (map string mutez));\n"
                           "code { FAILWITH }"}) {
    ContractSrc c = parse_contract(text);
    ContractSrc back = parse_contract(print_contract(c));
    CHECK(back == c);
  }
}

TEST_CASE("printer emits the documented forms") {
  USeq s = {UInstr::push(Ty::integer(), Literal::intlit(1))};
  CHECK(print_instr_seq(s).find("PUSH int 1") != std::string::npos);

  ContractSrc c = parse_contract("storage unit; parameter unit; code { }");
  CHECK(print_contract(c).find("code { }") != std::string::npos);
}

TEST_CASE("value print/parse round trip") {
  Ty ty = Ty::pair(Ty::map(Ty::string(), Ty::integer()), Ty::list(Ty::option(Ty::boolean())));
  Value v = Value::pair(
      make_map({{Value::str("a\nb"), Value::integer(-4)}, {Value::str("\"q\""), Value::integer(9)}}),
      Value::list({Value::some(Value::boolean(true)), Value::none()}));
  CHECK(parse_value(print_value(v), ty) == v);
}

TEST_CASE("annotations are lexed and discarded") {
  USeq s = parse_instr_seq("{ DUP @copy; CAR %left; PUSH int 1; SWAP :renamed }");
  REQUIRE(s.size() == 4);
  CHECK(s[0].op == Op::Dup);
  CHECK(s[1].op == Op::Car);
  CHECK(s[3].op == Op::Swap);
}

TEST_CASE("nested bare blocks parse as sequence nodes") {
  USeq s = parse_instr_seq("{ { SWAP; SWAP }; DUP }");
  REQUIRE(s.size() == 2);
  CHECK(s[0].op == Op::Seq);
  CHECK(s[0].body_a.size() == 2);
}

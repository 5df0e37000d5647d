#include <catch2/catch_amalgamated.hpp>
#include <vector>

#include "michel/parser.hpp"
#include "michel/printer.hpp"
#include "michel/types.hpp"
#include "michel/value.hpp"

using namespace michel;

namespace {

// Small per-type universes for exhaustive order checks.
std::vector<Value> universe(TyTag tag) {
  switch (tag) {
    case TyTag::Bool:
      return {Value::boolean(false), Value::boolean(true)};
    case TyTag::Nat:
      return {Value::nat(0), Value::nat(1), Value::nat(2), Value::nat(5),
              Value::nat(BigInt("123456789012345678901234567890"))};
    case TyTag::Int:
      return {Value::integer(BigInt("-123456789012345678901234567890")), Value::integer(-3),
              Value::integer(-1), Value::integer(0), Value::integer(1), Value::integer(7),
              Value::integer(BigInt("987654321098765432109876543210"))};
    case TyTag::Mutez:
      return {Value::mutez(0), Value::mutez(1), Value::mutez(3000000), Value::mutez(5000000),
              Value::mutez(kMutezMax - 1), Value::mutez(kMutezMax)};
    case TyTag::String:
      return {Value::str(""), Value::str("A"), Value::str("Agda"), Value::str("Coq"),
              Value::str("Isabelle"), Value::str("a")};
    default:
      return {};
  }
}

int sign(int x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

}  // namespace

TEST_CASE("compare_value on the documented cases") {
  CHECK(compare_value(Value::mutez(5000000), Value::mutez(3000000)) == 1);
  CHECK(compare_value(Value::str("Coq"), Value::str("Coq")) == 0);
  CHECK(compare_value(Value::integer(-3), Value::integer(7)) == -1);
  CHECK(compare_value(Value::boolean(false), Value::boolean(true)) == -1);
}

TEST_CASE("compare_value rejects mismatched or non-comparable operands") {
  CHECK_THROWS_AS(compare_value(Value::nat(0), Value::integer(0)), std::logic_error);
  CHECK_THROWS_AS(compare_value(Value::unit(), Value::unit()), std::logic_error);
  CHECK_THROWS_AS(compare_value(Value::pair(Value::nat(0), Value::nat(1)),
                                Value::pair(Value::nat(0), Value::nat(1))),
                  std::logic_error);
}

TEST_CASE("compare_value is a total order on each comparable type") {
  for (TyTag tag : {TyTag::Bool, TyTag::Nat, TyTag::Int, TyTag::Mutez, TyTag::String}) {
    auto vals = universe(tag);
    for (const Value& a : vals) {
      CHECK(compare_value(a, a) == 0);
      for (const Value& b : vals) {
        int ab = compare_value(a, b);
        int ba = compare_value(b, a);
        CHECK(ab == -ba);
        CHECK((ab == 0) == (a == b));
        for (const Value& c : vals) {
          int bc = compare_value(b, c);
          if (ab <= 0 && bc <= 0) CHECK(compare_value(a, c) <= 0);
          if (ab >= 0 && bc >= 0) CHECK(compare_value(a, c) >= 0);
          CHECK(sign(compare_value(a, c)) == sign(compare_value(a, c)));
        }
      }
    }
  }
}

TEST_CASE("value_has_type on the documented cases") {
  CHECK(value_has_type(Value::pair(Value::str("x"), Value::nat(0)),
                       Ty::pair(Ty::string(), Ty::nat())));
  CHECK_FALSE(value_has_type(Value::nat(0), Ty::integer()));
  Value storage = parse_value(R"({Elt "Agda" 0; Elt "Coq" 0; Elt "Isabelle" 0})",
                              Ty::map(Ty::string(), Ty::integer()));
  CHECK(value_has_type(storage, Ty::map(Ty::string(), Ty::integer())));
  CHECK_FALSE(value_has_type(storage, Ty::map(Ty::string(), Ty::nat())));
  CHECK(storage.map_size() == 3);
}

TEST_CASE("value_has_type recurses through containers") {
  Value v = Value::list({Value::some(Value::integer(1)), Value::none()});
  CHECK(value_has_type(v, Ty::list(Ty::option(Ty::integer()))));
  CHECK_FALSE(value_has_type(v, Ty::list(Ty::option(Ty::nat()))));
  CHECK(value_has_type(Value::left(Value::unit()), Ty::sum(Ty::unit(), Ty::string())));
  CHECK_FALSE(value_has_type(Value::right(Value::unit()), Ty::sum(Ty::unit(), Ty::string())));
}

TEST_CASE("map equality is independent of insertion order") {
  std::vector<std::pair<Value, Value>> entries = {
      {Value::str("Isabelle"), Value::integer(0)},
      {Value::str("Agda"), Value::integer(4)},
      {Value::str("Coq"), Value::integer(2)},
  };
  Value in_order = make_map(entries);
  std::vector<std::pair<Value, Value>> reversed(entries.rbegin(), entries.rend());
  Value in_reverse = make_map(reversed);
  CHECK(in_order == in_reverse);
  CHECK(value_has_type(in_order, Ty::map(Ty::string(), Ty::integer())));
  // keys ascending
  REQUIRE(in_order.map_size() == 3);
  CHECK(in_order.map_key(0) == Value::str("Agda"));
  CHECK(in_order.map_key(1) == Value::str("Coq"));
  CHECK(in_order.map_key(2) == Value::str("Isabelle"));
}

TEST_CASE("map update inserts, replaces and deletes") {
  Value m = Value::empty_map();
  Value one = Value::integer(1);
  Value two = Value::integer(2);
  m = map_update(std::move(m), Value::str("Coq"), &one);
  CHECK(map_mem(m, Value::str("Coq")));
  CHECK(*map_find(m, Value::str("Coq")) == one);
  m = map_update(std::move(m), Value::str("Coq"), &two);
  CHECK(*map_find(m, Value::str("Coq")) == two);
  CHECK(m.map_size() == 1);
  m = map_update(std::move(m), Value::str("Coq"), nullptr);
  CHECK_FALSE(map_mem(m, Value::str("Coq")));
  CHECK(m.map_size() == 0);
  // deleting an absent key is a no-op
  m = map_update(std::move(m), Value::str("Agda"), nullptr);
  CHECK(m.map_size() == 0);
}

TEST_CASE("mutez bounds") {
  CHECK_THROWS_AS(Value::mutez(-1), std::invalid_argument);
  CHECK(Value::mutez(kMutezMax).tez == kMutezMax);
  CHECK_THROWS_AS(Value::nat(-1), std::invalid_argument);
}

TEST_CASE("nat and int are distinct even at equal magnitude") {
  CHECK(Value::nat(0) != Value::integer(0));
  CHECK(Value::nat(5) == Value::nat(5));
}

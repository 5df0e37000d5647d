#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "michel/contract_check.hpp"

using namespace michel;

TEST_CASE("the embedded voting contract matches the corpus copy") {
  CHECK(parse_contract(voting_contract_text()) == parse_contract(vote_tz_text()));
}

TEST_CASE("the voting contract satisfies the voting spec") {
  TypedContract c = typecheck_contract(parse_contract(voting_contract_text()));
  SpecReport report = check_contract_correct(c, voting_spec(), 500, 1);
  for (const auto& ce : report.counterexamples) {
    INFO("trial " << ce.trial << ": " << ce.detail << " on " << print_value(ce.input[0])
                  << " amount " << ce.env.amount);
    CHECK(false);
  }
  CHECK(report.ok());
  CHECK(report.trials == 500);
}

TEST_CASE("a mutated spec is refuted within 500 samples") {
  TypedContract c = typecheck_contract(parse_contract(voting_contract_text()));
  SpecReport report = check_contract_correct(c, voting_spec_increment_by_two(), 500, 1);
  CHECK_FALSE(report.ok());
}

TEST_CASE("an always-failing contract vacuously satisfies a failure spec") {
  TypedContract c =
      typecheck_contract(parse_contract("storage unit; parameter unit; code { FAIL }"));
  ContractSpec spec;
  spec.name = "always-fails";
  spec.relation = [](const Env&, const Stack&, const Stack&) { return true; };
  spec.min_fuel = [](const Stack&) { return 10; };
  spec.expected = [](const Env&, const Stack&) { return std::nullopt; };
  spec.gen_input = [](Rng& r) {
    return std::pair<Env, Stack>{Env{static_cast<std::int64_t>(r.below(100))},
                                 Stack{Value::pair(Value::unit(), Value::unit())}};
  };
  SpecReport report = check_contract_correct(c, spec, 100, 3);
  CHECK(report.ok());
}

TEST_CASE("the harness reports both failure directions") {
  // expected-success direction: a spec that wrongly demands success on
  // unknown candidates is refuted
  TypedContract c = typecheck_contract(parse_contract(voting_contract_text()));
  ContractSpec wrong = voting_spec();
  wrong.name = "accepts-unknown";
  wrong.expected = [](const Env& env, const Stack& input) -> std::optional<Stack> {
    const Value& storage = input[0].kids[1];
    if (env.amount < kVotingFee) return std::nullopt;
    // pretends unknown candidates enter the map at 1
    const Value& param = input[0].kids[0];
    const Value* votes = map_find(storage, param);
    Value bumped = Value::integer(votes ? votes->num + 1 : BigInt(1));
    Value updated = map_update(storage, param, &bumped);
    return Stack{Value::pair(Value::list({}), std::move(updated))};
  };
  SpecReport report = check_contract_correct(c, wrong, 500, 2);
  CHECK_FALSE(report.ok());
}

TEST_CASE("voting fuel bound is the instruction-node count") {
  ContractSpec spec = voting_spec();
  Stack dummy{Value::pair(Value::str("Coq"), Value::empty_map())};
  CHECK(spec.min_fuel(dummy) == 24);
}

#ifndef MICHEL_CONTRACT_CHECK_HPP
#define MICHEL_CONTRACT_CHECK_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "michel/gen.hpp"
#include "michel/interp.hpp"
#include "michel/parser.hpp"
#include "michel/printer.hpp"
#include "michel/typecheck.hpp"

namespace michel {

// A sampled correctness statement: eval succeeds exactly on inputs the
// relation accepts, and then returns the expected output.
struct ContractSpec {
  std::string name;
  // spec(input, output) as a computable relation; env carries the amount
  std::function<bool(const Env&, const Stack&, const Stack&)> relation;
  // least fuel the contract needs on this input
  std::function<Fuel(const Stack&)> min_fuel;
  // the (unique) output satisfying the relation, when one exists
  std::function<std::optional<Stack>(const Env&, const Stack&)> expected;
  // input sampler
  std::function<std::pair<Env, Stack>(Rng&)> gen_input;
};

struct SpecCounterexample {
  std::size_t trial = 0;
  Env env;
  Stack input;
  std::string detail;
};

struct SpecReport {
  std::string spec_name;
  std::size_t trials = 0;
  std::vector<SpecCounterexample> counterexamples;

  bool ok() const { return counterexamples.empty(); }
};

// Samples inputs and checks both directions of the correctness statement:
// (a) a successful run satisfies the relation, and (b) a satisfiable input
// must run successfully to the expected output.
inline SpecReport check_contract_correct(const TypedContract& c, const ContractSpec& spec,
                                         std::size_t samples, std::uint64_t seed) {
  SpecReport report;
  report.spec_name = spec.name;
  report.trials = samples;
  Rng r(seed);
  for (std::size_t trial = 0; trial < samples; ++trial) {
    auto [env, input] = spec.gen_input(r);
    Fuel fuel = spec.min_fuel(input);
    ExecResult run = eval(c.code, fuel, input, env);
    std::optional<Stack> want = spec.expected(env, input);
    if (run.is_success() && !spec.relation(env, input, run.stack)) {
      report.counterexamples.push_back(
          {trial, env, input, "run succeeded but violates the spec relation"});
      continue;
    }
    if (want) {
      if (!run.is_success()) {
        report.counterexamples.push_back(
            {trial, env, input, "spec expects success but the run did not succeed"});
      } else if (run.stack != *want) {
        report.counterexamples.push_back(
            {trial, env, input,
             "wrong output: got " + print_value(run.stack[0]) + ", want " +
                 print_value((*want)[0])});
      }
    } else if (run.is_success()) {
      report.counterexamples.push_back(
          {trial, env, input, "spec expects failure but the run succeeded"});
    }
  }
  return report;
}

// The voting contract, embedded for the built-in verification suite.
inline const char* voting_contract_text() {
  return
      "storage (map string int);\n"
      "parameter string;\n"
      "code {\n"
      "  AMOUNT;\n"
      "  PUSH mutez 5000000; COMPARE; GT;\n"
      "  IF { FAIL } {};\n"
      "  DUP; DIP { CDR; DUP };\n"
      "  CAR; DUP;\n"
      "  DIP { GET; ASSERT_SOME; PUSH int 1; ADD; SOME };\n"
      "  UPDATE;\n"
      "  NIL operation; PAIR\n"
      "}\n";
}

inline constexpr std::int64_t kVotingFee = 5000000;  // 5 tez

namespace detail {

inline std::pair<Env, Stack> gen_voting_input(Rng& r) {
  static const char* pool[] = {"Agda", "Coq", "Isabelle", "OCaml", "Lean", ""};
  constexpr std::size_t pool_size = sizeof(pool) / sizeof(pool[0]);

  Value storage = Value::empty_map();
  std::size_t keys = r.below(4) + 1;
  for (std::size_t i = 0; i < keys; ++i) {
    Value k = Value::str(pool[r.below(pool_size)]);
    Value count = Value::integer(r.range(0, 50));
    storage = map_update(std::move(storage), k, &count);
  }
  Value param = Value::str(pool[r.below(pool_size)]);

  // amounts straddling the 5 tez fee
  std::int64_t amount = 0;
  switch (r.below(8)) {
    case 0: amount = 0; break;
    case 1: amount = 1; break;
    case 2: amount = 4000000; break;
    case 3: amount = kVotingFee - 1; break;
    case 4: amount = kVotingFee; break;
    case 5: amount = kVotingFee + 1; break;
    case 6: amount = 9000000; break;
    default: amount = kMutezMax; break;
  }
  Stack input{Value::pair(std::move(param), std::move(storage))};
  return {Env{amount}, std::move(input)};
}

inline ContractSpec voting_spec_incrementing(BigInt step, std::string name) {
  ContractSpec spec;
  spec.name = std::move(name);
  Fuel fuel = static_cast<Fuel>(count_nodes(parse_contract(voting_contract_text()).code));
  spec.min_fuel = [fuel](const Stack&) { return fuel; };
  auto expected_output = [step](const Env& env, const Stack& input) -> std::optional<Stack> {
    const Value& param = input[0].kids[0];
    const Value& storage = input[0].kids[1];
    if (env.amount < kVotingFee) return std::nullopt;
    const Value* votes = map_find(storage, param);
    if (!votes) return std::nullopt;
    Value bumped = Value::integer(votes->num + step);
    Value updated = map_update(storage, param, &bumped);
    return Stack{Value::pair(Value::list({}), std::move(updated))};
  };
  spec.expected = expected_output;
  spec.relation = [expected_output](const Env& env, const Stack& input, const Stack& output) {
    std::optional<Stack> want = expected_output(env, input);
    return want && output == *want;
  };
  spec.gen_input = gen_voting_input;
  return spec;
}

}  // namespace detail

// Preconditions: amount >= 5 tez and the ballot is a known candidate.
// Postconditions: no operations, the chosen count is incremented by one and
// every other entry is unchanged.
inline ContractSpec voting_spec() {
  return detail::voting_spec_incrementing(1, "voting");
}

// Deliberately wrong spec (increments by 2) for mutation sanity checks.
inline ContractSpec voting_spec_increment_by_two() {
  return detail::voting_spec_incrementing(2, "voting-increment-2");
}

}  // namespace michel

#endif  // MICHEL_CONTRACT_CHECK_HPP

#ifndef MICHEL_TESTS_FIXTURES_HPP
#define MICHEL_TESTS_FIXTURES_HPP

// Shared corpus: the voting contract in Michelson and Albert, with the
// initial storage used throughout the suites.

inline const char* vote_tz_text() {
  return R"(storage (map string int); # candidates
parameter string; # chosen
code {
  # (chosen, candidates):[]
  AMOUNT;  # amount:(chosen, candidates):[]
  PUSH mutez 5000000; COMPARE; GT;
  # (5 tez > amount):(chosen, candidates):[]
  IF { FAIL } {}; # (chosen, candidates):[]
  DUP; DIP { CDR; DUP };
  # (chosen, candidates):candidates:candidates:[]
  CAR; DUP; # chosen:chosen:candidates:candidates:[]
  DIP { # chosen:candidates:candidates:[]
        GET; ASSERT_SOME;
        # candidates[chosen]:candidates:[]
        PUSH int 1; ADD; SOME
        # (Some (candidates[chosen]+1)):candidates:[]
      }; # chosen:(Some (candidates[chosen]+1)):candidates:[]
  UPDATE; # candidates':[]
  NIL operation; PAIR # (nil, candidates'):[]
}
)";
}

inline const char* vote_storage_text() {
  return R"({Elt "Agda" 0 ; Elt "Coq" 0 ; Elt "Isabelle" 0})";
}

inline const char* vote_alb_text() {
  return R"(type storage_ty = { threshold : mutez; votes: map string nat }

def vote :
  { param : string ; store : storage_ty }  ->
  { operations : list operation ; store : storage_ty } =
      {votes = state; threshold = threshold } = store ;
      (state0, state1) = dup state;
      (param0, param1) = dup param;
      prevote_option = state0[param0];
      { res = prevote } = assert_some { opt = prevote_option };
      one = 1; postvote = prevote + one; postvote = Some postvote;
      final_state =  update state1 param1 postvote;
      store = {threshold = threshold; votes = final_state};
      operations = ([] : list operation)

def guarded_vote :
  { param : string ; store : storage_ty } ->
  { operations : list operation ; store : storage_ty } =
    (store0, store1) = dup store;
    threshold = store0.threshold;
    am = amount;
    ok = am >= threshold;
    match ok with
        False f -> failwith "you are so cheap!"
      | True  t -> drop t;
          voting_parameters = { param = param ; store = store1 };
          vote voting_parameters
    end
)";
}

#endif  // MICHEL_TESTS_FIXTURES_HPP

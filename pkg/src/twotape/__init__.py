"""Two-way two-tape automata: deterministic, non-deterministic and alternating."""

from .certificates import (TOP, RejectProof, Strat, central_part_bound, central_part_count,
                           extract_reject_proof, glue, pigeonhole_threshold, proof_from_json,
                           proof_to_json, verify_reject_proof)
from .constructions import (SyncTransducer, complement_decide_deterministic,
                            intersection_sequential, intersection_universal, kapoutsis_bound,
                            lift_synchronous, parse_transducer, serialize_transducer, union)
from .engine import (Accept, ConfigGraph, GameSolution, RejectDead, RejectLoop, RunTree,
                     decide, enumerate_accepted, extract_run_tree, naive_decide,
                     simulate_deterministic, solve, successors)
from .errors import *  # noqa: F401,F403
from .model import (BEGIN, END, Automaton, AutomatonBuilder, Configuration, InputPair, Move,
                    Transition, parse_automaton, serialize_automaton, validate_automaton)
from .pictures import (FourWayAutomaton, Picture, fourway_to_twotape, product_of_words,
                       simulate_fourway, unary_pair_to_picture, picture_to_unary_pair)
from .zoo import (decode_permutation, encode_permutation, incrementer_transducer, lsb_binary,
                  oracle, zoo_automaton)

__version__ = "0.1.0"

"""Generalized braid words, pure-braid generators and quasitoric normal forms."""

from .alexander import (MarkovLog, MarkovStep, closure_to_quasitoric, component_count, cycle_normalize,
                        markov_conjugate, markov_stabilize, replay_markov)
from .cancel import CancelToken
from .errors import (Cancelled, GBraidError, MoveNotAllowed, NotNormal, NotPure, NotRegular, OutputMismatch,
                     ParseError, PatternMismatch, StrandMismatch, TheoryError, VerificationError)
from .oracle import SearchVerdict, bfs_equivalent, random_word
from .quasitoric import (QuasitoricShape, identity_quasitoric, lambda_to_quasitoric, pure_to_quasitoric,
                         quasitoric_inverse, quasitoric_type, slide_to_full)
from .render import RenderOptions, render
from .rewriter import (MoveInstance, RewriteTrace, apply_move, cancel_r2_pairs, format_trace, parse_trace,
                       replay_trace, straighten)
from .schreier import (CosetRep, LambdaGen, LambdaWord, conjugate_lambda, coset_rep, lambda_expand,
                       pure_to_lambda, rs_generator, schreier_system)
from .theory import (MoveFamily, TagSpec, TheorySpec, builtin, enabled_moves, format_theory, load_theory,
                     validate_normal)
from .word import (BraidWord, Letter, Permutation, compose, format_word, invert, is_pure, parse_word,
                   permutation, tag_exponents)

"""Bruhat intervals of S_n: hypercube decompositions, shortcuts and double shortcuts."""

from .bijection import (DbarPair, DPair, MalformedPair, enumerate_D, enumerate_D_alpha,
                        enumerate_Dbar, enumerate_Dbar_alpha, phi, phi_alpha, psi,
                        psi_alpha, psi_via_conjugation, verify_bijection)
from .bruhat import (BruhatGraph, BruhatPath, Interval, Kind, NoMinimum, NotComparable,
                     all_intervals, bruhat_graph, bruhat_leq, distance, geodesics,
                     interval, standard_hcd)
from .hcd import (EdgeFan, HcdReport, count_hypercube_embeddings, enumerate_amazing,
                  is_amazing, is_diamond_complete, is_hcd, join, spans_hypercube,
                  spans_hypercube_cluster)
from .perm import (Cycle, Permutation, RankMismatch, compose, cycle_to_perm, identity,
                   inverse, length, longest, parse_cycle, parse_perm)
from .rpoly import ElementOutsideInterval, RPoly, is_r_element, rtilde, rtilde_via_shortcuts
from .shortcut import (DSMultiset, ds_multiset, ds_symmetric, equivalence_classes,
                       shortcuts_by_paths, shortcuts_standard)

__version__ = "0.1.0"

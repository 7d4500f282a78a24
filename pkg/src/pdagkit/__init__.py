"""Recover DAG structure from conditional-independence information."""

from pdagkit.extension import (
    RemovalRecord,
    derive_dag,
    enumerate_extensions,
    markov_equivalent,
    removable_nodes,
    remove_node,
)
from pdagkit.graph import Dag, Pdag, SepsetTable, UGraph, adjacents, descendants, orient
from pdagkit.kernels import BACKEND
from pdagkit.oracle import (
    CountingOracle,
    Dataset,
    FisherZOracle,
    IndependenceOracle,
    OracleStats,
    PerfectOracle,
    counting,
    fisher_z_oracle,
    perfect_oracle,
)
from pdagkit.recovery import (
    RecoveryResult,
    close_orientations,
    find_skeleton,
    orient_colliders,
    recover,
    rule_IIc,
    rule_IV,
    rule_V,
)
from pdagkit.separation import (
    SeparationQuery,
    active_ptrail_exists,
    active_trail_exists,
    connected_in_every_extension,
    d_separated,
)
from pdagkit.synthesis import LinearModel, random_dag, random_model, sample, unit_model

__version__ = "0.1.0"

"""Worked-example graphs: a ten-node ground truth and its recovery stages.

``fig1_dag`` is the ground truth; ``fig2_skeleton`` through ``fig6_pdag``
are the successive pipeline states; ``fig7_pdag`` is ``fig6_pdag`` after
removing X3, X8 and X9; ``fig8_pdag`` is a separate seven-node example for
p-trail activeness.
"""

from __future__ import annotations

from pdagkit.graph import Dag, Pdag, UGraph

FIG1_LABELS = tuple(f"X{i}" for i in range(1, 11))

FIG1_EDGES = (
    ("X1", "X2"), ("X2", "X6"), ("X7", "X6"), ("X7", "X8"), ("X7", "X5"),
    ("X5", "X6"), ("X5", "X8"), ("X5", "X9"), ("X5", "X10"), ("X6", "X8"),
    ("X4", "X3"), ("X4", "X9"), ("X10", "X4"), ("X10", "X9"),
)  # fmt: skip

COLLIDER_ARROWS = (("X2", "X6"), ("X7", "X6"), ("X5", "X6"), ("X4", "X9"), ("X5", "X9"))
FIG6_UNDIRECTED = (("X1", "X2"), ("X3", "X4"), ("X4", "X10"), ("X5", "X10"), ("X5", "X7"))


def fig1_dag() -> Dag:
    return Dag.from_labels(FIG1_LABELS, FIG1_EDGES)


def fig2_skeleton() -> UGraph:
    return fig1_dag().skeleton()


def _stage(arrows) -> Pdag:
    arrows = set(arrows)
    pairs = {frozenset(a) for a in arrows}
    undirected = [e for e in FIG1_EDGES if frozenset(e) not in pairs]
    return Pdag.from_labels(FIG1_LABELS, arrows, undirected)


def fig3_pdag() -> Pdag:
    return _stage(COLLIDER_ARROWS)


def fig4_pdag() -> Pdag:
    return _stage(COLLIDER_ARROWS + (("X6", "X8"),))


def fig5_pdag() -> Pdag:
    return _stage(COLLIDER_ARROWS + (("X6", "X8"), ("X7", "X8"), ("X5", "X8")))


def fig6_pdag() -> Pdag:
    return _stage(
        COLLIDER_ARROWS + (("X6", "X8"), ("X7", "X8"), ("X5", "X8"), ("X10", "X9"))
    )


def fig7_pdag() -> Pdag:
    return Pdag.from_labels(
        ("X1", "X2", "X4", "X5", "X6", "X7", "X10"),
        directed=[("X2", "X6"), ("X7", "X6"), ("X5", "X6")],
        undirected=[("X1", "X2"), ("X4", "X10"), ("X5", "X10"), ("X5", "X7")],
    )


def fig8_pdag() -> Pdag:
    return Pdag.from_labels(
        tuple(f"X{i}" for i in range(11, 18)),
        directed=[
            ("X11", "X14"), ("X11", "X15"), ("X11", "X13"),
            ("X12", "X14"), ("X12", "X15"), ("X12", "X13"),
            ("X15", "X16"), ("X13", "X17"),
        ],
        undirected=[("X14", "X15"), ("X14", "X13")],
    )  # fmt: skip


FIXTURES = {
    "fig1": fig1_dag,
    "fig2": fig2_skeleton,
    "fig3": fig3_pdag,
    "fig4": fig4_pdag,
    "fig5": fig5_pdag,
    "fig6": fig6_pdag,
    "fig7": fig7_pdag,
    "fig8": fig8_pdag,
}

"""Golden classification data for every semisimple diagram of rank at most
two and for A3: the cuspidal strongly solvable spherical systems with all
their strong-solvability witnesses, admissible maps, and active-root
classes.

Color rows are listed in the source order of the classification tables;
witness subsets are 1-based row indices into that order.

Note on the second A1xA1 record: the color functionals are pinned by axiom
(A2) (the two colors at a simple root must sum to its coroot restricted to
Z Sigma), which forces the rows (1,-1) and (-1,1) alongside the shared
(1,1) color; see docs/conventions.md.
"""

GOLDEN = {
    "A1": [
        {
            "kappa": [(1,), (1,)],
            "dscs": [
                ((1,), ((1,),), [[(1,)]]),
                ((2,), ((1,),), [[(1,)]]),
            ],
        },
    ],
    "A1xA1": [
        {
            "kappa": [(1, 0), (1, 0), (0, 1), (0, 1)],
            "dscs": [
                ((1, 3), ((1, 0), (0, 1)), [[(1, 0)], [(0, 1)]]),
                ((1, 4), ((1, 0), (0, 1)), [[(1, 0)], [(0, 1)]]),
                ((2, 3), ((1, 0), (0, 1)), [[(1, 0)], [(0, 1)]]),
                ((2, 4), ((1, 0), (0, 1)), [[(1, 0)], [(0, 1)]]),
            ],
        },
        {
            "kappa": [(1, -1), (-1, 1), (1, 1)],
            "dscs": [
                ((3,), ((1, 1), (1, 1)), [[(1, 0), (0, 1)]]),
            ],
        },
    ],
    "A2": [
        {
            "kappa": [(1, 0), (0, 1), (1, -1), (-1, 1)],
            "dscs": [
                ((1, 2), ((1, 0), (0, 1)), [[(1, 0)], [(0, 1)]]),
                ((1, 4), ((1, 0), (-1, 1)), [[(1, 1)], [(0, 1)]]),
                ((2, 3), ((1, -1), (0, 1)), [[(1, 0)], [(1, 1)]]),
            ],
        },
        {
            "kappa": [(1, 1), (1, -2), (-2, 1)],
            "dscs": [
                ((1,), ((1, 1), (1, 1)), [[(1, 0), (0, 1)]]),
            ],
        },
    ],
    "B2": [
        {
            "kappa": [(1, 0), (0, 1), (1, -1), (-2, 1)],
            "dscs": [
                ((1, 2), ((1, 0), (0, 1)), [[(1, 0)], [(0, 1)]]),
                ((1, 4), ((1, 0), (-2, 1)), [[(1, 2)], [(0, 1)]]),
                ((2, 3), ((1, -1), (0, 1)), [[(1, 0)], [(1, 1)]]),
            ],
        },
        {
            "kappa": [(1, 0), (-1, 1), (1, -1), (-1, 1)],
            "dscs": [
                ((1, 2), ((1, 0), (-1, 1)), [[(1, 1)], [(0, 1)]]),
                ((1, 4), ((1, 0), (-1, 1)), [[(1, 1)], [(0, 1)]]),
            ],
        },
        {
            "kappa": [(1, 1), (1, -2), (-3, 1)],
            "dscs": [
                ((1,), ((1, 1), (1, 1)), [[(1, 0), (0, 1)]]),
            ],
        },
    ],
    "G2": [
        {
            "kappa": [(1, 0), (0, 1), (1, -3), (-1, 1)],
            "dscs": [
                ((1, 2), ((1, 0), (0, 1)), [[(1, 0)], [(0, 1)]]),
                ((1, 4), ((1, 0), (-1, 1)), [[(1, 1)], [(0, 1)]]),
                ((2, 3), ((1, -3), (0, 1)), [[(1, 0)], [(3, 1)]]),
            ],
        },
        {
            "kappa": [(1, -1), (0, 1), (1, -2), (-1, 1)],
            "dscs": [
                ((1, 2), ((1, -1), (0, 1)), [[(1, 0)], [(1, 1)]]),
                ((2, 3), ((1, -2), (0, 1)), [[(1, 0)], [(2, 1)]]),
            ],
        },
        {
            "kappa": [(1, 1), (1, -4), (-2, 1)],
            "dscs": [
                ((1,), ((1, 1), (1, 1)), [[(1, 0), (0, 1)]]),
            ],
        },
    ],
    "A3": [
        {
            "kappa": [
                (1, 0, 0), (0, 1, 0), (0, 0, 1),
                (1, -1, 0), (-1, 1, -1), (0, -1, 1),
            ],
            "dscs": [
                ((1, 2, 3), ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
                 [[(1, 0, 0)], [(0, 1, 0)], [(0, 0, 1)]]),
                ((1, 2, 6), ((1, 0, 0), (0, 1, 0), (0, -1, 1)),
                 [[(1, 0, 0)], [(0, 1, 1)], [(0, 0, 1)]]),
                ((1, 3, 5), ((1, 0, 0), (-1, 1, -1), (0, 0, 1)),
                 [[(1, 1, 0)], [(0, 1, 0)], [(0, 1, 1)]]),
                ((2, 3, 4), ((1, -1, 0), (0, 1, 0), (0, 0, 1)),
                 [[(1, 0, 0)], [(1, 1, 0)], [(0, 0, 1)]]),
                ((2, 4, 6), ((1, -1, 0), (0, 1, 0), (0, -1, 1)),
                 [[(1, 0, 0)], [(1, 1, 1)], [(0, 0, 1)]]),
            ],
        },
        {
            "kappa": [
                (1, 0, 0), (-1, 1, 0), (0, -1, 1),
                (1, -1, 0), (0, 1, -1), (0, 0, 1),
            ],
            "dscs": [
                ((1, 2, 3), ((1, 0, 0), (-1, 1, 0), (0, -1, 1)),
                 [[(1, 1, 1)], [(0, 1, 1)], [(0, 0, 1)]]),
                ((1, 2, 6), ((1, 0, 0), (-1, 1, 0), (0, 0, 1)),
                 [[(1, 1, 0)], [(0, 1, 0)], [(0, 0, 1)]]),
                ((1, 5, 6), ((1, 0, 0), (0, 1, -1), (0, 0, 1)),
                 [[(1, 0, 0)], [(0, 1, 0)], [(0, 1, 1)]]),
                ((4, 5, 6), ((1, -1, 0), (0, 1, -1), (0, 0, 1)),
                 [[(1, 0, 0)], [(1, 1, 0)], [(1, 1, 1)]]),
            ],
        },
        {
            "kappa": [
                (1, 0, 0), (0, 1, 1), (1, -1, 0), (-1, 1, -2), (0, -2, 1),
            ],
            "dscs": [
                ((1, 2), ((1, 0, 0), (0, 1, 1), (0, 1, 1)),
                 [[(1, 0, 0)], [(0, 1, 0), (0, 0, 1)]]),
                ((2, 3), ((1, -1, 0), (0, 1, 1), (0, 1, 1)),
                 [[(1, 0, 0)], [(1, 1, 0), (0, 0, 1)]]),
            ],
        },
        {
            "kappa": [
                (1, 0, 1), (0, 1, 0), (1, -1, -1), (-1, 1, -1), (-1, -1, 1),
            ],
            "dscs": [
                ((1, 2), ((1, 0, 1), (0, 1, 0), (1, 0, 1)),
                 [[(1, 0, 0), (0, 0, 1)], [(0, 1, 0)]]),
                ((1, 4), ((1, 0, 1), (-1, 1, -1), (1, 0, 1)),
                 [[(1, 1, 0), (0, 1, 1)], [(0, 1, 0)]]),
            ],
        },
        {
            "kappa": [
                (1, 1, 0), (0, 0, 1), (1, -2, 0), (-2, 1, -1), (0, -1, 1),
            ],
            "dscs": [
                ((1, 2), ((1, 1, 0), (1, 1, 0), (0, 0, 1)),
                 [[(1, 0, 0), (0, 1, 0)], [(0, 0, 1)]]),
                ((1, 5), ((1, 1, 0), (1, 1, 0), (0, -1, 1)),
                 [[(1, 0, 0), (0, 1, 1)], [(0, 0, 1)]]),
            ],
        },
        {
            "kappa": [
                (1, 0, 1), (-1, 1, 0), (1, -1, -1), (0, 1, -1), (-1, -1, 1),
            ],
            "dscs": [
                ((1, 2), ((1, 0, 1), (-1, 1, 0), (1, 0, 1)),
                 [[(1, 1, 0), (0, 0, 1)], [(0, 1, 0)]]),
                ((1, 4), ((1, 0, 1), (0, 1, -1), (1, 0, 1)),
                 [[(1, 0, 0), (0, 1, 1)], [(0, 1, 0)]]),
            ],
        },
        {
            "kappa": [
                (1, -1, 1), (0, 1, 0), (1, 0, -1), (-1, 1, -1), (-1, 0, 1),
            ],
            "dscs": [
                ((1, 2), ((1, -1, 1), (0, 1, 0), (1, -1, 1)),
                 [[(1, 0, 0), (0, 0, 1)], [(1, 1, 0), (0, 1, 1)]]),
            ],
        },
        {
            "kappa": [
                (1, 1, 1), (1, -2, -1), (-2, 1, -2), (-1, -2, 1),
            ],
            "dscs": [
                ((1,), ((1, 1, 1), (1, 1, 1), (1, 1, 1)),
                 [[(1, 0, 0), (0, 1, 0), (0, 0, 1)]]),
            ],
        },
    ],
}

#: expected number of cuspidal records per diagram
GOLDEN_COUNTS = {name: len(records) for name, records in GOLDEN.items()}


def golden_system(rs, record):
    """Build the spherical system of a golden record (paper row order)."""
    from spherica.luna import SphericalSystem, SphRoot

    n = rs.rank
    sigma = tuple(SphRoot.simple(rs, node) for node in range(1, n + 1))
    return SphericalSystem(rs, frozenset(), sigma, tuple(tuple(r) for r in record["kappa"]))


def golden_witness_sets(record):
    """The witness subsets as 0-based frozensets."""
    return [frozenset(i - 1 for i in dsc[0]) for dsc in record["dscs"]]


def classes_as_sets(classes):
    return {frozenset(tuple(r) for r in cls) for cls in classes}

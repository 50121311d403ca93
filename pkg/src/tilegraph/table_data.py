"""Expected orders for the published table of K-groups.

Each entry is ``(row lengths, {q: |K0|})`` with trace 0 and rule 1; for every
filled cell ``|K1| = |K0|``.  Blank cells of the published table are absent
and never extrapolated.  Row order follows the published table.
"""

PUBLISHED_TABLE = (
    ((3,), {2: 3, 3: 8, 4: 15, 5: 24}),
    ((2, 1), {2: 1, 3: 2, 4: 3, 5: 4}),
    ((4,), {2: 7, 3: 26, 4: 63, 5: 124}),
    ((3, 1), {2: 1, 3: 2, 4: 3, 5: 4}),
    ((2, 2), {2: 1, 3: 2, 4: 3, 5: 4}),
    ((5,), {2: 15, 3: 80, 4: 255, 5: 624}),
    ((4, 1), {2: 1, 3: 2, 4: 3, 5: 4}),
    ((3, 2), {2: 1, 3: 2, 4: 3, 5: 4}),
    ((3, 1, 1), {2: 3, 3: 8, 4: 15, 5: 24}),
    ((6,), {2: 31, 3: 242, 4: 1023}),
    ((5, 1), {2: 1, 3: 2, 4: 3}),
    ((4, 2), {2: 1, 3: 2, 4: 3}),
    ((4, 1, 1), {2: 1, 3: 2, 4: 3}),
    ((3, 3), {2: 1, 3: 2, 4: 3}),
    ((3, 2, 1), {2: 3, 3: 8, 4: 15}),
    ((7,), {2: 63, 3: 728}),
    ((6, 1), {2: 1, 3: 2}),
    ((5, 2), {2: 1, 3: 2}),
    ((5, 1, 1), {2: 3, 3: 8}),
    ((4, 3), {2: 1, 3: 2}),
    ((4, 2, 1), {2: 1, 3: 2}),
    ((4, 1, 1, 1), {2: 7, 3: 26}),
    ((3, 3, 1), {2: 3, 3: 8}),
)


def published_cells():
    """``(rows, q, expected order)`` for every filled cell, row by row, ``q`` ascending."""
    return [(rows, q, order) for rows, col in PUBLISHED_TABLE for q, order in sorted(col.items())]


def expected_order(rows, q):
    for r, col in PUBLISHED_TABLE:
        if tuple(r) == tuple(rows):
            return col.get(q)
    return None

"""Set partitions of a finite ground set in restricted-growth form.

A partition of {0, ..., n-1} is stored as a tuple ``assignment`` where
``assignment[i]`` is the block of point ``i`` and block labels appear in
order of first occurrence. Equality and hashing go through that tuple.
"""

from dataclasses import dataclass


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    assignment: tuple

    @property
    def ground_size(self):
        return len(self.assignment)

    @property
    def n_blocks(self):
        return max(self.assignment) + 1 if self.assignment else 0

    def blocks(self):
        """Blocks as tuples of point indices, in label order."""
        out = [[] for _ in range(self.n_blocks)]
        for i, b in enumerate(self.assignment):
            out[b].append(i)
        return [tuple(b) for b in out]

    def block_of(self, point):
        return self.assignment[point]

    def __repr__(self):
        return "Partition(%s)" % ("|".join(",".join(map(str, b)) for b in self.blocks()))


def canonical_assignment(labels):
    """Relabel an arbitrary sequence of block labels to first-occurrence order."""
    seen = {}
    out = []
    for lab in labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return tuple(out)


def canonical_partition(blocks, ground=None):
    """Build a Partition from a list of disjoint blocks of points.

    ``ground`` is the ordered list of point labels; when omitted the points
    are the sorted union of the blocks. Raises PartitionError naming the
    offending point on overlap or missing coverage.
    """
    blocks = [list(b) for b in blocks]
    if any(len(b) == 0 for b in blocks):
        raise PartitionError("empty block")
    if ground is None:
        ground = sorted({p for b in blocks for p in b}, key=_sort_key)
    index = {p: i for i, p in enumerate(ground)}
    labels = [None] * len(ground)
    for k, b in enumerate(blocks):
        for p in b:
            if p not in index:
                raise PartitionError("point %r not in ground set" % (p,))
            if labels[index[p]] is not None:
                raise PartitionError("point %r lies in two blocks" % (p,))
            labels[index[p]] = k
    for p, lab in zip(ground, labels):
        if lab is None:
            raise PartitionError("point %r is not covered" % (p,))
    if not ground:
        raise PartitionError("empty ground set")
    return Partition(canonical_assignment(labels))


def _sort_key(p):
    return (type(p).__name__, p) if not isinstance(p, (int, float)) else ("", p)


def trivial_partition(n):
    return Partition((0,) * n)


def point_partition(n):
    return Partition(tuple(range(n)))


def _check_sizes(x, y):
    if x.ground_size != y.ground_size:
        raise PartitionError("ground size mismatch: %d vs %d" % (x.ground_size, y.ground_size))


def partition_refines(x, y):
    """True iff every block of x lies inside a block of y."""
    _check_sizes(x, y)
    image = {}
    for bx, by in zip(x.assignment, y.assignment):
        if image.setdefault(bx, by) != by:
            return False
    return True


def partition_product(x, y):
    """Coarsest common refinement: nonempty intersections of blocks."""
    _check_sizes(x, y)
    return Partition(canonical_assignment(zip(x.assignment, y.assignment)))


def refinement_map(x, y):
    """Block map x -> y when x refines y, as a tuple indexed by x-blocks."""
    if not partition_refines(x, y):
        raise PartitionError("%r does not refine %r" % (x, y))
    image = [None] * x.n_blocks
    for bx, by in zip(x.assignment, y.assignment):
        image[bx] = by
    return tuple(image)


def cartesian_partition(x, y):
    """Partition of the product ground set by blocks A x B (row-major points)."""
    labels = []
    for a in x.assignment:
        for b in y.assignment:
            labels.append((a, b))
    return Partition(canonical_assignment(labels))

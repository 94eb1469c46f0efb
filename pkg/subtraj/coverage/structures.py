"""Index structures used while sweeping: shoot-left, jump-right and range sums."""
import numpy as np

__author__ = "The subtraj developers"

__all__ = ["ShootLeftDS", "JumpRightDS", "RangeSumTree"]


class ShootLeftDS:
    """Shoot-left queries over a fixed list of closed intervals.

    ``query(i, x)`` returns the smallest ``j <= i`` such that x lies in every
    interval ``j, ..., i``, or None when x is not in interval i. The intervals
    sit in the leaves of a segment tree whose internal nodes store the
    intersection of their children. Queries walk the tree without modifying it.

    Args:
        lo: Lower interval ends.
        hi: Upper interval ends.

    Example:
        >>> ds = ShootLeftDS([0, 0.5, 0, 0], [1, 1, 1, 1])
        >>> ds.query(3, 0.2)
        2
        >>> ds.query(3, 0.7)
        0
        >>> ds.query(1, 0.2) is None
        True
    """

    __slots__ = ("_n", "_size", "_lo", "_hi")

    def __init__(self, lo, hi):
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        self._n = lo.size
        size = 1
        while size < max(self._n, 1):
            size *= 2
        self._size = size
        self._lo = np.full(2 * size, np.inf)
        self._hi = np.full(2 * size, -np.inf)
        self._lo[size : size + self._n] = lo
        self._hi[size : size + self._n] = hi
        for node in range(size - 1, 0, -1):
            self._lo[node] = max(self._lo[2 * node], self._lo[2 * node + 1])
            self._hi[node] = min(self._hi[2 * node], self._hi[2 * node + 1])

    def __len__(self):
        return self._n

    def _holds(self, node, x):
        return self._lo[node] <= x <= self._hi[node]

    def query(self, i, x):
        """Smallest j <= i with x in all intervals j..i, or None."""
        if not 0 <= i < self._n:
            raise IndexError(f"Index {i} out of range for {self._n} intervals.")
        node = self._size + i
        if not self._holds(node, x):
            return None
        # every leaf from the left end of node up to i contains x
        while node > 1:
            if node % 2 == 1 and not self._holds(node - 1, x):
                return self._descend(node - 1, x) + 1
            node //= 2
        return 0

    def _descend(self, node, x):
        """Largest leaf index under node whose interval misses x."""
        while node < self._size:
            right = 2 * node + 1
            node = 2 * node if self._holds(right, x) else right
        return node - self._size


class JumpRightDS:
    """Precomputed jump-right answers over a value list.

    ``query(i)`` is the smallest ``j > i`` with ``a[j] < a[i]``, or None.

    Example:
        >>> JumpRightDS([3, 2, 1]).query(0)
        1
        >>> JumpRightDS([1, 0, 1, 0]).first_not_above(2, 0)
        3
    """

    __slots__ = ("_values", "_next")

    def __init__(self, values):
        values = np.asarray(values, dtype=float)
        nxt = np.full(values.size, -1, dtype=int)
        stack = []
        for j in range(values.size):
            while stack and values[j] < values[stack[-1]]:
                nxt[stack.pop()] = j
            stack.append(j)
        self._values = values
        self._next = nxt

    def __len__(self):
        return self._values.size

    def query(self, i):
        j = int(self._next[i])
        return None if j < 0 else j

    def first_not_above(self, i, value):
        """First index ``j >= i`` with ``a[j] <= value``, or None.

        Valid for 0/1 indicator lists, where one jump reaches the next smaller
        value.
        """
        if i >= self._values.size:
            return None
        if self._values[i] <= value:
            return i
        return self.query(i)


class RangeSumTree:
    """A Fenwick tree over per-cell totals with range sums.

    Example:
        >>> tree = RangeSumTree([1, 2, 3, 4])
        >>> tree.range_sum(1, 2)
        5
        >>> tree.add(2, -3)
        >>> tree.range_sum(0, 3)
        7
    """

    __slots__ = ("_tree",)

    def __init__(self, values):
        values = np.asarray(values)
        dtype = values.dtype if values.size else int
        self._tree = np.zeros(values.size + 1, dtype=dtype)
        for k, v in enumerate(values):
            self.add(k, v)

    def __len__(self):
        return self._tree.size - 1

    def add(self, k, value):
        """Add value to entry k."""
        k += 1
        while k < self._tree.size:
            self._tree[k] += value
            k += k & -k

    def prefix(self, k):
        """Sum of entries ``0..k-1``."""
        total = 0
        while k > 0:
            total += self._tree[k]
            k -= k & -k
        return total.item() if hasattr(total, "item") else total

    def range_sum(self, i, j):
        """Sum of entries ``i..j`` inclusive; 0 when ``i > j``."""
        if i > j:
            return 0
        return self.prefix(j + 1) - self.prefix(i)

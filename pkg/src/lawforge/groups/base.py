"""The finite group interface and its integer-indexed (Cayley table) form."""

from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Any, Hashable, Iterable, Sequence

import numpy as np
import sympy

from ..config import CapExceeded, get_caps


class GroupError(ValueError):
    """Invalid group parameters or elements from the wrong group."""


class Group:
    """Abstract finite group with hashable element payloads.

    Subclasses implement ``identity``, ``mul``, ``inv``, ``_enumerate`` and
    usually ``order``.  Backends that can do arithmetic on whole arrays of
    elements also implement ``elements_array``, ``batch_mul`` and
    ``batch_is_identity``; ``has_batch`` tells callers which path to use.
    """

    name: str = "G"
    has_batch = False

    def __repr__(self) -> str:
        return self.name

    def __str__(self) -> str:
        return self.name

    # -- required ---------------------------------------------------------

    def identity(self) -> Hashable:
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def _enumerate(self) -> Iterable:
        raise NotImplementedError

    # -- derived ------------------------------------------------------------

    def order(self) -> int:
        return len(self.elements())

    def contains(self, g) -> bool:
        return g in self.element_index

    def elements(self) -> list:
        """Every element exactly once, in a fixed order."""
        cached = self.__dict__.get("_elements")
        if cached is None:
            cap = get_caps().enumeration
            if self._declared_order() is not None and self._declared_order() > cap:
                raise CapExceeded(f"|{self.name}| = {self._declared_order()} exceeds enumeration cap {cap}")
            cached = list(self._enumerate())
            if len(cached) > cap:
                raise CapExceeded(f"|{self.name}| exceeds enumeration cap {cap}")
            self.__dict__["_elements"] = cached
        return cached

    def _declared_order(self) -> int | None:
        """Closed-form order if known without enumerating, else ``None``."""
        return None

    @cached_property
    def element_index(self) -> dict:
        return {g: i for i, g in enumerate(self.elements())}

    def power(self, g, e: int):
        if e < 0:
            g, e = self.inv(g), -e
        result = self.identity()
        base = g
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def is_identity(self, g) -> bool:
        return g == self.identity()

    def element_order(self, g) -> int:
        """Least ``e >= 1`` with ``g^e = 1``."""
        n = self._declared_order()
        if n is None and "_elements" in self.__dict__:
            n = len(self.__dict__["_elements"])
        if n is not None:
            e = n
            for r in sympy.factorint(n):
                while e % r == 0 and self.is_identity(self.power(g, e // r)):
                    e //= r
            return e
        cap = get_caps().element_order_iterations
        x = g
        for k in range(1, cap + 1):
            if self.is_identity(x):
                return k
            x = self.mul(x, g)
        raise CapExceeded(f"element order exceeds iteration cap {cap}")

    def random_element(self, rng: np.random.Generator):
        els = self.elements()
        return els[int(rng.integers(len(els)))]

    def format_element(self, g) -> str:
        return str(g)

    def indexed(self) -> "IndexedGroup":
        """Integer-labelled copy with a dense Cayley table (cached)."""
        ig = self.__dict__.get("_indexed")
        if ig is None:
            ig = IndexedGroup.from_group(self)
            self.__dict__["_indexed"] = ig
        return ig

    def cayley_table(self) -> np.ndarray:
        """Dense multiplication table over ``elements()`` (generic slow path)."""
        els = self.elements()
        idx = self.element_index
        n = len(els)
        table = np.empty((n, n), dtype=np.int32)
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                table[i, j] = idx[self.mul(a, b)]
        return table

    # -- closure and generation -------------------------------------------

    def closure(self, gens: Iterable) -> list:
        """Subgroup generated by ``gens``, breadth first from the identity."""
        gens = list(gens)
        cap = get_caps().closure
        e = self.identity()
        seen = {e}
        out = [e]
        queue = deque([e])
        while queue:
            a = queue.popleft()
            for s in gens:
                b = self.mul(a, s)
                if b not in seen:
                    seen.add(b)
                    out.append(b)
                    if len(out) > cap:
                        raise CapExceeded(f"closure exceeds cap {cap}")
                    queue.append(b)
        return out

    def is_generating_pair(self, g, h) -> bool:
        n = self.order()
        if n > get_caps().closure:
            raise CapExceeded(f"|{self.name}| exceeds closure cap")
        return len(self.closure([g, h])) == n

    # -- batch protocol (optional) --------------------------------------------

    def elements_array(self) -> np.ndarray:
        raise NotImplementedError

    def batch_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def batch_is_identity(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def batch_identity(self, count: int) -> np.ndarray:
        raise NotImplementedError

    def batch_pow(self, a: np.ndarray, e: int) -> np.ndarray:
        """Elementwise ``a^e`` for a common exponent ``e >= 0``."""
        result = self.batch_identity(len(a))
        base = a
        while e:
            if e & 1:
                result = self.batch_mul(result, base)
            e >>= 1
            if e:
                base = self.batch_mul(base, base)
        return result

    def batch_orders(self, arr: np.ndarray | None = None) -> np.ndarray:
        """Element orders of a whole array at once, via prime-power parts."""
        if arr is None:
            arr = self.elements_array()
        n = self.order()
        orders = np.ones(len(arr), dtype=np.int64)
        for r, a in sympy.factorint(n).items():
            part = self.batch_pow(arr, n // r**a)
            # Order of the r-part is r^j where j is the first power killing it.
            for _ in range(a):
                alive = ~self.batch_is_identity(part)
                if not alive.any():
                    break
                orders[alive] *= r
                part = self.batch_pow(part, r)
        return orders


class IndexedGroup(Group):
    """A group whose elements are ``0..N-1`` with a dense multiplication table.

    Every algorithm written against :class:`Group` runs unchanged on this
    form; the vectorised law checker relies on ``table`` directly.
    """

    has_batch = True

    def __init__(self, table: np.ndarray, parent: Group | None = None,
                 labels: Sequence | None = None, name: str | None = None):
        self.table = np.ascontiguousarray(table, dtype=np.int32)
        n = self.table.shape[0]
        self.n = n
        self.parent = parent
        self.labels = list(labels) if labels is not None else list(range(n))
        self.name = name or (parent.name if parent is not None else f"Indexed({n})")
        ids = np.flatnonzero((self.table == np.arange(n)[None, :]).all(axis=1))
        if len(ids) != 1:
            raise GroupError("table has no unique identity")
        self.id = int(ids[0])
        rows, cols = np.nonzero(self.table == self.id)
        inverse = np.empty(n, dtype=np.int32)
        inverse[rows] = cols
        self.inverse = inverse
        self._power_cache: dict[int, np.ndarray] = {}

    @classmethod
    def from_group(cls, group: Group) -> "IndexedGroup":
        cap = get_caps().table
        n = group._declared_order()
        if n is None:
            n = len(group.elements())
        if n > cap:
            raise CapExceeded(f"|{group.name}| = {n} exceeds Cayley table cap {cap}")
        return cls(group.cayley_table(), parent=group, labels=group.elements())

    # -- Group interface ------------------------------------------------------

    def identity(self) -> int:
        return self.id

    def mul(self, a, b) -> int:
        return int(self.table[a, b])

    def inv(self, a) -> int:
        return int(self.inverse[a])

    def _enumerate(self):
        return range(self.n)

    def order(self) -> int:
        return self.n

    def _declared_order(self) -> int:
        return self.n

    def contains(self, g) -> bool:
        return isinstance(g, (int, np.integer)) and 0 <= g < self.n

    def elements(self) -> list:
        return list(range(self.n))

    @cached_property
    def element_index(self) -> dict:
        return {i: i for i in range(self.n)}

    def random_element(self, rng) -> int:
        return int(rng.integers(self.n))

    def element_order(self, g) -> int:
        return int(self.orders[g])

    def indexed(self) -> "IndexedGroup":
        return self

    def cayley_table(self) -> np.ndarray:
        return self.table

    def label(self, i: int):
        return self.labels[i]

    def index_of(self, element) -> int:
        if self.parent is None:
            return int(element)
        return self.parent.element_index[element]

    def format_element(self, g) -> str:
        if self.parent is None:
            return str(g)
        return self.parent.format_element(self.labels[g])

    # -- batch ------------------------------------------------------------------

    def elements_array(self) -> np.ndarray:
        return np.arange(self.n, dtype=np.int32)

    def batch_mul(self, a, b):
        return self.table[a, b]

    def batch_is_identity(self, a):
        return a == self.id

    def batch_identity(self, count: int):
        return np.full(count, self.id, dtype=np.int32)

    def power_map(self, e: int) -> np.ndarray:
        """Array ``P`` with ``P[g] = g^e`` (cached per exponent)."""
        pm = self._power_cache.get(e)
        if pm is None:
            if e < 0:
                pm = self.inverse[self.power_map(-e)]
            else:
                # g^e = g^(e mod o(g)); reduce by the exponent of the group.
                exponent = self.exponent
                pm = self.batch_pow(np.arange(self.n, dtype=np.int32), e % exponent)
            if len(self._power_cache) < 4096:
                self._power_cache[e] = pm
        return pm

    @cached_property
    def orders(self) -> np.ndarray:
        return self.batch_orders(np.arange(self.n, dtype=np.int32))

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.batch_orders(np.arange(self.n, dtype=np.int32))))

    # -- subgroups ---------------------------------------------------------------

    def closure_mask(self, gens: Iterable[int]) -> np.ndarray:
        """Boolean membership mask of the subgroup generated by ``gens``."""
        gens = np.unique(np.asarray(list(gens), dtype=np.int32))
        mask = np.zeros(self.n, dtype=bool)
        mask[self.id] = True
        frontier = np.array([self.id], dtype=np.int32)
        while len(frontier):
            nxt = np.unique(self.table[frontier[:, None], gens[None, :]].ravel())
            nxt = nxt[~mask[nxt]]
            mask[nxt] = True
            frontier = nxt
        return mask

    def closure(self, gens: Iterable) -> list:
        return [int(i) for i in np.flatnonzero(self.closure_mask(gens))]

    def is_generating_pair(self, g, h) -> bool:
        return bool(self.closure_mask([g, h]).all())

    def subgroup(self, members: Iterable[int], name: str | None = None) -> "IndexedGroup":
        """Relabelled :class:`IndexedGroup` for a subgroup given by its elements."""
        members = np.asarray(sorted(set(int(m) for m in members)), dtype=np.int32)
        relabel = np.full(self.n, -1, dtype=np.int32)
        relabel[members] = np.arange(len(members), dtype=np.int32)
        sub = relabel[self.table[np.ix_(members, members)]]
        if (sub < 0).any():
            raise GroupError("members are not closed under multiplication")
        labels = [self.labels[m] for m in members]
        return IndexedGroup(sub, parent=None, labels=labels, name=name or f"subgroup of {self.name}")

    @cached_property
    def conjugacy_classes(self) -> list[np.ndarray]:
        seen = np.zeros(self.n, dtype=bool)
        classes = []
        all_g = np.arange(self.n)
        for x in range(self.n):
            if seen[x]:
                continue
            cls_ = np.unique(self.table[self.table[self.inverse[all_g], x], all_g])
            seen[cls_] = True
            classes.append(cls_)
        return classes

    @cached_property
    def generating_pair_mask(self) -> np.ndarray:
        """``M[g, h]`` is true iff ``<g, h>`` is the whole group.

        Closures are computed for one representative per conjugacy class of
        ``g`` and transported to the rest of the class by conjugation.
        """
        n = self.n
        if n > get_caps().closure:
            raise CapExceeded(f"|{self.name}| exceeds closure cap")
        mask = np.zeros((n, n), dtype=bool)
        all_k = np.arange(n)
        inv_k = self.inverse[all_k]
        for cls_ in self.conjugacy_classes:
            r = int(cls_[0])
            row = np.zeros(n, dtype=bool)
            for h in range(n):
                row[h] = self.closure_mask([r, h]).all()
            # Conjugate (r, h) by every k: (k^-1 r k, k^-1 h k).
            gens_h = np.flatnonzero(row)
            if len(gens_h) == 0:
                continue
            rk = self.table[self.table[inv_k, r], all_k]
            hk = self.table[self.table[inv_k[:, None], gens_h[None, :]], all_k[:, None]]
            mask[rk[:, None], hk] = True
        return mask


def as_indexed(group: Group) -> IndexedGroup:
    return group if isinstance(group, IndexedGroup) else group.indexed()


def describe(group: Group) -> dict[str, Any]:
    return {"name": group.name, "order": group.order()}

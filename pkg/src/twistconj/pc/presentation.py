"""Power-conjugate presentations of nilpotent groups and collection.

Elements are plain tuples of exponents along the pc generating sequence
(Mal'cev coordinates).  The commutator convention is
``[x, y] = x^-1 y^-1 x y`` and conjugation is ``x^y = y^-1 x y``.
"""

from __future__ import annotations

from math import gcd
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from ..errors import InconsistentPresentation, NotNilpotent, PresentationError, UnknownGenerator

Element = tuple
Word = list  # list of (generator index, exponent)


class PcPresentation:
    """A consistent nilpotent power-conjugate presentation.

    ``conj`` maps ``(j, i)`` with ``j > i`` to a word for ``g_i^-1 g_j g_i``;
    omitted pairs commute.  ``powers`` maps ``i`` (with finite relative order
    ``m_i``) to a word for ``g_i^m_i``.  Words are lists of
    ``(index, exponent)`` pairs or exponent tuples.  Relative order ``0``
    means infinite.

    Every conjugate must collect to ``g_j`` times a word in later
    generators (the pc series is central); otherwise ``NotNilpotent`` is
    raised.  ``nilpotent=False`` drops that requirement for groups whose
    non-central conjugations only involve generators of finite relative
    order; such groups support arithmetic (and the brute-force oracle) but
    not the central-series algorithms.  With ``check=True`` the overlap
    (consistency) tests run at construction time.
    """

    def __init__(self, names: Sequence[str], orders: Sequence[int],
                 conj: Mapping | None = None, powers: Mapping | None = None, *,
                 name: str = "G", check: bool = True, weights: Sequence[int] | None = None,
                 definitions: Mapping | None = None, nilpotent: bool = True):
        self.name = name
        self.nilpotent = nilpotent
        self.names = tuple(names)
        self.n = n = len(self.names)
        if len(set(self.names)) != n:
            raise PresentationError("duplicate generator names")
        self.orders = tuple(int(m) for m in orders)
        if len(self.orders) != n:
            raise PresentationError("one relative order per generator required")
        if any(m < 0 or m == 1 for m in self.orders):
            raise PresentationError("relative orders must be 0 (infinite) or >= 2")
        self.index = {s: i for i, s in enumerate(self.names)}
        self.identity = (0,) * n

        conj = dict(conj or {})
        powers = dict(powers or {})
        for (j, i) in conj:
            if not 0 <= i < j < n:
                raise PresentationError(f"conjugate relation ({j}, {i}) needs j > i")
        for i in powers:
            if not 0 <= i < n or not self.orders[i]:
                raise PresentationError(f"power relation for generator {i} of infinite order")

        self._conj: list[dict[int, Element]] = [dict() for _ in range(n)]
        self._conj_inv: list[dict[int, Element]] = [dict() for _ in range(n)]
        self._pow: list[Element | None] = [None] * n
        self._conj_cache: dict = {}

        for i in reversed(range(n)):
            if self.orders[i]:
                word = powers.get(i, ())
                nf = self._evaluate_below(word, i, f"power relation of {self.names[i]}")
                self._pow[i] = nf
            for j in range(i + 1, n):
                if (j, i) not in conj:
                    continue
                nf = self._evaluate_below(conj[(j, i)], i, f"conjugate {self.names[j]}^{self.names[i]}")
                if nilpotent and (any(nf[:j]) or nf[j] != 1):
                    raise NotNilpotent(
                        f"{self.names[i]}^-1 {self.names[j]} {self.names[i]} must equal "
                        f"{self.names[j]} times a word in later generators")
                if nf != self.gen(j):
                    self._conj[i][j] = nf
            self._derive_inverse_conjugates(i)

        self.weights = tuple(weights) if weights is not None else None
        self._definitions = dict(definitions) if definitions is not None else None
        if check:
            self.check_consistency()

    # -- construction helpers -------------------------------------------------

    def _as_word(self, word) -> Word:
        if isinstance(word, tuple) and len(word) == self.n and all(isinstance(x, int) for x in word):
            return [(k, e) for k, e in enumerate(word) if e]
        return [(int(k), int(e)) for k, e in word]

    def _evaluate_below(self, word, i: int, what: str) -> Element:
        w = self._as_word(word)
        for k, _ in w:
            if not 0 <= k < self.n:
                raise UnknownGenerator(f"generator index {k} in {what}")
            if k <= i:
                raise NotNilpotent(f"{what} involves {self.names[k]}, which is not a later generator")
        return self.evaluate(w)

    def _derive_inverse_conjugates(self, i: int) -> None:
        if not self.nilpotent and self._conj[i]:
            m = self.orders[i]
            if not m:
                raise PresentationError("non-central conjugation by a generator of infinite order")
            # g_i^-1 = g_i^(m-1) w^-1 with w = g_i^m in the later generators
            w = self._pow[i]
            wi = self.inv(w)
            for j in self._conj[i]:
                y = self.gen(j)
                for _ in range(m - 1):
                    y = self._apply_images(self._conj[i], y)
                self._conj_inv[i][j] = self.mul(w, self.mul(y, wi))
            return
        # g_i g_j g_i^-1 = y with y^{g_i} = g_j, found by successive correction
        for j in self._conj[i]:
            target = self.gen(j)
            y = target
            for _ in range(self.n + 2):
                a = self._apply_images(self._conj[i], y)
                if a == target:
                    break
                y = self.mul(y, self.mul(self.inv(a), target))
            else:
                raise InconsistentPresentation(
                    f"cannot invert conjugation by {self.names[i]}", triple=(j, i))
            self._conj_inv[i][j] = y

    # -- basic element operations ---------------------------------------------

    def gen(self, i: int, e: int = 1) -> Element:
        return self.identity[:i] + (e,) + self.identity[i + 1:]

    def _apply_images(self, images: Mapping[int, Element], v: Element) -> Element:
        """Image of ``v`` under the endomorphism sending ``g_j`` to ``images[j]`` (others fixed)."""
        if not any(v[j] for j in images):
            return v
        out = [0] * self.n
        for j, e in enumerate(v):
            if not e:
                continue
            img = images.get(j)
            if img is None:
                self._mul_gen_power(out, j, e)
            else:
                out = list(self.mul(tuple(out), self.power(img, e)))
        return tuple(out)

    def _conj_images(self, i: int, k: int) -> dict[int, Element]:
        if k == 1:
            return self._conj[i]
        if k == -1:
            return self._conj_inv[i]
        key = (i, k)
        cached = self._conj_cache.get(key)
        if cached is not None:
            return cached
        a = k // 2 if k > 0 else -((-k) // 2)
        b = k - a
        first, second = self._conj_images(i, a), self._conj_images(i, b)
        out = {}
        for j in self._conj[i]:
            img = first.get(j, self.gen(j))
            img = self._apply_images(second, img)
            if img != self.gen(j):
                out[j] = img
        self._conj_cache[key] = out
        return out

    def _mul_gen_power(self, e: list, i: int, k: int) -> None:
        """In place: ``e <- e * g_i^k``."""
        if not k:
            return
        n = self.n
        tail = None
        for t in range(i + 1, n):
            if e[t]:
                tail = tuple([0] * (i + 1) + e[i + 1:])
                break
        if tail is not None and self._conj[i]:
            tail = self._apply_images(self._conj_images(i, k), tail)
        m = self.orders[i]
        ei = e[i] + k
        if m:
            q, ei = divmod(ei, m)
        else:
            q = 0
        e[i] = ei
        if q:
            p = self.power(self._pow[i], q)
            tail = p if tail is None else self.mul(p, tail)
        if tail is not None:
            e[i + 1:] = tail[i + 1:]

    def mul(self, x: Element, y: Element) -> Element:
        if not any(y):
            return x
        if not any(x):
            return y
        last = max(k for k, v in enumerate(x) if v)
        first = next(k for k, v in enumerate(y) if v)
        if last < first:
            return tuple(a + b for a, b in zip(x, y))
        out = list(x)
        for i, k in enumerate(y):
            if k:
                self._mul_gen_power(out, i, k)
        return tuple(out)

    def inv(self, x: Element) -> Element:
        out = [0] * self.n
        for i in reversed(range(self.n)):
            if x[i]:
                self._mul_gen_power(out, i, -x[i])
        return tuple(out)

    def power(self, x: Element, k: int) -> Element:
        if k == 0 or not any(x):
            return self.identity
        if k < 0:
            return self.power(self.inv(x), -k)
        support = [i for i, v in enumerate(x) if v]
        if len(support) == 1:
            out = list(self.identity)
            self._mul_gen_power(out, support[0], x[support[0]] * k)
            return tuple(out)
        result, base = self.identity, x
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def product(self, *elements: Element) -> Element:
        out = self.identity
        for x in elements:
            out = self.mul(out, x)
        return out

    def comm(self, x: Element, y: Element) -> Element:
        """``[x, y] = x^-1 y^-1 x y``."""
        return self.mul(self.inv(self.mul(y, x)), self.mul(x, y))

    def conjugate(self, x: Element, y: Element) -> Element:
        """``x^y = y^-1 x y``."""
        return self.mul(self.inv(y), self.mul(x, y))

    def evaluate(self, word) -> Element:
        """Normal form of a word given as ``(index, exponent)`` pairs."""
        out = [0] * self.n
        for k, e in self._as_word(word):
            if not 0 <= k < self.n:
                raise UnknownGenerator(f"generator index {k}")
            self._mul_gen_power(out, k, e)
        return tuple(out)

    def normalize(self, x: Sequence[int]) -> Element:
        """Normal form of the product ``g_1^x_1 ... g_n^x_n`` for arbitrary integers."""
        return self.evaluate([(k, e) for k, e in enumerate(x) if e])

    def depth(self, x: Element) -> int:
        """Index of the first nonzero exponent, ``n`` for the identity."""
        return next((k for k, v in enumerate(x) if v), self.n)

    # -- structure --------------------------------------------------------------

    @property
    def hirsch_length(self) -> int:
        return sum(1 for m in self.orders if m == 0)

    @property
    def is_finite(self) -> bool:
        return all(self.orders)

    @property
    def order(self):
        from math import prod
        return prod(self.orders) if self.is_finite else float("inf")

    def conj_relation(self, j: int, i: int) -> Element:
        return self._conj[i].get(j, self.gen(j))

    def power_relation(self, i: int) -> Element | None:
        return self._pow[i]

    def relations(self) -> Iterable[tuple[str, tuple, Element]]:
        """Defining relations as ``(kind, indices, rhs)``: ``('conj', (j, i), rhs)`` or ``('pow', (i,), rhs)``."""
        for i in range(self.n):
            if self.orders[i]:
                yield "pow", (i,), self._pow[i]
        for i in range(self.n):
            for j in range(i + 1, self.n):
                yield "conj", (j, i), self.conj_relation(j, i)

    def commutes(self, j: int, i: int) -> bool:
        a, b = max(i, j), min(i, j)
        return a == b or a not in self._conj[b]

    @cached_property
    def definitions(self) -> dict[int, tuple]:
        """How later generators are expressed through earlier ones.

        ``('comm', j, i, s)`` means ``g_k = [g_j, g_i]^s``; ``('pow', i, s)``
        means ``g_k = (g_i^m_i)^s``.
        """
        if self._definitions is not None:
            return dict(self._definitions)
        found: dict[int, tuple] = {}

        def unit(k, e):
            # exponent s with (g_k^e)^s = g_k, if there is one
            if abs(e) == 1:
                return e
            m = self.orders[k]
            return pow(e, -1, m) if m and gcd(e, m) == 1 else None

        for i in range(self.n):
            if self.orders[i]:
                p = self._pow[i]
                supp = [k for k, v in enumerate(p) if v]
                if len(supp) == 1 and supp[0] not in found:
                    s = unit(supp[0], p[supp[0]])
                    if s is not None:
                        found[supp[0]] = ("pow", i, s)
        for i in range(self.n):
            for j, rhs in self._conj[i].items():
                supp = [k for k, v in enumerate(rhs) if v and k != j]
                if len(supp) == 1 and supp[0] not in found:
                    s = unit(supp[0], rhs[supp[0]])
                    if s is not None:
                        found[supp[0]] = ("comm", j, i, s)
        return found

    def apply_definition(self, k: int, images: Sequence[Element], target: "PcPresentation | None" = None) -> Element:
        """Image of ``g_k`` under a homomorphism, from the images of earlier generators."""
        tgt = target or self
        d = self.definitions[k]
        if d[0] == "comm":
            _, j, i, s = d
            return tgt.power(tgt.comm(images[j], images[i]), s)
        _, i, s = d
        return tgt.power(tgt.power(images[i], self.orders[i]), s)

    # -- consistency ------------------------------------------------------------

    def consistency_failures(self, limit: int | None = 1):
        """Run the overlap tests; yields ``(description, triple)`` for failures."""
        n, g, mul = self.n, self.gen, self.mul
        count = 0
        for k in range(n):
            for j in range(k):
                gkj = mul(g(k), g(j))
                for i in range(j):
                    if self.commutes(k, j) and self.commutes(k, i) and self.commutes(j, i):
                        continue
                    if mul(gkj, g(i)) != mul(g(k), mul(g(j), g(i))):
                        yield "associativity", (k, j, i)
                        count += 1
                        if limit and count >= limit:
                            return
        for j in range(n):
            for i in range(j):
                mj, mi = self.orders[j], self.orders[i]
                if mj and mul(self._pow[j], g(i)) != mul(g(j, mj - 1), mul(g(j), g(i))):
                    yield "power-left", (j, j, i)
                    count += 1
                if mi and mul(g(j), self._pow[i]) != mul(mul(g(j), g(i)), g(i, mi - 1)):
                    yield "power-right", (j, i, i)
                    count += 1
                if not mi and mul(mul(g(j), g(i, -1)), g(i)) != g(j):
                    yield "inverse", (j, i, i)
                    count += 1
                if limit and count >= limit:
                    return
        for i in range(n):
            if self.orders[i] and mul(self._pow[i], g(i)) != mul(g(i), self._pow[i]):
                yield "power", (i, i, i)
                count += 1
                if limit and count >= limit:
                    return

    def check_consistency(self) -> None:
        for what, triple in self.consistency_failures(limit=1):
            names = " ".join(self.names[t] for t in triple)
            raise InconsistentPresentation(f"overlap test '{what}' fails for ({names})", triple=triple)

    # -- words --------------------------------------------------------------------

    def word(self, x: Element) -> str:
        """Normal form as text in the ``name^exp`` syntax (``1`` for the identity)."""
        parts = []
        for k, e in enumerate(x):
            if e == 1:
                parts.append(self.names[k])
            elif e:
                parts.append(f"{self.names[k]}^{e}")
        return " ".join(parts) if parts else "1"

    def parse_word(self, text: str) -> Element:
        from .io import parse_word
        return self.evaluate(parse_word(text, self.index))

    def __repr__(self):
        if self.is_finite:
            kind = f"order {self.order}"
        elif any(self.orders):
            kind = f"orders {list(self.orders)}"
        else:
            kind = "torsion-free"
        return f"<PcPresentation {self.name}: {self.n} generators, {kind}>"


def free_abelian(n: int, name: str | None = None) -> PcPresentation:
    return PcPresentation([f"g{i + 1}" for i in range(n)], [0] * n, name=name or f"Z^{n}")


def abelian(orders: Sequence[int], name: str | None = None) -> PcPresentation:
    """Direct product of cyclic groups (0 = infinite cyclic)."""
    return PcPresentation([f"g{i + 1}" for i in range(len(orders))], orders,
                          name=name or "x".join(f"Z{m}" if m else "Z" for m in orders))


def heisenberg(p: int = 0, name: str | None = None) -> PcPresentation:
    """Heisenberg group ``<a, b, c | [a, b] = c central>``; ``p > 0`` reduces mod p."""
    orders = [p, p, p]
    powers = {0: (), 1: (), 2: ()} if p else {}
    return PcPresentation(["a", "b", "c"], orders, {(1, 0): [(1, 1), (2, -1)]}, powers,
                          name=name or (f"Heis{p}" if p else "Heisenberg"))

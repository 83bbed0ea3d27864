"""The triangular quiver behind the special chart.

Vertices v_ij (matrix convention, 1 <= j <= i <= n) form a lower-left
triangle; the diagonal vertices v_ii are "stars", the rest "bullets".
Arrows point up (v_ij -> v_{i-1,j}) and left (v_ij -> v_{i,j-1}) only.
Unit squares give box relations z_a1 z_a2 = z_a3 z_a4 relating the four
flanking arrows.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Arrow:
    tail: tuple  # (row, col)
    head: tuple
    kind: str  # "vertical" (up) or "horizontal" (left)

    @property
    def name(self):
        (ti, tj), (hi, hj) = self.tail, self.head
        return f"v{ti}{tj}->v{hi}{hj}"

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class QuiverPath:
    arrows: tuple

    @property
    def start(self):
        return self.arrows[0].tail

    @property
    def end(self):
        return self.arrows[-1].head

    @property
    def length(self):
        return len(self.arrows)

    def vertices(self):
        out = [self.arrows[0].tail]
        out.extend(a.head for a in self.arrows)
        return out


class Quiver:
    def __init__(self, n):
        if n < 2:
            raise ValueError("n >= 2 required")
        self.n = n
        self.vertices = [(i, j) for i in range(1, n + 1) for j in range(1, i + 1)]
        self.stars = [(i, i) for i in range(1, n + 1)]
        self.bullets = [(i, j) for (i, j) in self.vertices if i != j]
        arrows = []
        for i, j in self.vertices:
            if i > j:
                arrows.append(Arrow((i, j), (i - 1, j), "vertical"))
            if 2 <= j <= i:
                arrows.append(Arrow((i, j), (i, j - 1), "horizontal"))
        self.arrows = arrows
        self._by_head = {}
        self._by_tail = {}
        for a in arrows:
            self._by_head.setdefault(a.head, []).append(a)
            self._by_tail.setdefault(a.tail, []).append(a)
        # boxes: unit squares with corners v_ij (top-left), v_{i,j+1},
        # v_{i+1,j}, v_{i+1,j+1}; flanking arrows per the box relation
        # a1 (bottom horizontal) a2 (left vertical) a3 (right vertical)
        # a4 (top horizontal), with z_a1 z_a2 = z_a3 z_a4.
        self.boxes = []
        for i, j in self.vertices:
            if i + 1 <= n and j + 1 <= i:
                a1 = self.find_arrow((i + 1, j + 1), (i + 1, j))
                a2 = self.find_arrow((i + 1, j), (i, j))
                a3 = self.find_arrow((i + 1, j + 1), (i, j + 1))
                a4 = self.find_arrow((i, j + 1), (i, j))
                self.boxes.append((a1, a2, a3, a4))

    # -- lookups -------------------------------------------------------

    def find_arrow(self, tail, head) -> Arrow:
        for a in self._by_tail.get(tail, []):
            if a.head == head:
                return a
        raise KeyError(f"no arrow {tail} -> {head}")

    def incoming(self, v):
        return self._by_head.get(v, [])

    def outgoing(self, v):
        return self._by_tail.get(v, [])

    def diagonal(self, i):
        """D_i = {v_{i,1}, v_{i+1,2}, ...}: the i-th anti-diagonal."""
        out = []
        r, c = i, 1
        while r <= self.n and c <= r:
            out.append((r, c))
            r, c = r + 1, c + 1
        return out

    def vertical_arrows(self):
        return [a for a in self.arrows if a.kind == "vertical"]

    def horizontal_arrows(self):
        return [a for a in self.arrows if a.kind == "horizontal"]

    def independent_arrows(self):
        """Verticals plus bottom-row horizontals: a free coordinate set.

        Every other horizontal arrow is determined by box relations
        (z_a4 = z_a1 z_a2 / z_a3 walking boxes bottom-up).
        """
        out = self.vertical_arrows()
        out.extend(a for a in self.horizontal_arrows() if a.tail[0] == self.n)
        return out

    # -- n=3 letter labels (matches the standard figure a..f) ----------

    def letter_arrows(self):
        """For n=3: arrows in the order (a, b, c, d, e, f)."""
        if self.n != 3:
            raise ValueError("letter labels only defined for n=3")
        f = self.find_arrow
        return [
            f((2, 1), (1, 1)),
            f((3, 1), (2, 1)),
            f((2, 2), (2, 1)),
            f((3, 2), (2, 2)),
            f((3, 2), (3, 1)),
            f((3, 3), (3, 2)),
        ]

    # -- path enumeration ---------------------------------------------

    def enumerate_paths(self, endpoints, forbidden_arrows=frozenset()):
        """Directed paths with both endpoints in `endpoints`, interior
        vertices anywhere, avoiding `forbidden_arrows`."""
        endpoints = set(endpoints)
        forbidden = set(forbidden_arrows)
        out = []

        def extend(path):
            v = path[-1].head
            if v in endpoints:
                # interior vertices stay outside the endpoint set
                out.append(QuiverPath(tuple(path)))
                return
            for a in self.outgoing(v):
                if a not in forbidden:
                    path.append(a)
                    extend(path)
                    path.pop()

        for s in endpoints:
            for a in self.outgoing(s):
                if a not in forbidden:
                    extend([a])
        return out

    # -- export --------------------------------------------------------

    def to_dot(self):
        lines = ["digraph quiver {", "  rankdir=LR;"]
        for i, j in self.vertices:
            shape = "doublecircle" if i == j else "circle"
            lines.append(f'  "v{i}{j}" [shape={shape}, pos="{j},{-i}!"];')
        for a in self.arrows:
            (ti, tj), (hi, hj) = a.tail, a.head
            lines.append(f'  "v{ti}{tj}" -> "v{hi}{hj}" [label="{a.kind[0]}"];')
        lines.append("}")
        return "\n".join(lines)


def build_quiver(n) -> Quiver:
    return Quiver(n)

"""Text formats for presentations and automorphisms.

Presentation::

    pcgroup Heisenberg
    gens a b c
    orders 0 0 0
    conj b a = b c^-1

``conj gj gi = w`` states ``gi^-1 gj gi = w``; ``pow gi = w`` gives the
tail of ``gi^m``.  Automorphism::

    aut phi on Heisenberg
    image a = b
    image b = a b
    image c = c^-1

Lines starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

import re
from typing import Mapping

from ..errors import ParseError, UnknownGenerator
from .presentation import PcPresentation

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_\[\],]*)(?:\^(-?\d+))?$")


def parse_word(text: str, index: Mapping[str, int]) -> list[tuple[int, int]]:
    text = text.strip()
    if text in ("", "1"):
        return []
    out = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ParseError(f"bad word token {tok!r}")
        name, exp = m.group(1), m.group(2)
        if name not in index:
            raise UnknownGenerator(f"unknown generator {name!r}")
        out.append((index[name], int(exp) if exp is not None else 1))
    return out


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def load_presentation(text: str, *, check: bool = True) -> PcPresentation:
    lines = list(_lines(text))
    if len(lines) < 3:
        raise ParseError("presentation needs 'pcgroup', 'gens' and 'orders' lines")
    (_, head), (_, gens), (_, orders) = lines[:3]
    hp, gp, op = head.split(), gens.split(), orders.split()
    if hp[0] != "pcgroup" or len(hp) != 2:
        raise ParseError("first line must be 'pcgroup <name>'")
    if gp[0] != "gens":
        raise ParseError("second line must be 'gens ...'")
    if op[0] != "orders":
        raise ParseError("third line must be 'orders ...'")
    names = gp[1:]
    if len(op) - 1 != len(names):
        raise ParseError("'orders' must list one entry per generator")
    try:
        ords = [int(x) for x in op[1:]]
    except ValueError as exc:
        raise ParseError(f"bad relative order: {exc}") from None
    index = {s: i for i, s in enumerate(names)}
    if len(index) != len(names):
        raise ParseError("duplicate generator names")

    def gen_index(s, lineno):
        if s not in index:
            raise UnknownGenerator(f"line {lineno}: unknown generator {s!r}")
        return index[s]

    conj, powers = {}, {}
    for lineno, line in lines[3:]:
        lhs, sep, rhs = line.partition("=")
        if not sep:
            raise ParseError(f"line {lineno}: expected '='")
        parts = lhs.split()
        try:
            word = parse_word(rhs, index)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if parts[0] == "conj" and len(parts) == 3:
            j, i = gen_index(parts[1], lineno), gen_index(parts[2], lineno)
            if j <= i:
                raise ParseError(f"line {lineno}: 'conj gj gi' needs gj after gi")
            if (j, i) in conj:
                raise ParseError(f"line {lineno}: duplicate relation")
            conj[(j, i)] = word
        elif parts[0] == "pow" and len(parts) == 2:
            i = gen_index(parts[1], lineno)
            if not ords[i]:
                raise ParseError(f"line {lineno}: power relation for a generator of infinite order")
            powers[i] = word
        else:
            raise ParseError(f"line {lineno}: expected 'conj gj gi = w' or 'pow gi = w'")
    return PcPresentation(names, ords, conj, powers, name=hp[1], check=check)


def format_presentation(G: PcPresentation) -> str:
    lines = [f"pcgroup {G.name}", "gens " + " ".join(G.names),
             "orders " + " ".join(str(m) for m in G.orders)]
    for i in range(G.n):
        if G.orders[i] and any(G.power_relation(i)):
            lines.append(f"pow {G.names[i]} = {G.word(G.power_relation(i))}")
    for i in range(G.n):
        for j in range(i + 1, G.n):
            if not G.commutes(j, i):
                lines.append(f"conj {G.names[j]} {G.names[i]} = {G.word(G.conj_relation(j, i))}")
    return "\n".join(lines) + "\n"


def load_automorphism_images(text: str, G: PcPresentation) -> tuple[str, dict[int, tuple]]:
    """Parse an automorphism file; returns its name and the given images by generator index."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty automorphism file")
    head = lines[0][1].split()
    if len(head) != 4 or head[0] != "aut" or head[2] != "on":
        raise ParseError("first line must be 'aut <name> on <group>'")
    images = {}
    for lineno, line in lines[1:]:
        lhs, sep, rhs = line.partition("=")
        parts = lhs.split()
        if not sep or len(parts) != 2 or parts[0] != "image":
            raise ParseError(f"line {lineno}: expected 'image <gen> = <word>'")
        if parts[1] not in G.index:
            raise UnknownGenerator(f"line {lineno}: unknown generator {parts[1]!r}")
        k = G.index[parts[1]]
        if k in images:
            raise ParseError(f"line {lineno}: duplicate image for {parts[1]}")
        images[k] = G.evaluate(parse_word(rhs, G.index))
    return head[1], images


def format_automorphism(name: str, G: PcPresentation, images) -> str:
    lines = [f"aut {name} on {G.name}"]
    lines += [f"image {G.names[k]} = {G.word(img)}" for k, img in enumerate(images)]
    return "\n".join(lines) + "\n"

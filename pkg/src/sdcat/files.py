"""The .shift and .bmap interchange formats.

Both are line oriented with ``#`` comments.  Words are written as
concatenated symbols when every alphabet symbol is a single character,
and comma-separated otherwise.  Emitted presentations use a canonical
state numbering so golden files are stable.
"""

from __future__ import annotations

import os

from .core import (
    BlockMap,
    Presentation,
    make_block_map,
    make_presentation,
)
from .errors import ParseError, ValidationError

Word = tuple[str, ...]


def _toplevel_commas(text: str):
    depth = 0
    for i, c in enumerate(text):
        if c in "([{":
            depth += 1
        elif c in ")]}":
            depth -= 1
        elif c == "," and depth == 0:
            yield i


def _split_word(text: str, alphabet) -> Word:
    cuts = list(_toplevel_commas(text))
    if cuts:
        parts = []
        start = 0
        for i in cuts:
            parts.append(text[start:i])
            start = i + 1
        parts.append(text[start:])
        parts = tuple(parts)
    elif all(len(a) == 1 for a in alphabet):
        parts = tuple(text)
    else:
        parts = (text,)
    for p in parts:
        if p not in alphabet:
            raise ParseError(f"unknown symbol {p!r} in word {text!r}")
    return parts


def format_word(word: Word, alphabet) -> str:
    if all(len(a) == 1 for a in alphabet):
        return "".join(word)
    return ",".join(word)


def _lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_shift(text: str) -> Presentation:
    alphabet: list[str] | None = None
    kind: str | None = None
    forbidden: list[Word] = []
    nodes: list[str] = []
    edges: list[tuple[str, str, str]] = []
    point: str | None = None
    for line in _lines(text):
        if ":" not in line:
            raise ParseError(f"bad line in .shift file: {line!r}")
        key, _, rest = line.partition(":")
        key = key.strip()
        rest = rest.strip()
        if key == "alphabet":
            alphabet = rest.split()
        elif key == "kind":
            if rest not in ("sft", "graph"):
                raise ParseError(f"unknown kind {rest!r}")
            kind = rest
        elif key == "forbidden":
            if alphabet is None:
                raise ParseError("forbidden: before alphabet:")
            forbidden.extend(_split_word(w, alphabet) for w in rest.split())
        elif key == "node":
            nodes.extend(rest.split())
        elif key == "edge":
            parts = rest.split()
            if len(parts) != 3:
                raise ParseError(f"edge needs 'from to label': {line!r}")
            edges.append((parts[0], parts[1], parts[2]))
        elif key == "point":
            point = rest
        else:
            raise ParseError(f"unknown key {key!r} in .shift file")
    if alphabet is None:
        raise ParseError(".shift file needs an alphabet: line")
    if kind is None:
        kind = "graph" if (nodes or edges) else "sft"
    try:
        if kind == "sft":
            return make_presentation(alphabet, "sft", forbidden, point)
        return make_presentation(alphabet, "graph", (nodes, edges), point)
    except ValidationError:
        raise
    except ParseError:
        raise


def load_shift(path: str) -> Presentation:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_shift(fh.read())


def format_shift(x: Presentation) -> str:
    out = [f"alphabet: {' '.join(x.alphabet)}", "kind: graph"]
    names = {i: f"s{i}" for i in range(x.n_live())}
    if x.n_live():
        out.append("node: " + " ".join(names[i] for i in range(x.n_live())))
    for i in range(x.n_live()):
        for a, j in sorted(x.live_trans[i].items()):
            out.append(f"edge: {names[i]} {names[j]} {a}")
    if x.point is not None:
        out.append(f"point: {x.point}")
    return "\n".join(out) + "\n"


def save_shift(x: Presentation, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_shift(x))


def parse_bmap(text: str, base_dir: str = ".", loader=None) -> BlockMap:
    loader = loader or load_shift
    source = target = None
    radius: int | None = None
    rule_lines: list[tuple[str, str]] = []
    default: str | None = None
    for line in _lines(text):
        key, _, rest = line.partition(":")
        key = key.strip()
        rest = rest.strip()
        if key == "source":
            source = loader(os.path.join(base_dir, rest))
        elif key == "target":
            target = loader(os.path.join(base_dir, rest))
        elif key == "radius":
            radius = int(rest)
        elif key == "rule":
            if "->" not in rest:
                raise ParseError(f"rule line needs '->': {line!r}")
            lhs, _, rhs = rest.partition("->")
            rule_lines.append((lhs.strip(), rhs.strip()))
        elif key == "default":
            default = rest
        else:
            raise ParseError(f"unknown key {key!r} in .bmap file")
    if source is None or target is None or radius is None:
        raise ParseError(".bmap file needs source:, target:, and radius:")
    rule = {}
    for lhs, rhs in rule_lines:
        word = _split_word(lhs, source.alphabet)
        if len(word) != 2 * radius + 1:
            raise ParseError(f"rule word {lhs!r} has the wrong width for radius {radius}")
        if rhs not in target.alphabet:
            raise ParseError(f"rule output {rhs!r} not in the target alphabet")
        rule[word] = rhs
    return make_block_map(source, target, radius, rule, default=default)


def load_bmap(path: str) -> BlockMap:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_bmap(text, base_dir=os.path.dirname(os.path.abspath(path)))


def save_bmap(f: BlockMap, path: str) -> None:
    """Write the map and sibling .shift files for its presentations."""
    base, _ = os.path.splitext(path)
    src_path = base + ".source.shift"
    tgt_path = base + ".target.shift"
    save_shift(f.source, src_path)
    save_shift(f.target, tgt_path)
    lines = [
        f"source: {os.path.basename(src_path)}",
        f"target: {os.path.basename(tgt_path)}",
        f"radius: {f.radius}",
    ]
    for w, val in sorted(f.rule_dict.items()):
        lines.append(f"rule: {format_word(w, f.source.alphabet)} -> {val}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")

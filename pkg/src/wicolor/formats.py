"""Text formats for graphs, colorings, and tree decompositions.

All four formats are line-oriented UTF-8 with '#' comment lines.

Directed graph:      header `p wig <n> <m>`, then m lines `e <tail> <head> <weight>`.
Undirected graph:    header `p wug <n> <m>`, then m lines `e <u> <v> <weight>`.
Coloring:            lines `<vertex> <color>`.
Tree decomposition:  header `s td <bags> <max-bag-size> <n>`, bag lines
                     `b <bag-id> <v...>`, then bag-tree edge lines `<i> <j>`
                     ('c' comment lines also accepted, as is customary for
                     this style of file).  Bag 1 is the root.

Weights may be written as a fraction `7/10`, an integer, or a decimal
`0.7`; they are parsed exactly and serialized in lowest terms.  Parse
failures raise FormatError carrying the 1-based line number.
"""

from __future__ import annotations

from fractions import Fraction

from .decomposition import TreeDecomposition
from .errors import FormatError
from .graph import Coloring, UndirectedWeightedGraph, WeightedDigraph


def _content_lines(text: str, extra_comment: str = "") -> list[tuple[int, list[str]]]:
    out = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if extra_comment and tokens[0] == extra_comment:
            continue
        out.append((line_no, tokens))
    return out


def _parse_int(token: str, line_no: int, what: str, minimum: int = 0) -> int:
    try:
        value = int(token)
    except ValueError:
        raise FormatError(f"{what} {token!r} is not an integer", line_no) from None
    if value < minimum:
        raise FormatError(f"{what} {value} below {minimum}", line_no)
    return value


def _parse_weight(token: str, line_no: int) -> Fraction:
    try:
        w = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"weight {token!r} is not a rational", line_no) from None
    if not 0 <= w <= 1:
        raise FormatError(f"weight {token} outside [0, 1]", line_no)
    return w


def _parse_graph_lines(text: str, header_kind: str):
    lines = _content_lines(text)
    if not lines:
        raise FormatError("missing header line")
    head_no, head = lines[0]
    if len(head) != 4 or head[0] != "p":
        raise FormatError(f"expected header 'p {header_kind} <n> <m>'", head_no)
    if head[1] != header_kind:
        raise FormatError(f"expected graph kind {header_kind!r}, got {head[1]!r}", head_no)
    n = _parse_int(head[2], head_no, "vertex count")
    m = _parse_int(head[3], head_no, "edge count")
    triples: list[tuple[int, int, Fraction]] = []
    for line_no, tokens in lines[1:]:
        if tokens[0] == "p":
            raise FormatError("duplicate header", line_no)
        if tokens[0] != "e":
            raise FormatError(f"unexpected line {' '.join(tokens)!r}", line_no)
        if len(tokens) != 4:
            raise FormatError("edge line needs exactly 'e <a> <b> <weight>'", line_no)
        if len(triples) == m:
            raise FormatError(f"more than the declared {m} edge lines", line_no)
        a = _parse_int(tokens[1], line_no, "endpoint", minimum=1)
        b = _parse_int(tokens[2], line_no, "endpoint", minimum=1)
        if a > n or b > n:
            raise FormatError(f"endpoint outside 1..{n}", line_no)
        if a == b:
            raise FormatError(f"self-loop at vertex {a}", line_no)
        triples.append((a, b, _parse_weight(tokens[3], line_no)))
    if len(triples) != m:
        raise FormatError(f"declared {m} edges but found {len(triples)}")
    return n, triples


def parse_digraph(text: str) -> WeightedDigraph:
    n, triples = _parse_graph_lines(text, "wig")
    seen: set[tuple[int, int]] = set()
    for t, h, _ in triples:
        if (t, h) in seen:
            raise FormatError(f"duplicate arc ({t}, {h})")
        seen.add((t, h))
    return WeightedDigraph(n, triples)


def parse_undirected(text: str) -> UndirectedWeightedGraph:
    n, triples = _parse_graph_lines(text, "wug")
    seen: set[tuple[int, int]] = set()
    for a, b, _ in triples:
        key = (a, b) if a < b else (b, a)
        if key in seen:
            raise FormatError(f"duplicate edge {{{key[0]}, {key[1]}}}")
        seen.add(key)
    return UndirectedWeightedGraph(n, triples)


def parse_graph_auto(text: str) -> WeightedDigraph | UndirectedWeightedGraph:
    """Parse either graph format, deciding by the header kind."""
    for line_no, tokens in _content_lines(text):
        if tokens[0] == "p" and len(tokens) >= 2:
            if tokens[1] == "wig":
                return parse_digraph(text)
            if tokens[1] == "wug":
                return parse_undirected(text)
            raise FormatError(f"unknown graph kind {tokens[1]!r}", line_no)
        break
    raise FormatError("missing header line")


def serialize_digraph(G: WeightedDigraph) -> str:
    lines = [f"p wig {G.n} {len(G.arcs)}"]
    lines.extend(f"e {t} {h} {w}" for t, h, w in G.arcs)
    return "\n".join(lines) + "\n"


def serialize_undirected(H: UndirectedWeightedGraph) -> str:
    lines = [f"p wug {H.n} {len(H.edges)}"]
    lines.extend(f"e {u} {v} {w}" for u, v, w in H.edges)
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> Coloring:
    coloring: Coloring = {}
    for line_no, tokens in _content_lines(text):
        if len(tokens) != 2:
            raise FormatError("coloring line needs exactly '<vertex> <color>'", line_no)
        v = _parse_int(tokens[0], line_no, "vertex", minimum=1)
        c = _parse_int(tokens[1], line_no, "color", minimum=1)
        if v in coloring:
            raise FormatError(f"vertex {v} colored twice", line_no)
        coloring[v] = c
    return coloring


def serialize_coloring(coloring: Coloring) -> str:
    return "".join(f"{v} {coloring[v]}\n" for v in sorted(coloring))


def parse_decomposition(text: str, root_bag_id: int = 1) -> TreeDecomposition:
    """Parse a decomposition file; `root_bag_id` picks the root (1-based, default bag 1)."""
    lines = _content_lines(text, extra_comment="c")
    if not lines:
        raise FormatError("missing header line")
    head_no, head = lines[0]
    if len(head) != 5 or head[0] != "s" or head[1] != "td":
        raise FormatError("expected header 's td <bags> <max-bag-size> <n>'", head_no)
    count = _parse_int(head[2], head_no, "bag count", minimum=1)
    declared_max = _parse_int(head[3], head_no, "max bag size")
    n = _parse_int(head[4], head_no, "vertex count")
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    for line_no, tokens in lines[1:]:
        if tokens[0] == "s":
            raise FormatError("duplicate header", line_no)
        if tokens[0] == "b":
            if len(tokens) < 2:
                raise FormatError("bag line needs 'b <bag-id> <v...>'", line_no)
            bag_id = _parse_int(tokens[1], line_no, "bag id", minimum=1)
            if bag_id > count:
                raise FormatError(f"bag id {bag_id} outside 1..{count}", line_no)
            if bag_id in bags:
                raise FormatError(f"bag {bag_id} declared twice", line_no)
            members = []
            for token in tokens[2:]:
                v = _parse_int(token, line_no, "vertex", minimum=1)
                if v > n:
                    raise FormatError(f"vertex {v} outside 1..{n}", line_no)
                if v in members:
                    raise FormatError(f"vertex {v} repeated in bag {bag_id}", line_no)
                members.append(v)
            bags[bag_id] = frozenset(members)
        else:
            if len(tokens) != 2:
                raise FormatError("bag-tree edge line needs '<i> <j>'", line_no)
            a = _parse_int(tokens[0], line_no, "bag id", minimum=1)
            b = _parse_int(tokens[1], line_no, "bag id", minimum=1)
            if a > count or b > count:
                raise FormatError(f"bag id outside 1..{count}", line_no)
            edges.append((a - 1, b - 1))
    missing = [i for i in range(1, count + 1) if i not in bags]
    if missing:
        raise FormatError(f"bag {missing[0]} never declared")
    actual_max = max(len(b) for b in bags.values())
    if actual_max != declared_max:
        raise FormatError(f"header claims max bag size {declared_max}, actual {actual_max}")
    if not 1 <= root_bag_id <= count:
        raise FormatError(f"root bag {root_bag_id} outside 1..{count}")
    try:
        return TreeDecomposition(
            [bags[i] for i in range(1, count + 1)], edges, root=root_bag_id - 1
        )
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_decomposition(D: TreeDecomposition, n: int | None = None) -> str:
    """Serialize with the root as bag 1 (bags re-indexed if needed).

    `n` is the graph's vertex count for the header; by default the
    largest vertex mentioned in any bag, which matches for any
    decomposition covering all vertices.
    """
    count = len(D.bags)
    perm = [D.root] + [i for i in range(count) if i != D.root]
    new_index = {old: new for new, old in enumerate(perm)}
    if n is None:
        n = max((v for bag in D.bags for v in bag), default=0)
    max_size = max(len(bag) for bag in D.bags)
    lines = [f"s td {count} {max_size} {n}"]
    for new, old in enumerate(perm, start=1):
        members = " ".join(str(v) for v in sorted(D.bags[old]))
        lines.append(f"b {new}{' ' + members if members else ''}")
    remapped = sorted(
        tuple(sorted((new_index[a] + 1, new_index[b] + 1))) for a, b in D.tree_edges
    )
    lines.extend(f"{a} {b}" for a, b in remapped)
    return "\n".join(lines) + "\n"

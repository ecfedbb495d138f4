"""Linear chromosomes of terminal/operator genes and their evaluation.

A chromosome is a fixed-length sequence of genes, read top to bottom like
intermediate compiler code: each gene either binds a terminal (a heap size
``a1``..``aN`` or the heap count ``n``) or applies an operator to the values
of strictly earlier genes.  The chromosome's value is the value of its last
gene.  All arithmetic is signed 64-bit two's complement with wrapping
``+ - *``; ``div``/``mod`` are truncated (round toward zero); the bitwise
operators act on the 64-bit bit pattern.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FUNCTIONS = ("+", "-", "*", "div", "mod", "and", "or", "xor", "not")
ARITY = {sym: (1 if sym == "not" else 2) for sym in FUNCTIONS}

_MASK = (1 << 64) - 1
_SIGN = 1 << 63


class EvalError(Exception):
    """Division or modulo by zero inside the evaluated expression."""


class ParseError(Exception):
    """Malformed chromosome text; carries the offending line number."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def terminal_symbols(n_heaps: int) -> tuple[str, ...]:
    """All terminal symbols for a game with ``n_heaps`` heaps."""
    return ("n",) + tuple(f"a{i}" for i in range(1, n_heaps + 1))


def heap_ref(symbol: str) -> int | None:
    """0-based heap index for symbols ``a1``, ``a2``, ... else None."""
    if len(symbol) >= 2 and symbol[0] == "a" and symbol[1] != "0" and symbol[1:].isdigit():
        return int(symbol[1:]) - 1
    return None


def is_terminal_symbol(symbol: str) -> bool:
    return symbol == "n" or heap_ref(symbol) is not None


@dataclass(frozen=True)
class Gene:
    """One chromosome entry: a terminal (no args) or an operator with
    argument positions pointing at earlier genes."""

    symbol: str
    args: tuple[int, ...] = ()


@dataclass(frozen=True)
class Chromosome:
    """Immutable, validated gene sequence.  Raises ValueError on any
    structural violation (empty, non-terminal first gene, bad arity,
    forward/self argument reference, unknown symbol)."""

    genes: tuple[Gene, ...]

    def __post_init__(self):
        object.__setattr__(self, "genes", tuple(self.genes))
        if not self.genes:
            raise ValueError("chromosome must contain at least one gene")
        for pos, gene in enumerate(self.genes):
            if is_terminal_symbol(gene.symbol):
                if gene.args:
                    raise ValueError(f"gene {pos + 1}: terminal {gene.symbol!r} takes no arguments")
            elif gene.symbol in ARITY:
                if pos == 0:
                    raise ValueError("first gene must be a terminal symbol")
                if len(gene.args) != ARITY[gene.symbol]:
                    raise ValueError(
                        f"gene {pos + 1}: {gene.symbol!r} expects {ARITY[gene.symbol]} argument(s)"
                    )
                for a in gene.args:
                    if not 0 <= a < pos:
                        raise ValueError(f"gene {pos + 1}: argument must point at an earlier gene")
            else:
                raise ValueError(f"gene {pos + 1}: unknown symbol {gene.symbol!r}")

    def __len__(self) -> int:
        return len(self.genes)


def max_heap_ref(chrom: Chromosome) -> int:
    """Largest 0-based heap index referenced, or -1 if none."""
    refs = [heap_ref(g.symbol) for g in chrom.genes]
    return max((r for r in refs if r is not None), default=-1)


def active_positions(chrom: Chromosome) -> list[int]:
    """Positions that feed the last gene's expression, ascending."""
    needed: set[int] = set()
    stack = [len(chrom.genes) - 1]
    while stack:
        pos = stack.pop()
        if pos in needed:
            continue
        needed.add(pos)
        stack.extend(chrom.genes[pos].args)
    return sorted(needed)


def _wrap(x: int) -> int:
    return ((x + _SIGN) & _MASK) - _SIGN


def _trunc_div(a: int, b: int) -> int:
    if b == 0:
        raise EvalError("division by zero")
    q = abs(a) // abs(b)
    return _wrap(-q if (a < 0) != (b < 0) else q)


def _trunc_mod(a: int, b: int) -> int:
    if b == 0:
        raise EvalError("modulo by zero")
    return _wrap(a - _wrap(_trunc_div(a, b) * b))


_BINARY = {
    "+": lambda a, b: _wrap(a + b),
    "-": lambda a, b: _wrap(a - b),
    "*": lambda a, b: _wrap(a * b),
    "div": _trunc_div,
    "mod": _trunc_mod,
    "and": lambda a, b: a & b,
    "or": lambda a, b: a | b,
    "xor": lambda a, b: a ^ b,
}


def evaluate(chrom: Chromosome, state, n: int | None = None) -> int:
    """Value of the chromosome on one heap state.

    Only genes contributing to the last gene's expression are computed, so
    a division by zero in dead code does not raise.  Raises EvalError for
    div/mod by zero on the active path, ValueError on a state/heap-count
    mismatch.
    """
    heaps = tuple(state)
    if n is None:
        n = len(heaps)
    elif n != len(heaps):
        raise ValueError(f"state has {len(heaps)} heaps, expected {n}")
    if max_heap_ref(chrom) >= n:
        raise ValueError(f"chromosome references heap a{max_heap_ref(chrom) + 1} but game has {n} heaps")

    values: dict[int, int] = {}
    for pos in active_positions(chrom):
        gene = chrom.genes[pos]
        if not gene.args:
            values[pos] = n if gene.symbol == "n" else _wrap(heaps[heap_ref(gene.symbol)])
        elif gene.symbol == "not":
            values[pos] = ~values[gene.args[0]]
        else:
            values[pos] = _BINARY[gene.symbol](values[gene.args[0]], values[gene.args[1]])
    return values[len(chrom.genes) - 1]


def _div_many(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if np.any(b == 0):
        raise EvalError("division by zero")
    neg_one = b == -1
    if neg_one.any():
        # guard INT64_MIN // -1, the one overflowing integer division
        safe = np.where(neg_one, np.int64(1), b)
        q = _trunc_div_safe(a, safe)
        return np.where(neg_one, -a, q)
    return _trunc_div_safe(a, b)


def _trunc_div_safe(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    q = a // b
    r = a - q * b
    return q + ((r != 0) & ((a < 0) != (b < 0)))


def _mod_many(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if np.any(b == 0):
        raise EvalError("modulo by zero")
    return a - _div_many(a, b) * b


def evaluate_many(chrom: Chromosome, heap_matrix: np.ndarray, n: int | None = None) -> np.ndarray:
    """Vectorized `evaluate` over a (states, heaps) int64 matrix.

    Returns one value per row; agrees elementwise with the scalar path.
    Raises EvalError if any row hits div/mod by zero on the active path.
    """
    if n is None:
        n = heap_matrix.shape[1]
    if max_heap_ref(chrom) >= n:
        raise ValueError(f"chromosome references heap a{max_heap_ref(chrom) + 1} but game has {n} heaps")
    rows = heap_matrix.shape[0]

    values: dict[int, np.ndarray] = {}
    for pos in active_positions(chrom):
        gene = chrom.genes[pos]
        sym = gene.symbol
        if not gene.args:
            values[pos] = np.full(rows, n, dtype=np.int64) if sym == "n" else heap_matrix[:, heap_ref(sym)]
            continue
        a = values[gene.args[0]]
        if sym == "not":
            values[pos] = ~a
            continue
        b = values[gene.args[1]]
        if sym == "+":
            values[pos] = a + b
        elif sym == "-":
            values[pos] = a - b
        elif sym == "*":
            values[pos] = a * b
        elif sym == "xor":
            values[pos] = a ^ b
        elif sym == "and":
            values[pos] = a & b
        elif sym == "or":
            values[pos] = a | b
        elif sym == "div":
            values[pos] = _div_many(a, b)
        else:
            values[pos] = _mod_many(a, b)
    return values[len(chrom.genes) - 1]


def decode_infix(chrom: Chromosome) -> str:
    """Fully parenthesized infix rendering of the last gene's expression."""
    text: dict[int, str] = {}
    for pos in active_positions(chrom):
        gene = chrom.genes[pos]
        if not gene.args:
            text[pos] = gene.symbol
        elif gene.symbol == "not":
            text[pos] = f"(not {text[gene.args[0]]})"
        else:
            text[pos] = f"({text[gene.args[0]]} {gene.symbol} {text[gene.args[1]]})"
    return text[len(chrom.genes) - 1]


def format_chromosome(chrom: Chromosome, heaps: int | None = None) -> str:
    """Numbered gene listing, one gene per line, 1-based labels and argument
    references.  With ``heaps`` set, a ``heaps=<N> genes=<L>`` header is
    prepended."""
    lines = []
    if heaps is not None:
        lines.append(f"heaps={heaps} genes={len(chrom.genes)}")
    for pos, gene in enumerate(chrom.genes):
        parts = [f"{pos + 1}: {gene.symbol}"] + [str(a + 1) for a in gene.args]
        lines.append(" ".join(parts))
    return "\n".join(lines)


def parse_chromosome(text: str) -> Chromosome:
    """Parse the numbered gene listing produced by `format_chromosome`.

    Raises ParseError (with line number) on unknown symbols, wrong arity,
    forward or self references, a non-terminal first gene, out-of-order
    labels, or a gene count disagreeing with the optional header.
    """
    declared_heaps: int | None = None
    declared_genes: int | None = None
    header_line = 0
    genes: list[Gene] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not genes and declared_genes is None and line.startswith("heaps="):
            declared_heaps, declared_genes = _parse_header(line, line_no)
            header_line = line_no
            continue

        label_part, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected '<label>: <symbol> [args]'", line_no)
        try:
            label = int(label_part)
        except ValueError:
            raise ParseError(f"bad gene label {label_part.strip()!r}", line_no) from None
        if label != len(genes) + 1:
            raise ParseError(f"gene label {label} out of order (expected {len(genes) + 1})", line_no)

        tokens = rest.split()
        if not tokens:
            raise ParseError("missing symbol", line_no)
        symbol, arg_tokens = tokens[0], tokens[1:]

        if is_terminal_symbol(symbol):
            if arg_tokens:
                raise ParseError(f"terminal {symbol!r} takes no arguments", line_no)
            ref = heap_ref(symbol)
            if ref is not None and declared_heaps is not None and ref >= declared_heaps:
                raise ParseError(f"{symbol!r} exceeds declared heap count {declared_heaps}", line_no)
            genes.append(Gene(symbol))
        elif symbol in ARITY:
            if label == 1:
                raise ParseError("first gene must be a terminal symbol", line_no)
            if len(arg_tokens) != ARITY[symbol]:
                raise ParseError(
                    f"{symbol!r} expects {ARITY[symbol]} argument(s), got {len(arg_tokens)}", line_no
                )
            args = []
            for tok in arg_tokens:
                try:
                    ref = int(tok)
                except ValueError:
                    raise ParseError(f"bad argument reference {tok!r}", line_no) from None
                if not 1 <= ref < label:
                    raise ParseError(f"argument {ref} must reference an earlier gene (1..{label - 1})", line_no)
                args.append(ref - 1)
            genes.append(Gene(symbol, tuple(args)))
        else:
            raise ParseError(f"unknown symbol {symbol!r}", line_no)

    if not genes:
        raise ParseError("no genes", 1)
    if declared_genes is not None and declared_genes != len(genes):
        raise ParseError(f"header declares {declared_genes} genes but {len(genes)} listed", header_line)
    return Chromosome(tuple(genes))


def _parse_header(line: str, line_no: int) -> tuple[int, int]:
    fields = dict(part.split("=", 1) for part in line.split() if "=" in part)
    try:
        heaps = int(fields["heaps"])
        length = int(fields["genes"])
    except (KeyError, ValueError):
        raise ParseError("header must be 'heaps=<N> genes=<L>'", line_no) from None
    if heaps < 1 or length < 1:
        raise ParseError("header counts must be positive", line_no)
    return heaps, length

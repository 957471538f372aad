"""Compact open subsets of Q_p: parsing, normal forms and tree analysis.

A compact open set is a finite disjoint union of balls of equal radius.  The
representation used everywhere is an affine frame around a normalized core::

    set  =  offset + p**scale_exponent * core
    core =  union over c in digits of (c + p**level * Z_p),  digits within
            [0, p**level)

The core always sits inside Z_p and the frame makes the original input
recoverable exactly.  ``digits`` need not contain 0 and ``level`` need not be
minimal: :func:`parse_set` keeps the granularity the input was written at,
while :meth:`CompactOpenSet.normalize` produces the canonical form (core
anchored at 0, no common power of p left, level minimal so that no union of
one-step-larger balls describes the same set) and is idempotent.

The level-by-level quotients of the digit set form a finite tree; the set is
p-homogeneous when every level branches uniformly with factor 1 or p, which
is the checkable criterion for being spectral / being a tile.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import GroupRingElement
from .padic import Ball, PAdicRational, character_exponent, is_prime

__all__ = [
    "SetSyntaxError",
    "CompactOpenSet",
    "PTree",
    "AdmissibleOrders",
    "Homogeneity",
    "FourierValue",
    "homogeneity_of_digits",
    "parse_set",
    "build_tree",
    "is_p_homogeneous",
    "admissible_orders",
    "haar_measure",
    "indicator_fourier",
]


class SetSyntaxError(ValueError):
    """DSL syntax error with source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# tokenizer / parser for the ball-union DSL
#
#   program := "p=" INT ";" set
#   set     := "{" term ("," term)* "}"
#   term    := literal "+" radius | radius | "Z"
#   radius  := ("p" | INT) "^" SINT "Z"          -- base must equal the prime
#   literal := SINT | SINT "/" INT | SINT "*" ("p"|INT) "^" SINT
#
# "Z" alone denotes Z_p.  Mixed radii are allowed and refined to the finest
# level present.

_TOKEN_RE = re.compile(r"\d+|[A-Za-z]+|[=;{},+*/^\-]")
_SPACE_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class _Token:
    kind: str  # NUM, NAME, or the symbol itself
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, line, bol = 0, 1, 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
            bol = i
            continue
        if ch.isspace():
            i += 1
            continue
        m = _TOKEN_RE.match(text, i)
        if not m:
            raise SetSyntaxError(f"unexpected character {ch!r}", line, i - bol + 1)
        raw = m.group()
        kind = "NUM" if raw[0].isdigit() else ("NAME" if raw[0].isalpha() else raw)
        tokens.append(_Token(kind, raw, line, i - bol + 1))
        i = m.end()
    tokens.append(_Token("EOF", "", line, len(text) - bol + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def fail(self, message: str):
        t = self.peek()
        raise SetSyntaxError(message, t.line, t.column)

    def expect(self, kind: str, what: str) -> _Token:
        t = self.peek()
        if t.kind != kind:
            self.fail(f"expected {what}, found {t.text!r}" if t.text else f"expected {what}")
        return self.next()

    def parse_program(self) -> "CompactOpenSet":
        t = self.expect("NAME", "'p'")
        if t.text != "p":
            raise SetSyntaxError("expected 'p'", t.line, t.column)
        self.expect("=", "'='")
        t = self.expect("NUM", "a prime")
        p = int(t.text)
        if not is_prime(p):
            raise SetSyntaxError(f"{p} is not prime", t.line, t.column)
        self.expect(";", "';'")
        self.expect("{", "'{'")
        if self.peek().kind == "}":
            self.fail("empty union")
        balls = [self.parse_term(p)]
        while self.peek().kind == ",":
            self.next()
            balls.append(self.parse_term(p))
        self.expect("}", "'}' or ','")
        self.expect("EOF", "end of input")
        return _canonicalize_balls(p, balls, anchored=False)

    def parse_term(self, p: int) -> tuple[PAdicRational, int]:
        """One ball, returned as (center, level k) meaning center + p^k Z_p."""
        t = self.peek()
        if t.kind == "NAME" and t.text == "Z":
            self.next()
            return PAdicRational(p, 0), 0
        if t.kind == "NAME" and t.text == "p" or self._at_radius(p):
            return PAdicRational(p, 0), self.parse_radius(p)
        center = self.parse_literal(p)
        if self.peek().kind != "+":
            self.fail("expected '+' before the ball radius")
        self.next()
        if self.peek().kind == "NAME" and self.peek().text == "Z":
            self.next()
            return center, 0
        return center, self.parse_radius(p)

    def _at_radius(self, p: int) -> bool:
        # NUM '^' ... is a radius head; NUM followed by anything else is a literal
        t = self.peek()
        return t.kind == "NUM" and self.tokens[self.pos + 1].kind == "^"

    def parse_radius(self, p: int) -> int:
        t = self.next()
        if t.kind == "NAME" and t.text == "p":
            pass
        elif t.kind == "NUM":
            if int(t.text) != p:
                raise SetSyntaxError(
                    f"radius base {t.text} does not match p={p}", t.line, t.column
                )
        else:
            raise SetSyntaxError("expected radius base", t.line, t.column)
        self.expect("^", "'^'")
        k = self.parse_signed_int()
        t = self.expect("NAME", "'Z'")
        if t.text != "Z":
            raise SetSyntaxError("expected 'Z'", t.line, t.column)
        return k

    def parse_signed_int(self) -> int:
        sign = 1
        if self.peek().kind == "-":
            self.next()
            sign = -1
        t = self.expect("NUM", "an integer")
        return sign * int(t.text)

    def parse_literal(self, p: int) -> PAdicRational:
        sign = 1
        if self.peek().kind == "-":
            self.next()
            sign = -1
        t = self.expect("NUM", "a p-adic literal")
        a = sign * int(t.text)
        nxt = self.peek()
        if nxt.kind == "/":
            self.next()
            t = self.expect("NUM", "a denominator")
            den = int(t.text)
            try:
                return PAdicRational.from_fraction(p, Fraction(a, den))
            except (ValueError, ZeroDivisionError) as exc:
                raise SetSyntaxError(str(exc), t.line, t.column) from None
        if nxt.kind == "*":
            self.next()
            t = self.next()
            if not (t.kind == "NAME" and t.text == "p") and not (
                t.kind == "NUM" and int(t.text) == p
            ):
                raise SetSyntaxError("expected the prime as power base", t.line, t.column)
            self.expect("^", "'^'")
            k = self.parse_signed_int()
            return PAdicRational(p, a, k)
        return PAdicRational(p, a)


def parse_set(text: str) -> "CompactOpenSet":
    """Parse a ball-union expression, keeping the granularity as written.

    Overlapping and duplicate balls are merged and mixed radii are refined
    to the finest one present; a scale factor is extracted only when needed
    to place the core inside Z_p at a nonnegative level (fractional centers
    or balls larger than Z_p).  Use :meth:`CompactOpenSet.normalize` for the
    translated, minimal-level canonical form.
    """
    return _Parser(text).parse_program()


# ---------------------------------------------------------------------------
# canonicalization


def _min_valuation_lex(reps: list[PAdicRational], stop: int) -> PAdicRational:
    """Anchor choice: minimal valuation, ties by lexicographically smallest
    digit sequence (digits read upward from the valuation)."""
    vmin = min(r.valuation for r in reps)
    best = None
    best_key = None
    for r in reps:
        if r.valuation != vmin:
            continue
        key = r.digits(vmin, stop)
        if best is None or key < best_key:
            best, best_key = r, key
    return best


def _canonicalize_balls(
    p: int, balls: list[tuple[PAdicRational, int]], anchored: bool
) -> "CompactOpenSet":
    """Turn a nonempty list of (center, level) balls into a CompactOpenSet.

    With anchored=False the written granularity is kept: balls are refined
    to the finest radius present, merged, and scaled just enough for the
    core to sit in Z_p at a nonnegative level (offset stays 0).  With
    anchored=True the result is the full canonical form: translated so the
    core contains 0 (anchor 0 itself whenever 0 is already a ball
    representative, which makes the operation idempotent), scaled so no
    common power of p remains, and collapsed to the minimal level.
    """
    gmax = max(level for _, level in balls)
    reps: dict[PAdicRational, None] = {}
    for center, level in balls:
        for t in range(p ** (gmax - level)):
            child = center if t == 0 else center + PAdicRational(p, t, level)
            reps[child.truncate_digits(gmax)] = None
    rep_list = list(reps)
    zero = PAdicRational(p, 0)

    anchor = zero
    if anchored and zero not in reps:
        anchor = _min_valuation_lex(rep_list, gmax)

    shifted = rep_list if anchor.unit == 0 else [r - anchor for r in rep_list]
    nonzero_vals = [w.valuation for w in shifted if w.unit]
    if anchored:
        scale = min(min(nonzero_vals, default=gmax), gmax)
    else:
        scale = min(0, min(nonzero_vals, default=0), gmax)
    gamma = gmax - scale
    modulus = p**gamma
    digits = frozenset(
        (w.unit * p ** (w.valuation - scale)) % modulus if w.unit else 0
        for w in shifted
    )

    if anchored:
        # collapse levels whose branching is full: the set is then already
        # a union of the one-step-larger balls
        while gamma > 0:
            q = p ** (gamma - 1)
            parents = frozenset(c % q for c in digits)
            if len(digits) != p * len(parents):
                break
            digits, gamma = parents, gamma - 1

    return CompactOpenSet(p, gamma, digits, scale, anchor)


# ---------------------------------------------------------------------------
# homogeneity


@dataclass(frozen=True)
class Homogeneity:
    """Verdict of the uniform-branching test, with the level split on success.

    ``branch_levels`` are the tree levels where every vertex has p children,
    ``fixed_levels`` those where every vertex has exactly one.
    """

    homogeneous: bool
    branch_levels: frozenset[int] | None = None
    fixed_levels: frozenset[int] | None = None

    def __bool__(self) -> bool:
        return self.homogeneous


def homogeneity_of_digits(p: int, gamma: int, digits) -> Homogeneity:
    """Decide uniform branching for a digit set at level gamma.

    Two independent computations must agree: the per-vertex walk (every
    vertex at a level has the same number of children, which is 1 or p) and
    the cardinality route (every level-count is a power of p).  Their
    agreement is enforced on every call.
    """
    digits = list(digits)
    level_sets = [frozenset(c % p**n for c in digits) for n in range(gamma + 1)]

    # route 1: per-vertex branching
    walk_ok = True
    branch_walk = set()
    for n in range(gamma):
        q = p**n
        children: dict[int, set[int]] = {}
        for c in level_sets[n + 1]:
            children.setdefault(c % q, set()).add(c)
        counts = {len(v) for v in children.values()}
        if counts == {p}:
            branch_walk.add(n)
        elif counts != {1}:
            walk_ok = False

    # route 2: level cardinalities
    count_ok = True
    branch_count = set()
    for n in range(gamma + 1):
        size = len(level_sets[n])
        while size % p == 0:
            size //= p
        if size != 1:
            count_ok = False
    if count_ok:
        for n in range(gamma):
            if len(level_sets[n + 1]) == p * len(level_sets[n]):
                branch_count.add(n)

    if walk_ok != count_ok or (walk_ok and branch_walk != branch_count):
        raise RuntimeError(
            "homogeneity routes disagree: "
            f"p={p} gamma={gamma} digits={sorted(digits)} "
            f"walk=({walk_ok},{sorted(branch_walk)}) count=({count_ok},{sorted(branch_count)})"
        )

    if not walk_ok:
        return Homogeneity(False)
    branch = frozenset(branch_walk)
    return Homogeneity(True, branch, frozenset(range(gamma)) - branch)


# ---------------------------------------------------------------------------
# admissible orders


@dataclass(frozen=True)
class AdmissibleOrders:
    """The set of exponents i realized as v_p(x - y) for distinct x, y.

    A finite part below ``tail_threshold`` plus the full tail
    [tail_threshold, infinity); membership is total over the integers.
    """

    finite_part: frozenset[int]
    tail_threshold: int

    def __post_init__(self):
        object.__setattr__(
            self,
            "finite_part",
            frozenset(i for i in self.finite_part if i < self.tail_threshold),
        )

    def __contains__(self, i: int) -> bool:
        return i >= self.tail_threshold or i in self.finite_part

    def window(self, lo: int, hi: int) -> tuple[int, ...]:
        return tuple(i for i in range(lo, hi) if i in self)

    def to_json(self) -> dict:
        return {"finite": sorted(self.finite_part), "tail": self.tail_threshold}


# ---------------------------------------------------------------------------
# trees


@dataclass(frozen=True)
class PTree:
    """The finite ball tree of a digit set: level n holds the residues mod p**n."""

    p: int
    gamma: int
    levels: tuple[tuple[int, ...], ...]
    children: tuple[dict[int, tuple[int, ...]], ...] = field(compare=False)

    @property
    def level_sizes(self) -> tuple[int, ...]:
        return tuple(len(lv) for lv in self.levels)

    def branching(self, n: int) -> tuple[int, ...]:
        """Child counts of the level-n vertices, in vertex order."""
        return tuple(len(self.children[n][v]) for v in self.levels[n])

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "gamma": self.gamma,
            "levels": [list(lv) for lv in self.levels],
            "edges": [
                [[v, c] for v in self.levels[n] for c in self.children[n][v]]
                for n in range(self.gamma)
            ],
        }

    def to_dot(self, homogeneity: Homogeneity | None = None) -> str:
        """Deterministic Graphviz rendering; branching levels are annotated."""
        lines = ["digraph ball_tree {", '  rankdir="TB";']
        if homogeneity is not None and homogeneity.homogeneous:
            ann = ",".join(str(i) for i in sorted(homogeneity.branch_levels))
            lines.append(f'  label="homogeneous; branching levels: [{ann}]";')
        for n, level in enumerate(self.levels):
            for v in level:
                name = f"n{n}_{v}"
                label = "*" if n == 0 else str(v)
                lines.append(f'  {name} [label="{label}"];')
        for n in range(self.gamma):
            for v in self.levels[n]:
                for c in self.children[n][v]:
                    lines.append(f"  n{n}_{v} -> n{n + 1}_{c};")
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Fourier values


@dataclass(frozen=True)
class FourierValue:
    """An exact transform value: rational scalar times a sum of roots of unity."""

    scalar: Fraction
    phases: GroupRingElement

    def is_zero(self) -> bool:
        return self.scalar == 0 or self.phases.is_zero()

    def complex_value(self) -> complex:
        return complex(self.scalar) * self.phases.complex_value()

    def rational_value(self) -> Fraction | None:
        """The value as a rational when all phases sit at exponent 0."""
        sup = self.phases.support
        if sup == ():
            return Fraction(0)
        if sup == (0,):
            return self.scalar * self.phases.coefficient(0)
        return None

    @classmethod
    def zero(cls, p: int) -> "FourierValue":
        return cls(Fraction(0), GroupRingElement.zero(p, 0))


# ---------------------------------------------------------------------------
# the set itself


@dataclass(frozen=True)
class CompactOpenSet:
    """A compact open subset of Q_p in core + frame form (see module docs)."""

    p: int
    level: int
    digits: frozenset[int]
    scale_exponent: int = 0
    offset: PAdicRational = None  # type: ignore[assignment]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.level < 0:
            raise ValueError("level must be >= 0")
        digits = frozenset(self.digits)
        if not digits:
            raise ValueError("digit set must be nonempty")
        if any(not 0 <= c < self.p**self.level for c in digits):
            raise ValueError("digits out of range for the level")
        object.__setattr__(self, "digits", digits)
        if self.offset is None:
            object.__setattr__(self, "offset", PAdicRational(self.p, 0))
        elif self.offset.p != self.p:
            raise ValueError("offset has a different prime")

    @classmethod
    def from_digits(
        cls, p: int, level: int, digits, scale_exponent: int = 0, offset=None
    ) -> "CompactOpenSet":
        return cls(p, level, frozenset(digits), scale_exponent, offset)

    # ------------------------------------------------------------------

    @property
    def sorted_digits(self) -> tuple[int, ...]:
        return tuple(sorted(self.digits))

    def balls(self) -> list[Ball]:
        """The equal-radius balls of the set, in digit order."""
        out = []
        for c in self.sorted_digits:
            center = self.offset + PAdicRational(self.p, c).scaled(self.scale_exponent)
            out.append(Ball(center, -(self.level + self.scale_exponent)))
        return out

    def contains(self, x: PAdicRational) -> bool:
        y = (x - self.offset).scaled(-self.scale_exponent)
        if y.unit != 0 and y.valuation < 0:
            return False
        value = 0 if y.unit == 0 else y.unit * self.p**y.valuation
        return value % self.p**self.level in self.digits

    def normalize(self) -> "CompactOpenSet":
        """Full canonical form: core contains 0, level minimal; idempotent."""
        p = self.p
        balls = [(PAdicRational(p, c), self.level) for c in self.sorted_digits]
        core = _canonicalize_balls(p, balls, anchored=True)
        return CompactOpenSet(
            p,
            core.level,
            core.digits,
            self.scale_exponent + core.scale_exponent,
            self.offset + core.offset.scaled(self.scale_exponent),
        )

    def is_normalized(self) -> bool:
        return self == self.normalize()

    # ------------------------------------------------------------------
    # analysis

    def haar_measure(self) -> Fraction:
        return Fraction(len(self.digits), self.p**self.level) * Fraction(
            1, self.p
        ) ** self.scale_exponent

    def build_tree(self) -> PTree:
        p = self.p
        levels = []
        children: list[dict[int, tuple[int, ...]]] = []
        for n in range(self.level + 1):
            levels.append(tuple(sorted({c % p**n for c in self.digits})))
        for n in range(self.level):
            q = p**n
            kids: dict[int, list[int]] = {v: [] for v in levels[n]}
            for c in levels[n + 1]:
                kids[c % q].append(c)
            children.append({v: tuple(sorted(k)) for v, k in kids.items()})
        return PTree(p, self.level, tuple(levels), tuple(children))

    def homogeneity(self) -> Homogeneity:
        return homogeneity_of_digits(self.p, self.level, self.digits)

    def admissible_orders(self) -> AdmissibleOrders:
        """All exponents realized as v_p(x - y) for distinct points x, y.

        Inside the window [0, level) these are the tree levels where some
        vertex branches; every exponent >= level occurs within a single
        ball.  The frame shifts everything by the scale exponent.
        """
        p, s = self.p, self.scale_exponent
        finite = set()
        for n in range(self.level):
            q = p**n
            parents: dict[int, set[int]] = {}
            for c in {c % p ** (n + 1) for c in self.digits}:
                parents.setdefault(c % q, set()).add(c)
            if any(len(v) > 1 for v in parents.values()):
                finite.add(n + s)
        return AdmissibleOrders(frozenset(finite), self.level + s)

    def indicator_fourier(self, xi: PAdicRational) -> FourierValue:
        """Exact Fourier transform of the indicator function at xi.

        Convention: for a core set at level gamma the value is
        ``p**(-gamma) * sum_c chi(-c*xi)`` supported on the ball
        |xi|_p <= p**gamma, i.e. radius-p**(-gamma) balls carry scalar
        p**(-gamma) and the support is the dual ball of radius p**gamma.
        (The reciprocal convention, scalar p**gamma with support
        |xi|_p <= p**(-gamma), describes the same transform for balls of
        radius p**gamma; only this one is used here.)  A frame contributes
        the factor p**(-scale) and the phase chi(-offset*xi), folded into
        the returned phases.
        """
        p, gamma = self.p, self.level
        if xi.p != p:
            raise ValueError("frequency has a different prime")
        core_xi = xi.scaled(self.scale_exponent)
        if core_xi.unit != 0 and core_xi.valuation < -gamma:
            return FourierValue.zero(p)
        m = 0 if core_xi.unit == 0 else max(0, -core_xi.valuation)
        twist = character_exponent(-(self.offset * xi))
        level = max(m, 0 if twist == 0 else _power_exponent(p, twist.denominator))
        pm, pl = p**m, p**level
        u = 0 if core_xi.unit == 0 else core_xi.unit * p ** (core_xi.valuation + m)
        twist_index = int(twist * pl)
        exps = [
            (((-c * u) % pm) * (pl // pm) + twist_index) % pl
            for c in self.digits
        ]
        scalar = Fraction(1, p) ** (gamma + self.scale_exponent)
        return FourierValue(scalar, GroupRingElement.from_exponents(p, level, exps))

    # ------------------------------------------------------------------

    def analyze_dict(self) -> dict:
        """The set-level analysis record (see the published JSON schema)."""
        hom = self.homogeneity()
        orders = self.admissible_orders()
        measure = self.haar_measure()
        return {
            "p": self.p,
            "gamma": self.level,
            "digits": list(self.sorted_digits),
            "scale": self.scale_exponent,
            "offset": self.offset.to_rational_text(),
            "homogeneous": hom.homogeneous,
            "I": sorted(hom.branch_levels) if hom.homogeneous else None,
            "J": sorted(hom.fixed_levels) if hom.homogeneous else None,
            "I_Omega": orders.to_json(),
            "measure": f"{measure.numerator}/{measure.denominator}",
        }

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "gamma": self.level,
            "digits": list(self.sorted_digits),
            "scale": self.scale_exponent,
            "offset": self.offset.to_json(),
        }

    def __str__(self) -> str:
        inner = " u ".join(
            f"({c}+{self.p}^{self.level}Z)" for c in self.sorted_digits
        )
        frame = ""
        if self.scale_exponent:
            frame += f"{self.p}^{self.scale_exponent}*"
        body = f"{frame}[{inner}]"
        if self.offset.unit:
            body = f"{self.offset} + {body}"
        return body


def _power_exponent(p: int, q: int) -> int:
    """The k with q == p**k (q is a p-power by construction)."""
    k = 0
    while q > 1:
        q //= p
        k += 1
    return k


# ---------------------------------------------------------------------------
# free-function views of the operations


def build_tree(omega: CompactOpenSet) -> PTree:
    return omega.build_tree()


def is_p_homogeneous(omega: CompactOpenSet) -> Homogeneity:
    return omega.homogeneity()


def admissible_orders(omega: CompactOpenSet) -> AdmissibleOrders:
    return omega.admissible_orders()


def haar_measure(omega: CompactOpenSet) -> Fraction:
    return omega.haar_measure()


def indicator_fourier(omega: CompactOpenSet, xi: PAdicRational) -> FourierValue:
    return omega.indicator_fourier(xi)

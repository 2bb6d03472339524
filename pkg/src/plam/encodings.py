"""Closed terms for programming in the calculus.

Booleans, exclusive-or, Scott numerals, binary strings, pairs, the
looping term OMEGA, the call-by-value fixed-point term H, the finite
dyadic tree runner MFDT, and the geometric generator GEO.  Also the
finite dyadic tree helpers: such a tree is either a leaf \\x.\\y. x <n>
holding a numeral or a node \\x.\\y. y M N over two subtrees, and pd
gives the distribution it denotes (half the left pd plus half the
right).
"""

from __future__ import annotations

from typing import Mapping

from .dist import Dyadic, HALF, ONE, SubDist, combine, from_value
from .reduction import CBV
from .syntax import Abs, App, Choice, Term, Var, fresh_name, is_value

TT = Abs("x", Abs("y", Var("x")))
FF = Abs("x", Abs("y", Var("y")))

# parity: XOR b c reduces to TT exactly when b and c differ
XOR = Abs(
    "x",
    Abs(
        "y",
        App(
            App(
                App(Var("x"), Abs("z", App(App(Var("z"), FF), TT))),
                Abs("z", App(App(Var("z"), TT), FF)),
            ),
            Var("y"),
        ),
    ),
)

DELTA = Abs("x", App(Var("x"), Var("x")))
OMEGA = App(DELTA, DELTA)

# H W-combinator: H V rewrites in two steps to V (\z. H V z), handing V an
# eta-guarded copy of the recursive call
_W = Abs(
    "x",
    Abs(
        "y",
        App(
            Var("y"),
            Abs("z", App(App(App(Var("x"), Var("x")), Var("y")), Var("z"))),
        ),
    ),
)
H = App(_W, _W)

# tree runner: ask the tree whether it is a leaf (return the numeral) or a
# node (recurse on a fair choice of the two subtrees)
_V_FDT = Abs(
    "x",
    Abs(
        "y",
        App(
            App(Var("y"), Abs("z", Var("z"))),
            Abs(
                "z",
                Abs(
                    "w",
                    Choice(
                        App(Var("x"), Var("z")), App(Var("x"), Var("w"))
                    ),
                ),
            ),
        ),
    ),
)
MFDT = App(H, _V_FDT)

SUCC = Abs("n", Abs("x", Abs("y", App(Var("y"), Var("n")))))

PAIR = Abs("a", Abs("b", Abs("x", App(App(Var("x"), Var("a")), Var("b")))))

_NUMERAL_CACHE: dict[int, Term] = {}


def encode_nat(n: int) -> Term:
    """Scott numeral: 0 is \\x.\\y. x, n+1 is \\x.\\y. y <n>."""
    if n < 0:
        raise ValueError(f"not a natural number: {n}")
    t = _NUMERAL_CACHE.get(n)
    if t is None:
        prev = TT if n == 0 else encode_nat(n - 1)
        t = TT if n == 0 else Abs("x", Abs("y", App(Var("y"), prev)))
        _NUMERAL_CACHE[n] = t
    return t


def decode_nat(t: Term) -> int | None:
    """Inverse of encode_nat up to alpha; None for non-numerals."""

    def go(key) -> int | None:
        # keys: 0 is \x.\y.x, n+1 is \x.\y. y <n> with <n> closed
        match key:
            case ("l", ("l", ("b", 1))):
                return 0
            case ("l", ("l", ("a", ("b", 0), inner))):
                rest = go(inner)
                return None if rest is None else rest + 1
        return None

    return go(t.alpha_key)


def encode_bits(bits: str) -> Term:
    """Binary strings: empty is \\x.\\y.\\z. x, '0'+s is \\x.\\y.\\z. y <s>,
    '1'+s is \\x.\\y.\\z. z <s>."""
    if not bits:
        return Abs("x", Abs("y", Abs("z", Var("x"))))
    head, tail = bits[0], encode_bits(bits[1:])
    if head == "0":
        return Abs("x", Abs("y", Abs("z", App(Var("y"), tail))))
    if head == "1":
        return Abs("x", Abs("y", Abs("z", App(Var("z"), tail))))
    raise ValueError(f"not a bit: {head!r}")


def pair(v: Term, w: Term) -> Term:
    """\\x. x V W for values V, W (x chosen fresh)."""
    if not (is_value(v) and is_value(w)):
        raise ValueError("pair components must be values")
    avoid = v.free_names | w.free_names
    x = "x" if "x" not in avoid else fresh_name("x", avoid)
    return Abs(x, App(App(Var(x), v), w))


def standard_choice(m: Term, n: Term) -> Term:
    """Thunked fair choice usable under call-by-value even when a branch
    diverges: (TT (+) FF) (\\z. M) (\\z. N) (\\w. w)."""
    avoid = m.free_names | n.free_names
    z = "z" if "z" not in avoid else fresh_name("z", avoid)
    w = "w" if "w" not in avoid else fresh_name("w", avoid)
    return App(
        App(App(Choice(TT, FF), Abs(z, m)), Abs(z, n)),
        Abs(w, Var(w)),
    )


# geometric generator: flip a coin at numeral n, either return n or move
# on to n+1; recursive call sits behind a thunk so call-by-value does not
# chase it before the coin is tossed
_V_GEO = Abs(
    "r",
    Abs(
        "n",
        App(
            App(
                App(Choice(TT, FF), Abs("z", Var("n"))),
                Abs("z", App(Var("r"), App(SUCC, Var("n")))),
            ),
            Abs("w", Var("w")),
        ),
    ),
)
GEO = App(App(H, _V_GEO), encode_nat(0))


def constants() -> dict[str, Term]:
    """Named closed terms the parser expands (NAT takes its own number)."""
    return {
        "TT": TT,
        "FF": FF,
        "XOR": XOR,
        "OMEGA": OMEGA,
        "H": H,
        "MFDT": MFDT,
        "GEO": GEO,
        "PAIR": PAIR,
    }


# ---------- finite dyadic trees ----------


class FdtError(ValueError):
    pass


def leaf(n: int) -> Term:
    return Abs("x", Abs("y", App(Var("x"), encode_nat(n))))


def node(left: Term, right: Term) -> Term:
    if fdt_shape(left) is None or fdt_shape(right) is None:
        raise FdtError("node children must be finite dyadic trees")
    return Abs("x", Abs("y", App(App(Var("y"), left), right)))


def fdt_shape(t: Term):
    """('leaf', n), ('node', left, right), or None."""
    match t:
        case Abs(x, Abs(y, App(Var(h), arg))) if h == x and x != y:
            if arg.free_names:
                return None
            n = decode_nat(arg)
            return None if n is None else ("leaf", n)
        case Abs(x, Abs(y, App(App(Var(h), l), r))) if h == y:
            if l.free_names or r.free_names:
                return None
            if fdt_shape(l) is None or fdt_shape(r) is None:
                return None
            return ("node", l, r)
    return None


def is_fdt(t: Term) -> bool:
    return fdt_shape(t) is not None


def pd(t: Term) -> SubDist:
    """Distribution over numerals denoted by a finite dyadic tree."""
    shape = fdt_shape(t)
    if shape is None:
        raise FdtError(f"not a finite dyadic tree: {t}")
    if shape[0] == "leaf":
        return from_value(encode_nat(shape[1]))
    return combine([(HALF, pd(shape[1])), (HALF, pd(shape[2]))])


def fdt_from_dist(d: Mapping[int, Dyadic]) -> Term:
    """Tree whose pd is exactly d; d must have total mass 1.

    Each mass is cut into powers of two and the pieces become leaves at
    the matching depths (shortest codes first), which fits exactly
    because the masses sum to 1.
    """
    total = Dyadic(0)
    atoms: list[tuple[int, int]] = []  # (depth, outcome)
    for n in sorted(d):
        m = d[n]
        if not m:
            continue
        if m > ONE:
            raise FdtError(f"mass {m} of outcome {n} exceeds 1")
        total = total + m
        for depth in range(m.exp + 1):
            if (m.num >> (m.exp - depth)) & 1:
                atoms.append((depth, n))
    if total != ONE:
        raise FdtError(f"total mass is {total}, need exactly 1")

    # canonical code assignment: sort by depth, hand out codewords in order
    atoms.sort()
    codes: list[tuple[str, int]] = []
    code, prev_depth = 0, 0
    for depth, n in atoms:
        code <<= depth - prev_depth
        codes.append((format(code, f"0{depth}b") if depth else "", n))
        code += 1
        prev_depth = depth

    def build(codes: list[tuple[str, int]]) -> Term:
        if len(codes) == 1 and codes[0][0] == "":
            return leaf(codes[0][1])
        left = [(c[1:], n) for c, n in codes if c[0] == "0"]
        right = [(c[1:], n) for c, n in codes if c[0] == "1"]
        return node(build(left), build(right))

    return build(codes)


def run_mfdt(t: Term, fuel: int, frontier_cap: int | None = None):
    """Evaluate MFDT applied to a tree, call-by-value."""
    from . import smallstep

    if fdt_shape(t) is None:
        raise FdtError(f"not a finite dyadic tree: {t}")
    cap = smallstep.DEFAULT_FRONTIER_CAP if frontier_cap is None else frontier_cap
    return smallstep.approximate(App(MFDT, t), CBV, fuel, cap)

"""Pure-Python closure kernel.

Deduplicating worklist over reduced-rational value vectors. The enumeration
order is part of the contract (carriers must be reproducible and identical
across kernel backends):

  index 0: constant 0, index 1: constant 1, then the generators in call
  order (duplicates dropped), then derived elements. For frontier element
  x_i the candidates are emitted as: neg(x_i); oplus(x_i, e_j) for j = 0..i;
  prod(x_i, e_j) for j = 0..i when products are enabled; alpha * x_i for the
  scalars in call order.

Vectors are tuples of reduced (num, den) int pairs with 0 <= num <= den.
"""

from math import gcd

from ..errors import CapExceeded

BACKEND = "pure"


def _oplus(a, b):
    out = []
    for (an, ad), (bn, bd) in zip(a, b):
        n = an * bd + bn * ad
        d = ad * bd
        if n >= d:
            out.append((1, 1))
        else:
            g = gcd(n, d)
            out.append((n // g, d // g))
    return tuple(out)


def _neg(a):
    # (d-n, d) is already reduced when (n, d) is
    return tuple((d - n, d) for n, d in a)


def _prod(a, b):
    out = []
    for (an, ad), (bn, bd) in zip(a, b):
        n = an * bn
        d = ad * bd
        g = gcd(n, d)
        out.append((n // g, d // g) if g > 1 else (n, d))
    return tuple(out)


def _scale(s, a):
    sn, sd = s
    out = []
    for n, d in a:
        nn = sn * n
        nd = sd * d
        g = gcd(nn, nd)
        out.append((nn // g, nd // g) if g > 1 else (nn, nd))
    return tuple(out)


def close_generators(gens, n_points, with_prod, scalars, cap):
    """Return (elements, derivations) for the signature closure of `gens`.

    Derivation codes: ("zero",), ("one",), ("gen", k), ("neg", i),
    ("oplus", i, j), ("prod", i, j), ("scal", s, i).
    """
    elements = []
    derivations = []
    seen = {}

    def add(vec, deriv):
        if vec in seen:
            return
        if len(elements) + 1 > cap:
            raise CapExceeded(cap, len(elements) + 1)
        seen[vec] = len(elements)
        elements.append(vec)
        derivations.append(deriv)

    add(tuple(((0, 1),) * n_points), ("zero",))
    add(tuple(((1, 1),) * n_points), ("one",))
    for k, g in enumerate(gens):
        add(tuple(g), ("gen", k))

    i = 0
    while i < len(elements):
        x = elements[i]
        add(_neg(x), ("neg", i))
        for j in range(i + 1):
            add(_oplus(x, elements[j]), ("oplus", i, j))
        if with_prod:
            for j in range(i + 1):
                add(_prod(x, elements[j]), ("prod", i, j))
        for s, alpha in enumerate(scalars):
            add(_scale(alpha, x), ("scal", s, i))
        i += 1
    return elements, derivations

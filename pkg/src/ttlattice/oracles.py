"""Brute-force oracles that share no code with the structures they check.

Polynomials here are plain coefficient lists over F_p (ascending degree).
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence


def mobius(n: int) -> int:
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def necklace_count(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over F_q: (1/d) Σ μ(e) q^(d/e)."""
    total = sum(mobius(e) * q ** (d // e) for e in range(1, d + 1) if d % e == 0)
    assert total % d == 0
    return total // d


# -- linear algebra over F_p -----------------------------------------------


def _rank(rows: list[list[int]], p: int) -> int:
    m = [r[:] for r in rows]
    rank, cols = 0, len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _matmul(a: list[list[int]], b: list[list[int]], p: int) -> list[list[int]]:
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(m)] for i in range(n)]


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_pow(a: list[int], n: int, p: int) -> list[int]:
    out = [1]
    for _ in range(n):
        out = _poly_mul(out, a, p)
    return out


def _mult_matrix(g: list[int], modulus: list[int], p: int) -> list[list[int]]:
    """Matrix (columns = images of x^i) of multiplication by g on F_p[x]/(modulus)."""
    d = len(modulus) - 1
    # companion matrix of the monic modulus
    comp = [[0] * d for _ in range(d)]
    for i in range(1, d):
        comp[i][i - 1] = 1
    for i in range(d):
        comp[i][d - 1] = (-modulus[i]) % p
    out = [[0] * d for _ in range(d)]
    power = [[int(i == j) for j in range(d)] for i in range(d)]
    for c in g:
        if c % p:
            out = [[(out[i][j] + c * power[i][j]) % p for j in range(d)] for i in range(d)]
        power = _matmul(comp, power, p)
    return out


def _columns_rank(cols: list[list[int]], p: int) -> int:
    """Rank of the span of the given column vectors."""
    if not cols:
        return 0
    return _rank(cols, p)


def _image_cols(mat: list[list[int]]) -> list[list[int]]:
    return [list(col) for col in zip(*mat)]


def _kernel_basis(mat: list[list[int]], p: int) -> list[list[int]]:
    n = len(mat[0])
    m = [r[:] for r in mat]
    pivots, rank = [], 0
    for c in range(n):
        piv = next((i for i in range(rank, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-m[r][fc]) % p
        basis.append(v)
    return basis


def _apply(mat: list[list[int]], v: list[int], p: int) -> list[int]:
    return [sum(mat[i][j] * v[j] for j in range(len(v))) % p for i in range(len(mat))]


def _partition_from_kernel_dims(dims: list[int], deg: int) -> dict[int, int]:
    """From dim ker f^j (j = 0..J) of an f-primary module, the multiplicity of
    each cyclic summand k[x]/(f^j)."""
    ge = [(dims[j] - dims[j - 1]) // deg for j in range(1, len(dims))]
    out = {}
    for j in range(1, len(ge) + 1):
        here = ge[j - 1] - (ge[j] if j < len(ge) else 0)
        if here:
            out[j] = here
    return out


def torsion_tensor_oracle(f: Sequence[int], n: int, m: int, p: int) -> dict[int, dict[int, int]]:
    """Cohomology of k[x]/(f^n) ⊗^L k[x]/(f^m) from the resolution
    0 -> k[x] -f^n-> k[x] -> k[x]/(f^n) -> 0.

    Tensoring gives the two-term complex M -f^n-> M with M = k[x]/(f^m).
    Returns {shift: {power: multiplicity}} with the cokernel at shift 0 and
    the kernel at shift 1 (it sits in cohomological degree -1)."""
    f = [c % p for c in f]
    deg = len(f) - 1
    modulus = _poly_pow(f, m, p)
    dim = len(modulus) - 1
    act = _mult_matrix(_poly_pow(f, n, p), modulus, p)
    f_act = _mult_matrix(f, modulus, p)

    kernel = _kernel_basis(act, p)
    image = _image_cols(act)
    image_rank = _columns_rank(image, p)

    # kernel as a module: dim ker(f^j restricted to K) = dim (K ∩ ker f^j)
    k_dims, c_dims = [0], [0]
    fj = [[int(i == j) for j in range(dim)] for i in range(dim)]
    for j in range(1, m + 1):
        fj = _matmul(f_act, fj, p)
        ker_fj = _kernel_basis(fj, p)
        both = _columns_rank(kernel + ker_fj, p) if kernel or ker_fj else 0
        k_dims.append(len(kernel) + len(ker_fj) - both)
        # cokernel C = M / im: dim ker(f^j on C) = dim f^{-j}(im) - dim im
        fj_img = _image_cols(fj)
        inter = image_rank + _columns_rank(fj_img, p) - _columns_rank(image + fj_img, p)
        pre = len(ker_fj) + inter
        c_dims.append(pre - image_rank)
    out = {}
    coker = _partition_from_kernel_dims(c_dims, deg)
    ker = _partition_from_kernel_dims(k_dims, deg)
    if coker:
        out[0] = coker
    if ker:
        out[1] = ker
    return out


# -- lattice oracles on set families ---------------------------------------


def set_lattice_distributive(family: Iterable[frozenset]) -> bool:
    """Distributivity of a family of sets closed under ∩ and ∪, by triple scan."""
    fam = list(family)
    return all(a & (b | c) == (a & b) | (a & c) for a in fam for b in fam for c in fam)


def brute_force_forbidden(elements: Sequence, leq) -> Optional[str]:
    """Search every 5-subset for a sublattice isomorphic to M3 or N5.

    ``leq`` is the order; meets and joins are recomputed here from it."""
    els = list(elements)

    def lub(a, b):
        ups = [u for u in els if leq(a, u) and leq(b, u)]
        least = [u for u in ups if all(leq(u, v) for v in ups)]
        return least[0] if least else None

    def glb(a, b):
        downs = [d for d in els if leq(d, a) and leq(d, b)]
        great = [d for d in downs if all(leq(v, d) for v in downs)]
        return great[0] if great else None

    for five in combinations(els, 5):
        for bot, x, y, z, top in permutations(five):
            if glb(x, y) == bot and glb(y, z) == bot and glb(x, z) == bot and \
                    lub(x, y) == top and lub(y, z) == top and lub(x, z) == top:
                if not (leq(x, y) or leq(y, x) or leq(y, z) or leq(z, y) or leq(x, z) or leq(z, x)):
                    return "M3"
            # N5: bot < x < z < top, bot < y < top, y incomparable to x and z
            if leq(x, z) and x != z and glb(x, y) == bot and glb(z, y) == bot and \
                    lub(x, y) == top and lub(z, y) == top and not leq(y, z) and not leq(z, y) \
                    and not leq(x, y) and not leq(y, x) and bot != top:
                return "N5"
    return None


# -- squarefree parts on plain coefficient lists ---------------------------


def _trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _divmod_field(a: list, b: list, inv, reduce) -> tuple[list, list]:
    a, b = _trim(a), _trim(b)
    q = [0] * max(len(a) - len(b) + 1, 1)
    lead = inv(b[-1])
    while len(a) >= len(b) and a:
        c = reduce(a[-1] * lead)
        k = len(a) - len(b)
        q[k] = c
        for i, v in enumerate(b):
            a[i + k] = reduce(a[i + k] - c * v)
        a = _trim(a)
    return _trim(q), a


def _gcd_field(a: list, b: list, inv, reduce) -> list:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod_field(a, b, inv, reduce)[1]
    lead = inv(a[-1])
    return [reduce(v * lead) for v in a]


def squarefree_char0(coeffs: Sequence) -> list:
    """Monic f / gcd(f, f') over Q (valid in characteristic zero only)."""
    from fractions import Fraction

    f = _trim([Fraction(c) for c in coeffs])
    if len(f) <= 1:
        return [Fraction(1)] if f else []
    df = [i * f[i] for i in range(1, len(f))]
    ident = lambda v: v
    inv = lambda v: 1 / v
    g = _gcd_field(f, df, inv, ident)
    q, _ = _divmod_field(f, g, inv, ident)
    lead = q[-1]
    return [v / lead for v in q]


def squarefree_trial_fp(coeffs: Sequence[int], p: int) -> list[int]:
    """Product of the distinct monic irreducible factors over F_p, found by
    trial division by every monic polynomial in increasing degree."""
    from itertools import product as _product

    red = lambda v: v % p
    inv = lambda v: pow(v, -1, p)
    f = _trim([c % p for c in coeffs])
    if not f:
        return []
    out = [1]
    d = 1
    while len(f) > 1:
        if 2 * d > len(f) - 1:
            lead = inv(f[-1])
            out = _poly_mul(out, [red(v * lead) for v in f], p)
            break
        hit = False
        for low in _product(range(p), repeat=d):
            g = list(low) + [1]
            q, r = _divmod_field(f, g, inv, red)
            if not r:
                out = _poly_mul(out, g, p)
                while True:
                    q2, r2 = _divmod_field(q, g, inv, red)
                    f = q
                    if r2:
                        break
                    q = q2
                hit = True
                break
        if not hit:
            d += 1
    return _trim(out)

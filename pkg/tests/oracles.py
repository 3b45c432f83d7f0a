"""Independent oracles used only by the tests."""

from pythagorean_curves.arith import REAL_PLACE, local_class, valuation

ROOT_BALL = "root"


def _class_if_known(u: int, k: int, p: int):
    """Square class of a p-adic number known as u mod p^k.

    Returns ROOT_BALL when u vanishes mod p^k, None when more digits are needed.
    """
    if u % p**k == 0:
        return ROOT_BALL
    need = valuation(u, p) + (3 if p == 2 else 1)
    return local_class(u, p) if need <= k else None


def local_image_by_x_tree(curve, p: int, max_depth: int = 60) -> set[tuple[int, int]]:
    """Every (class(x - e1), class(x - e2)) over x in Q_p with f(x) a square or zero.

    Scans s = p^2 x over Z_p one digit at a time; x with v(x) <= -3 only gives
    the trivial class. On a ball around a root the free coordinate takes every
    class, so exactly the one forced by the other two occurs, matching the
    zero-coordinate convention at the root itself.
    """
    if p == REAL_PLACE:
        raise ValueError("use sign analysis for the real place")
    roots = [e * p * p for e in curve.roots]
    found = {(0, 0)}
    frontier = list(range(p))
    k = 1
    while frontier:
        if k > max_depth:
            raise RuntimeError("x-tree did not settle")
        nxt = []
        for s in frontier:
            cls = [_class_if_known(s - e, k, p) for e in roots]
            if None in cls or cls.count(ROOT_BALL) > 1:
                nxt.extend(s + d * p**k for d in range(p))
                continue
            if ROOT_BALL in cls:
                i = cls.index(ROOT_BALL)
                a, b = (c for j, c in enumerate(cls) if j != i)
                cls[i] = a ^ b
            elif cls[0] ^ cls[1] ^ cls[2]:
                continue  # f(x) is not a square on this ball
            found.add((cls[0], cls[1]))
        frontier = nxt
        k += 1
    return found

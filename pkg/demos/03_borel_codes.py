"""
Borel codes on a finite window
==============================

Evaluating codes at eventually constant points, complementing them,
universal sets, and the block encoding of Baire space into Cantor space.
"""

from descset.codes import (
    EMPTY,
    UNION,
    BorelCode,
    Cyl,
    UniversalSet,
    Window,
    baire_to_cantor,
    cantor_to_baire,
    dual,
    encode_field,
    eval_code,
    pair_index,
    unpair,
)
from descset.seqs import Point

# [<0>] u [<1>]: every point whose first value is 0 or 1
code = BorelCode.combine(UNION, [BorelCode.basic(Cyl((0,))), BorelCode.basic(Cyl((1,)))])
print("(2,5,...) in the union:", eval_code(code, Point((2, 5))))

# complements are only exact inside a declared window of branching 2
window = Window(2, 3)
comp = dual(code, window)
for x in window.points()[:4]:
    print(x, eval_code(code, x), eval_code(comp, x))

# a field of sets becomes a set of characteristic points
c, report = encode_field(["a", "b", "c"], [["a"], ["a", "b"]])
print({k: str(v) for k, v in c.items()}, report["injective"])

# pairing and its inverse
print([pair_index(n, m) for n, m in [(0, 0), (1, 0), (0, 1)]], unpair(11))

# a universal open set: the parameter x chooses which basis cylinders to union
U = UniversalSet(1, [EMPTY, Cyl((0,)), Cyl((1,))], depth=1)
x = U.encode(BorelCode.basic(Cyl((0,))))
print("parameter for [<0>]:", x, "errors:", U.verify(BorelCode.basic(Cyl((0,)))))

# level 2: unions of complements of level-1 sets
U2 = UniversalSet(2, [EMPTY, Cyl((0,)), Cyl((1,))], depth=2)
print("level-2 code has", len(U2.code.tree), "nodes; check:", U2.verify([{1}, {2}]))

# Baire to Cantor: f(n) zeros followed by a one, for each n
img = baire_to_cantor(Point((2, 0, 1)))
print("(2,0,1,0,...) ->", "".join(map(str, img.restrict(10))), "... back to", cantor_to_baire(img))

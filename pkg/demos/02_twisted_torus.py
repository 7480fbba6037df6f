"""The twisted torus and its quantum symmetry.

The twisted torus is generated by two unitaries with U V = e(t) V U, where
e(t) stands for the exact phase exp(2*pi*i*theta).  An isometric linear
action

    alpha(U) = U (x) A1 + V (x) B1 + U* (x) C1 + V* (x) D1
    alpha(V) = U (x) A2 + V (x) B2 + U* (x) C2 + V* (x) D2

forces an explicit relation set on the eight coefficients.  This script
extracts those relations exactly, realizes them in a direct sum of eight
2-generator blocks (four commutative, four twisted by e(2t)), and checks the
full quantum-group structure on that model.
"""

from fractions import Fraction

from qiso.catalog import build


def banner(text):
    print(f"\n=== {text} ===")


def show(report, names, limit=None):
    shown = 0
    for r in report.results:
        if any(r.name.startswith(n) for n in names):
            detail = f"  ({r.detail})" if r.detail else ""
            print(f"  {r.status:9s} {r.name}{detail}")
            shown += 1
            if limit and shown >= limit:
                return


banner("relation extraction at generic theta")
torus = build("torus")
report = torus.suite()
print("Unitarity of each row, all mixed products, and the exchange")
print("condition alpha(U V) = e(t) alpha(V U) each yield a golden set:")
show(report, ["extract-"])

banner("the eight-block model")
print("All extracted relations hold exactly in the model, the fundamental")
print("4x4 matrix is unitary, and the matrix coproduct satisfies every")
print("Hopf law (checked entrywise in the model):")
show(report, ["model-soundness", "M[0,0]", "coassoc[A1]", "counit[A1]",
              "antipode[A1]", "coproduct-kills-relations",
              "antipode-kills-relations"])

print("\nRange projections of the combined generators select single blocks,")
print("reproducing the block decomposition generator by generator:")
show(report, ["block-projections"])

banner("isometry and degenerations")
print("The action preserves every Laplacian eigenspace -(m^2 + n^2), only")
print("dihedral images of each exponent pair survive, and at theta = 1/2")
print("all eight blocks become commutative:")
show(report, ["isometry", "survival-pattern", "half-parameter-degeneration"])

print("\nThe invariant (Haar) weights are uniquely 1/8 per block:")
show(report, ["haar-weights"])

banner("specialized parameter theta = 1/3")
third = build("torus", Fraction(1, 3))
report3 = third.suite()
show(report3, ["extract-"])
print("\nNormal forms through the command line:")
print("  $ qiso nf torus 'V U'            ->", torus.normal_form("V U"))
print("  $ qiso nf torus 'V U' --theta 1/2 ->",
      build("torus", Fraction(1, 2)).normal_form("V U"))

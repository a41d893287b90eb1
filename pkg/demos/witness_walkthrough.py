"""Walk through the smallest non-unique example.

V2 = span{t^2, 1 + t^4} on the middle component (d = 4, r = 1) has
vanishing orders (0, 2) at both nodes, but the order 2 at A and the order
2 at B are carried by the same section t^2.  The kernel spaces K_il are
then too large on a block of grid points and the exact extension is not
unique.  Compare with V2 = span{1, t^4}, where everything is forced.

    python demos/witness_walkthrough.py
"""

from llseries.extension import ChoiceStrategy, build_extension, verify_exact, verify_extends
from llseries.instances import adaptable_fixture, witness_fixture
from llseries.kernels import KernelGrid, check_all
from llseries.uniqueness import decide_unique


def dim_table(kgrid, d):
    lines = []
    for l in range(d, -1, -1):
        cells = "".join("%3s" % (kgrid.dim(i, l) if i + l <= d else "") for i in range(d + 1))
        lines.append("  l=%d |%s" % (l, cells))
    lines.append("       " + "---" * (d + 1))
    lines.append("    i =" + "".join("%3d" % i for i in range(d + 1)))
    return "\n".join(lines)


def show(name, h):
    print("== %s: b = %s, b' = %s" % (name, list(h.b), list(h.bp)))
    kgrid = KernelGrid(h)
    report = check_all(kgrid)
    print("kernel-space predicates: %d records, all pass: %s" % (len(report), report.ok))
    print("dim K_il (r+1 = %d):" % (h.r + 1))
    print(dim_table(kgrid, h.d))
    grids = [build_extension(h, ChoiceStrategy.seeded(s), kgrid) for s in range(10)]
    ok = all(verify_exact(g, kgrid).ok and verify_extends(g) for g in grids)
    print("10 seeded builds, every one exact and extending h: %s" % ok)
    print("distinct grids among them: %d" % len({g.digest() for g in grids}))
    verdict = decide_unique(h, kgrid=kgrid)
    print("verdict: %s (%s)" % ("unique" if verdict.unique else "not unique", verdict.corroboration["status"]))
    if verdict.failures:
        print("points of R(h) with dim K_il > r+1: %s" % [tuple(f[:2]) for f in verdict.failures])
    print()


if __name__ == "__main__":
    show("span{1, t^4}", adaptable_fixture())
    show("span{t^2, 1 + t^4}", witness_fixture())

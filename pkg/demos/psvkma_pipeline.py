"""Fold the six-residue PSVKMA chain end to end.

Encode with slack and switch ancillae, quadratize, solve exactly and compare
with the brute-force lattice oracle.
"""
from foldenc import Instance, Penalties, encode, exhaustive_min, ground_truth, reduce_to_2local
from foldenc.lattice import fold_names


def main():
    inst = Instance.mj("PSVKMA")
    energy, folds = ground_truth(inst)
    print(f"lattice oracle: energy {energy}, fold {','.join(fold_names(folds[0]))}")

    for lam in (5, 10):
        enc = encode(inst, Penalties(lam))
        qubo, rmap = reduce_to_2local(enc.poly, enc.nvars)
        res = exhaustive_min(qubo.to_poly(), enc.layout)
        print(f"lambda {lam}: {enc.nvars} variables, degree {enc.poly.degree()}, "
              f"{len(rmap.gadgets)} gadgets -> {qubo.n} QUBO variables, constant {qubo.constant}")
        print(f"  min q^T Q q = {res.value - qubo.constant}, energy {res.value}, "
              f"fold {','.join(fold_names(res.fold))}")
        print("  gadget penalties:", [g.delta for g in rmap.gadgets])


if __name__ == "__main__":
    main()

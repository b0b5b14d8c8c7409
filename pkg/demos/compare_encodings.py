"""Size and locality of the three encodings for growing HP chains.

Each encoding is also checked against exhaustive folding while N is small.
"""
import time

from foldenc import Instance, encode, encode_circuit, encode_diamond, verify_encoding


def main():
    print(f"{'N':>2} {'encoding':<13} {'bits':>5} {'terms':>6} {'degree':>6} {'verified':>9} {'s':>6}")
    for N in range(4, 11):
        inst = Instance.hp(("HP" * N)[:N - 1] + "H")
        for kind, build in (("turn-ancilla", encode), ("turn-circuit", encode_circuit),
                            ("diamond", encode_diamond)):
            t0 = time.perf_counter()
            enc = build(inst)
            ok = verify_encoding(inst, kind).passed if N <= 7 else None
            dt = time.perf_counter() - t0
            print(f"{N:>2} {kind:<13} {enc.nvars:>5} {len(enc.poly):>6} {enc.poly.degree():>6} "
                  f"{str(ok):>9} {dt:>6.2f}")


if __name__ == "__main__":
    main()
